"""States, observables and their first and second moments."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import linalg
from .errors import BlochNormExceeded, DimMismatch, NegativeEigenvalue, NotPSD, TraceNotOne

TRACE_TOL = 1e-10
PSD_TOL = 1e-10
BLOCH_TOL = 1e-12
#: Variances at or below this value are treated as exactly zero.
EPS_VAR = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

PAULI = {
    "sigma_x": SIGMA_X,
    "sigma_y": SIGMA_Y,
    "sigma_z": SIGMA_Z,
    "sigma1": SIGMA_X,
    "sigma2": SIGMA_Y,
    "sigma3": SIGMA_Z,
}


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


class BlochVector(NamedTuple):
    x: float
    y: float
    z: float

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))


@dataclass(frozen=True)
class Observable:
    """A labelled Hermitian matrix."""

    label: str
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = linalg.check_hermitian(self.matrix, f"observable {self.label!r}")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __add__(self, other: "Observable") -> "Observable":
        return Observable(f"{self.label}+{other.label}", self.matrix + other.matrix)

    def __neg__(self) -> "Observable":
        return Observable(f"-{self.label}", -self.matrix)


def pauli(name: str) -> Observable:
    """Named Pauli observable (``sigma_x``/``sigma1`` etc.)."""
    try:
        return Observable(name, PAULI[name])
    except KeyError:
        raise ValueError(f"unknown Pauli name {name!r}; expected one of {sorted(PAULI)}") from None


def as_observable(a, label: str = "A") -> Observable:
    if isinstance(a, Observable):
        return a
    if isinstance(a, str):
        return pauli(a)
    return Observable(label, a)


@dataclass(frozen=True)
class QuantumState:
    """Validated density matrix with its positive square root cached.

    Build instances with :func:`validate_state`, :func:`state_from_bloch` or
    :func:`state_from_pure`; the constructor does not re-check its inputs.
    """

    rho: np.ndarray = field(repr=False)
    sqrt_rho: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @property
    def purity(self) -> float:
        return float(np.real(np.vdot(self.rho, self.rho)))

    def bloch(self) -> BlochVector:
        """Bloch vector of a qubit state."""
        if self.dim != 2:
            raise DimMismatch("Bloch vector is only defined for dim = 2")
        return BlochVector(*(float(np.real(np.trace(self.rho @ s))) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)))


def validate_state(m) -> QuantumState:
    """Check that ``m`` is a density matrix and wrap it.

    Raises
    ------
    NotSquare, NotHermitian
        For malformed input.
    TraceNotOne
        If ``|Tr m - 1| > 1e-10``.
    NotPSD
        If an eigenvalue is below ``-1e-10``.
    """
    rho = linalg.check_hermitian(m, "state")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"state has trace {tr:.12g}, expected 1")
    w, v = linalg.eigh(rho)
    try:
        root = linalg.sqrt_from_eigen(w, v)
    except NegativeEigenvalue:
        raise NotPSD(f"state has eigenvalue {w[0]:.3e} < -{PSD_TOL:g}") from None
    return QuantumState(_frozen(rho), _frozen(root))


def state_from_bloch(r) -> QuantumState:
    """Qubit state ``(I + x sigma_x + y sigma_y + z sigma_z) / 2``."""
    b = BlochVector(*(float(c) for c in r))
    if b.norm > 1.0 + BLOCH_TOL:
        raise BlochNormExceeded(f"|r| = {b.norm:.15g} exceeds 1")
    rho = 0.5 * (IDENTITY_2 + b.x * SIGMA_X + b.y * SIGMA_Y + b.z * SIGMA_Z)
    return validate_state(rho)


def state_from_pure(psi) -> QuantumState:
    """Projector onto the normalised vector ``psi``."""
    v = np.asarray(psi, dtype=np.complex128).ravel()
    nrm = np.linalg.norm(v)
    if v.size == 0 or not np.isfinite(nrm) or nrm == 0.0:
        raise ValueError("pure state vector must be finite and nonzero")
    v = v / nrm
    return validate_state(np.outer(v, v.conj()))


def check_dims(s: QuantumState, *obs: Observable) -> None:
    for a in obs:
        if a.dim != s.dim:
            raise DimMismatch(f"observable {a.label!r} has dim {a.dim}, state has dim {s.dim}")


def _tr(rho: np.ndarray, x: np.ndarray) -> complex:
    # Tr(rho X) = sum_ij conj(rho_ij) X_ij, valid because rho is stored exactly Hermitian.
    return complex(np.vdot(rho, x))


def expectation(s: QuantumState, a) -> float:
    """``Tr(rho A)`` (real part; the imaginary part is rounding noise)."""
    a = as_observable(a)
    check_dims(s, a)
    return _tr(s.rho, a.matrix).real


def variance(s: QuantumState, a) -> float:
    """``<A^2> - <A>^2``, clamped at zero."""
    a = as_observable(a)
    check_dims(s, a)
    mean = _tr(s.rho, a.matrix).real
    second = _tr(s.rho, a.matrix @ a.matrix).real
    return max(0.0, second - mean * mean)


def std(s: QuantumState, a) -> float:
    return float(np.sqrt(variance(s, a)))


class PairMoments(NamedTuple):
    comm_mean: complex  # <[A, B]>
    anticomm_mean: complex  # <{A, B}>
    covariance: complex  # <A B> - <A><B>
    mean_a: float
    mean_b: float

    @property
    def sur_terms(self) -> tuple[float, float]:
        """``(|<[A,B]>/2i|, |<{A,B}>/2 - <A><B>|)``."""
        return (
            abs(self.comm_mean / 2j),
            abs(self.anticomm_mean / 2 - self.mean_a * self.mean_b),
        )


def pair_moments(s: QuantumState, a, b) -> PairMoments:
    a = as_observable(a, "A")
    b = as_observable(b, "B")
    check_dims(s, a, b)
    ab = a.matrix @ b.matrix
    ba = b.matrix @ a.matrix
    mean_a = _tr(s.rho, a.matrix).real
    mean_b = _tr(s.rho, b.matrix).real
    tr_ab = _tr(s.rho, ab)
    tr_ba = _tr(s.rho, ba)
    return PairMoments(
        comm_mean=tr_ab - tr_ba,
        anticomm_mean=tr_ab + tr_ba,
        covariance=tr_ab - mean_a * mean_b,
        mean_a=mean_a,
        mean_b=mean_b,
    )


def covariance_matrix(s: QuantumState, obs_a: Sequence, obs_b: Sequence | None = None) -> np.ndarray:
    """Matrix of ``<A_i B_j> - <A_i><B_j>`` (``obs_b`` defaults to ``obs_a``)."""
    obs_a = [as_observable(a, f"A{i + 1}") for i, a in enumerate(obs_a)]
    obs_b = obs_a if obs_b is None else [as_observable(b, f"B{j + 1}") for j, b in enumerate(obs_b)]
    check_dims(s, *obs_a, *obs_b)
    mean_a = np.array([_tr(s.rho, a.matrix).real for a in obs_a])
    mean_b = np.array([_tr(s.rho, b.matrix).real for b in obs_b])
    # Tr(rho A_i B_j) = sum_kl (rho A_i)_kl (B_j)_lk for every pair at once.
    rho_a = np.stack([s.rho @ a.matrix for a in obs_a])
    b_t = np.stack([b.matrix.T for b in obs_b])
    second = np.einsum("ikl,jkl->ij", rho_a, b_t)
    return second - np.outer(mean_a, mean_b)


def normalized_deviation(s: QuantumState, a) -> np.ndarray:
    """``(A - <A>) sqrt(rho) / Delta A``, or the zero matrix when the variance vanishes.

    A nonzero result has unit Frobenius norm.
    """
    a = as_observable(a)
    var = variance(s, a)
    if var <= EPS_VAR:
        return np.zeros((s.dim, s.dim), dtype=np.complex128)
    centered = a.matrix - expectation(s, a) * np.eye(s.dim)
    return centered @ s.sqrt_rho / np.sqrt(var)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def sum_observable(obs: Sequence[Observable]) -> Observable:
    obs = list(obs)
    if not obs:
        raise ValueError("empty observable set")
    total = obs[0]
    for a in obs[1:]:
        total = total + a
    return total


__all__ = [
    "BlochVector",
    "Observable",
    "PairMoments",
    "QuantumState",
    "anticommutator",
    "as_observable",
    "commutator",
    "covariance_matrix",
    "expectation",
    "normalized_deviation",
    "pair_moments",
    "pauli",
    "state_from_bloch",
    "state_from_pure",
    "std",
    "sum_observable",
    "validate_state",
    "variance",
]
