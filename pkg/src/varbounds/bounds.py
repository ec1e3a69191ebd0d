"""Variance-based uncertainty bounds for finite sets of observables.

Sum-type bounds (``sum_i Var A_i`` on the left) are built on the normalised
covariance matrix ``M``; product-type bounds between two sets are built on
the overlap matrix ``G``.  Both are computed from moments.  The equivalent
route through the operators ``(A - <A>) sqrt(rho) / Delta A`` is exposed as
:func:`gram_from_deviations` / :func:`overlap_from_deviations` and used only
as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np

from . import linalg
from .errors import (
    AllCompatible,
    AllCovariancesVanish,
    CommutatorStructureViolated,
    DegenerateBound,
    EmptySet,
    NeedAtLeastThree,
)
from .quantum import (
    EPS_VAR,
    Observable,
    PairMoments,
    QuantumState,
    as_observable,
    check_dims,
    commutator,
    covariance_matrix,
    expectation,
    normalized_deviation,
    pair_moments,
    sum_observable,
    variance,
)

#: Eigenvalues / singular values below this make a bound degenerate.
DEGENERATE_TOL = 1e-12
PATI_TOL = 1e-8


def _observables(obs: Sequence, prefix: str = "A") -> list[Observable]:
    out = [as_observable(a, f"{prefix}{i + 1}") for i, a in enumerate(obs)]
    if not out:
        raise EmptySet("observable set is empty")
    return out


@dataclass(frozen=True)
class GramMatrix:
    """``M_ij = <Ã_i Ã_j> / (Delta A_i Delta A_j)``; zero rows for zero-variance ``A_i``."""

    n: int
    m_matrix: np.ndarray = field(repr=False)
    lambda_max: float
    deltas: tuple[float, ...]


@dataclass(frozen=True)
class OverlapMatrix:
    """``G_ij = |<Ã_i B̃_j>| / (Delta A_i Delta B_j)``."""

    n: int
    m: int
    g_matrix: np.ndarray = field(repr=False)
    sigma_max: float
    deltas_a: tuple[float, ...]
    deltas_b: tuple[float, ...]


def _normalise(cov: np.ndarray, da: np.ndarray, db: np.ndarray) -> np.ndarray:
    live_a = da * da > EPS_VAR
    live_b = db * db > EPS_VAR
    out = np.zeros_like(cov)
    mask = np.outer(live_a, live_b)
    out[mask] = (cov / np.outer(np.where(live_a, da, 1.0), np.where(live_b, db, 1.0)))[mask]
    return out


def build_gram(s: QuantumState, obs: Sequence) -> GramMatrix:
    obs = _observables(obs)
    check_dims(s, *obs)
    deltas = np.sqrt([variance(s, a) for a in obs])
    m = _normalise(covariance_matrix(s, obs), deltas, deltas)
    m = 0.5 * (m + m.conj().T)
    lam = float(linalg.eigh(m).eigenvalues[-1])
    m.setflags(write=False)
    return GramMatrix(len(obs), m, lam, tuple(float(d) for d in deltas))


def build_overlap(s: QuantumState, obs_a: Sequence, obs_b: Sequence) -> OverlapMatrix:
    obs_a = _observables(obs_a, "A")
    obs_b = _observables(obs_b, "B")
    check_dims(s, *obs_a, *obs_b)
    da = np.sqrt([variance(s, a) for a in obs_a])
    db = np.sqrt([variance(s, b) for b in obs_b])
    g = np.abs(_normalise(covariance_matrix(s, obs_a, obs_b), da, db))
    smax = float(linalg.singular_values(g)[0])
    g.setflags(write=False)
    return OverlapMatrix(len(obs_a), len(obs_b), g, smax, tuple(map(float, da)), tuple(map(float, db)))


def gram_from_deviations(s: QuantumState, obs: Sequence) -> np.ndarray:
    """``Tr(P_i^H P_j)`` evaluated from the explicit deviation operators."""
    ps = [normalized_deviation(s, a) for a in _observables(obs)]
    return np.array([[linalg.frobenius_inner(p, q) for q in ps] for p in ps])


def overlap_from_deviations(s: QuantumState, obs_a: Sequence, obs_b: Sequence) -> np.ndarray:
    xs = [normalized_deviation(s, a) for a in _observables(obs_a, "A")]
    ys = [normalized_deviation(s, b) for b in _observables(obs_b, "B")]
    return np.array([[abs(linalg.frobenius_inner(x, y)) for y in ys] for x in xs])


def sum_of_variances(s: QuantumState, obs: Sequence) -> float:
    return float(sum(variance(s, a) for a in _observables(obs)))


def product_of_sums(s: QuantumState, obs_a: Sequence, obs_b: Sequence) -> float:
    """``sqrt(sum_i Var A_i) * sqrt(sum_j Var B_j)``."""
    return math.sqrt(sum_of_variances(s, obs_a)) * math.sqrt(sum_of_variances(s, obs_b))


# -- two-observable relations -------------------------------------------------


class PairBounds(NamedTuple):
    rur: float  # lower bound on Delta A * Delta B
    sur: float  # lower bound on Var A * Var B


def pair_bounds(s: QuantumState, a, b) -> PairBounds:
    """Robertson and Schrödinger lower bounds for one pair."""
    pm = pair_moments(s, a, b)
    c, ac = pm.sur_terms
    return PairBounds(abs(pm.comm_mean) / 2, c * c + ac * ac)


def bound_maccone(s: QuantumState, a, b) -> float:
    """``Var(A + B) / 2``."""
    a = as_observable(a, "A")
    b = as_observable(b, "B")
    check_dims(s, a, b)
    return variance(s, a + b) / 2


# -- sum relations --------------------------------------------------------------


def bound_thm1(s: QuantumState, obs: Sequence, gram: GramMatrix | None = None) -> float:
    """``Var(sum_i A_i) / lambda_max(M)``.

    Raises :class:`AllCompatible` when ``lambda_max(M)`` vanishes, which
    happens exactly when every observable has zero variance.
    """
    obs = _observables(obs)
    gram = build_gram(s, obs) if gram is None else gram
    if gram.lambda_max <= DEGENERATE_TOL:
        raise AllCompatible(f"lambda_max(M) = {gram.lambda_max:.3e}: every observable has zero variance")
    return variance(s, sum_observable(obs)) / gram.lambda_max


def bound_chen_fei(s: QuantumState, obs: Sequence) -> float:
    obs = _observables(obs)
    n = len(obs)
    if n < 3:
        raise NeedAtLeastThree(f"bound needs n >= 3 observables, got {n}")
    pair_vars = [variance(s, a + b) for a, b in combinations(obs, 2)]
    root_sum = sum(math.sqrt(v) for v in pair_vars)
    return (sum(pair_vars) - root_sum**2 / (n - 1) ** 2) / (n - 2)


class Cor3Bounds(NamedTuple):
    cor3: float
    pairwise_rur: float
    sigma_max: float


def bound_cor3(s: QuantumState, obs: Sequence, overlap: OverlapMatrix | None = None) -> Cor3Bounds:
    """Commutator-sum bounds on ``sum_i Var A_i``.

    ``pairwise_rur`` divides the summed pair commutators by ``n - 1``;
    ``cor3`` divides by ``min(sigma_max(G), n - 1)`` with ``G`` built from
    the set against itself.
    """
    obs = _observables(obs)
    n = len(obs)
    if n < 2:
        raise EmptySet(f"need at least two observables, got {n}")
    overlap = build_overlap(s, obs, obs) if overlap is None else overlap
    total = sum(abs(pair_moments(s, a, b).comm_mean) for a, b in combinations(obs, 2))
    pairwise = total / (n - 1)
    if overlap.sigma_max <= DEGENERATE_TOL:
        if total <= DEGENERATE_TOL:
            return Cor3Bounds(0.0, 0.0, overlap.sigma_max)
        raise AllCovariancesVanish(f"sigma_max(G) = {overlap.sigma_max:.3e} with nonzero commutators")
    return Cor3Bounds(total / min(overlap.sigma_max, n - 1), pairwise, overlap.sigma_max)


# -- product relations ----------------------------------------------------------


def _cross(s: QuantumState, obs_a: list[Observable], obs_b: list[Observable]) -> list[PairMoments]:
    return [pair_moments(s, a, b) for a in obs_a for b in obs_b]


def _require_overlap(overlap: OverlapMatrix) -> float:
    if overlap.sigma_max <= DEGENERATE_TOL:
        raise AllCovariancesVanish(
            f"sigma_max(G) = {overlap.sigma_max:.3e}: every cross covariance vanishes"
        )
    return overlap.sigma_max


def bound_thm2(s: QuantumState, obs_a: Sequence, obs_b: Sequence, overlap: OverlapMatrix | None = None) -> float:
    """Schrödinger-type bound on ``sqrt(sum Var A_i) sqrt(sum Var B_j)``."""
    obs_a = _observables(obs_a, "A")
    obs_b = _observables(obs_b, "B")
    overlap = build_overlap(s, obs_a, obs_b) if overlap is None else overlap
    smax = _require_overlap(overlap)
    return sum(math.hypot(*pm.sur_terms) for pm in _cross(s, obs_a, obs_b)) / smax


def bound_cor2(s: QuantumState, obs_a: Sequence, obs_b: Sequence, overlap: OverlapMatrix | None = None) -> float:
    """Heisenberg-type companion of :func:`bound_thm2` (commutators only)."""
    obs_a = _observables(obs_a, "A")
    obs_b = _observables(obs_b, "B")
    overlap = build_overlap(s, obs_a, obs_b) if overlap is None else overlap
    smax = _require_overlap(overlap)
    return sum(abs(pm.comm_mean) for pm in _cross(s, obs_a, obs_b)) / (2 * smax)


def bound_c22(s: QuantumState, obs_a: Sequence, obs_b: Sequence) -> float:
    """``sqrt(sum_ij |<[A_i, B_j]>|^2) / 2``, from summing Robertson over all pairs."""
    obs_a = _observables(obs_a, "A")
    obs_b = _observables(obs_b, "B")
    return 0.5 * math.sqrt(sum(abs(pm.comm_mean) ** 2 for pm in _cross(s, obs_a, obs_b)))


class PatiBound(NamedTuple):
    lhs: float
    rhs: float


def bound_pati(s: QuantumState, obs_a: Sequence, obs_b: Sequence, c) -> PatiBound:
    """``(sum Delta A_i)(sum Delta B_i) >= (n/2)|<C>|`` for sets with ``[A_i, B_j] = i delta_ij C``."""
    obs_a = _observables(obs_a, "A")
    obs_b = _observables(obs_b, "B")
    c = as_observable(c, "C")
    check_dims(s, *obs_a, *obs_b, c)
    if len(obs_a) != len(obs_b):
        raise CommutatorStructureViolated(f"sets differ in size: {len(obs_a)} vs {len(obs_b)}")
    n = len(obs_a)
    for i, a in enumerate(obs_a):
        for j, b in enumerate(obs_b):
            target = 1j * c.matrix if i == j else 0.0
            err = float(np.linalg.norm(commutator(a.matrix, b.matrix) - target))
            if err > PATI_TOL:
                raise CommutatorStructureViolated(
                    f"[{a.label}, {b.label}] differs from {'iC' if i == j else '0'} by {err:.3e}"
                )
    lhs = sum(math.sqrt(variance(s, a)) for a in obs_a) * sum(math.sqrt(variance(s, b)) for b in obs_b)
    return PatiBound(lhs, n / 2 * abs(expectation(s, c)))


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class SumBoundReport:
    """Left-hand side ``sum_i Var A_i`` and every applicable lower bound.

    Bounds that do not apply (``maccone`` for ``n != 2``, ``chen_fei`` for
    ``n < 3``) are ``None``; degenerate ones are ``None`` with the reason in
    ``degenerate``.
    """

    n: int
    lhs: float
    thm1: float | None
    maccone: float | None
    chen_fei: float | None
    cor3: float | None
    pairwise_rur: float | None
    lambda_max: float
    sigma_max: float
    degenerate: dict[str, str] = field(default_factory=dict)

    def bounds(self) -> dict[str, float]:
        names = ("thm1", "maccone", "chen_fei", "cor3", "pairwise_rur")
        return {k: getattr(self, k) for k in names if getattr(self, k) is not None}


@dataclass(frozen=True)
class ProductBoundReport:
    """``sqrt(sum Var A_i) sqrt(sum Var B_j)`` and its lower bounds."""

    n: int
    m: int
    lhs: float
    thm2: float | None
    cor2: float | None
    c22: float
    sigma_max: float
    degenerate: dict[str, str] = field(default_factory=dict)

    def bounds(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in ("thm2", "cor2", "c22") if getattr(self, k) is not None}


def _reason(exc: DegenerateBound) -> str:
    return f"{type(exc).__name__}: {exc}"


def sum_bounds(s: QuantumState, obs: Sequence) -> SumBoundReport:
    obs = _observables(obs)
    n = len(obs)
    gram = build_gram(s, obs)
    overlap = build_overlap(s, obs, obs)
    degenerate = {}
    try:
        thm1 = bound_thm1(s, obs, gram)
    except DegenerateBound as exc:
        thm1 = None
        degenerate["thm1"] = _reason(exc)
    cor3 = pairwise = None
    if n >= 2:
        try:
            cor3, pairwise, _ = bound_cor3(s, obs, overlap)
        except DegenerateBound as exc:
            degenerate["cor3"] = _reason(exc)
    return SumBoundReport(
        n=n,
        lhs=sum_of_variances(s, obs),
        thm1=thm1,
        maccone=bound_maccone(s, *obs) if n == 2 else None,
        chen_fei=bound_chen_fei(s, obs) if n >= 3 else None,
        cor3=cor3,
        pairwise_rur=pairwise,
        lambda_max=gram.lambda_max,
        sigma_max=overlap.sigma_max,
        degenerate=degenerate,
    )


def product_bounds(s: QuantumState, obs_a: Sequence, obs_b: Sequence) -> ProductBoundReport:
    obs_a = _observables(obs_a, "A")
    obs_b = _observables(obs_b, "B")
    overlap = build_overlap(s, obs_a, obs_b)
    degenerate = {}
    values = {}
    for name, fn in (("thm2", bound_thm2), ("cor2", bound_cor2)):
        try:
            values[name] = fn(s, obs_a, obs_b, overlap)
        except DegenerateBound as exc:
            values[name] = None
            degenerate[name] = _reason(exc)
    return ProductBoundReport(
        n=len(obs_a),
        m=len(obs_b),
        lhs=product_of_sums(s, obs_a, obs_b),
        thm2=values["thm2"],
        cor2=values["cor2"],
        c22=bound_c22(s, obs_a, obs_b),
        sigma_max=overlap.sigma_max,
        degenerate=degenerate,
    )
