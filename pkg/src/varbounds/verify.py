"""Randomised verification of every inequality in :mod:`varbounds.bounds`.

Each trial draws its own generator, ``Philox(key=seed ^ trial_index)`` (a
64-bit counter-based bit generator from numpy), so trials are independent
and any single one can be replayed from the pair ``(seed, trial)``.
Complex Gaussians are produced from the generator's uniforms by Box-Muller.
"""

from __future__ import annotations

import json
import math
from collections import OrderedDict
from dataclasses import asdict, dataclass

import numpy as np

from . import bounds as B
from . import linalg
from .errors import BadRank, DegenerateBound
from .quantum import (
    Observable,
    QuantumState,
    commutator,
    covariance_matrix,
    pair_moments,
    pauli,
    state_from_bloch,
    sum_observable,
    validate_state,
    variance,
)

#: Inequality checks pass when ``lhs - rhs >= -MARGIN_TOL``.
MARGIN_TOL = 1e-9
IDENTITY_TOL = 1e-10
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 42
    trials: int = 1000
    dim_range: tuple[int, int] = (2, 4)
    set_size_range: tuple[int, int] = (2, 4)
    fixtures: bool = True

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        lo, hi = self.dim_range
        if not 2 <= lo <= hi <= 8:
            raise ValueError(f"dim_range must lie within [2, 8], got {self.dim_range}")
        lo, hi = self.set_size_range
        if not 1 <= lo <= hi <= 6:
            raise ValueError(f"set_size_range must lie within [1, 6], got {self.set_size_range}")


@dataclass(frozen=True)
class CheckResult:
    """One evaluated check.

    Inequalities use ``tol = 1e-9``.  Identity and structural checks encode
    ``lhs = allowed error``, ``rhs = observed error`` with ``tol = 0``.
    Skipped checks (degenerate bound) carry zeros and ``skipped = True``.
    """

    name: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    context: str
    trial: int = -1
    tol: float = MARGIN_TOL
    skipped: bool = False


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed ^ trial) & _MASK64))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex normal samples (``E|z|^2 = 1``) via Box-Muller."""
    shape = (shape,) if isinstance(shape, int) else tuple(shape)
    u1 = 1.0 - rng.random(shape)  # (0, 1]
    u2 = rng.random(shape)
    return np.sqrt(-np.log(u1)) * np.exp(2j * np.pi * u2)


def random_state(dim: int, rank: int, rng: np.random.Generator) -> QuantumState:
    """``G G^H / Tr(G G^H)`` for a ``dim x rank`` complex Gaussian ``G``."""
    if not 1 <= rank <= dim:
        raise BadRank(f"rank must be in [1, {dim}], got {rank}")
    g = complex_gaussian(rng, (dim, rank))
    rho = g @ g.conj().T
    return validate_state(rho / np.trace(rho).real)


def random_observable(dim: int, rng: np.random.Generator, label: str = "H") -> Observable:
    r = complex_gaussian(rng, (dim, dim))
    return Observable(label, (r + r.conj().T) / 2)


class _Recorder:
    def __init__(self, context: str, trial: int):
        self.context = context
        self.trial = trial
        self.results: list[CheckResult] = []

    def ineq(self, name: str, lhs: float, rhs: float, tol: float = MARGIN_TOL) -> None:
        margin = lhs - rhs
        self.results.append(
            CheckResult(name, float(lhs), float(rhs), float(margin), bool(margin >= -tol), self.context, self.trial, tol)
        )

    def within(self, name: str, error: float, allowed: float = IDENTITY_TOL) -> None:
        self.ineq(name, allowed, error, tol=0.0)

    def skip(self, name: str, exc: Exception) -> None:
        ctx = f"{self.context}; skipped: {type(exc).__name__}"
        self.results.append(CheckResult(name, 0.0, 0.0, 0.0, True, ctx, self.trial, MARGIN_TOL, True))


def _sum_checks(rec: _Recorder, s: QuantumState, obs: list[Observable]) -> None:
    n = len(obs)
    lhs = B.sum_of_variances(s, obs)
    gram = B.build_gram(s, obs)
    m = gram.m_matrix

    rec.ineq("gram_psd", float(linalg.eigh(m).eigenvalues[0]), -1e-10, tol=0.0)
    diag = np.real(np.diag(m))
    rec.within("gram_diag_unit_or_zero", float(np.max(np.minimum(np.abs(diag), np.abs(diag - 1)))))
    rec.ineq("gram_lambda_le_n", n, gram.lambda_max, tol=1e-10)
    rec.within("gram_route", float(np.max(np.abs(m - B.gram_from_deviations(s, obs)))))

    cov = covariance_matrix(s, obs)
    rec.within("sum_identity", abs(variance(s, sum_observable(obs)) - float(np.sum(cov).real)))

    try:
        rec.ineq("thm1", lhs, B.bound_thm1(s, obs, gram))
    except DegenerateBound as exc:
        rec.skip("thm1", exc)

    if n >= 2:
        pair = obs[:2]
        pair_gram = B.build_gram(s, pair)
        pair_lhs = B.sum_of_variances(s, pair)
        maccone = B.bound_maccone(s, *pair)
        rec.ineq("cor1_lambda_le_2", 2.0, pair_gram.lambda_max, tol=1e-10)
        rec.ineq("maccone", pair_lhs, maccone)
        try:
            rec.ineq("cor1_chain", B.bound_thm1(s, pair, pair_gram), maccone)
        except DegenerateBound as exc:
            rec.skip("cor1_chain", exc)

        a, b = pair
        pb = B.pair_bounds(s, a, b)
        va, vb = variance(s, a), variance(s, b)
        rec.ineq("rur", math.sqrt(va * vb), pb.rur)
        rec.ineq("sur", va * vb, pb.sur)
        rec.ineq("sur_ge_rur_squared", pb.sur, pb.rur**2, tol=1e-12)

        overlap = B.build_overlap(s, obs, obs)
        try:
            c3 = B.bound_cor3(s, obs, overlap)
        except DegenerateBound as exc:
            rec.skip("cor3", exc)
        else:
            rec.ineq("cor3", lhs, c3.cor3)
            rec.ineq("pairwise_rur", lhs, c3.pairwise_rur)
            if c3.sigma_max <= n - 1:
                rec.ineq("cor3_ge_pairwise_rur", c3.cor3, c3.pairwise_rur, tol=1e-12)

    if n >= 3:
        rec.ineq("chen_fei", lhs, B.bound_chen_fei(s, obs))


def _product_checks(rec: _Recorder, s: QuantumState, obs_a: list[Observable], obs_b: list[Observable]) -> None:
    lhs = B.product_of_sums(s, obs_a, obs_b)
    overlap = B.build_overlap(s, obs_a, obs_b)
    g = overlap.g_matrix
    rec.ineq("overlap_entries_le_1", 1.0 + 1e-10, float(np.max(g)), tol=0.0)
    rec.ineq("overlap_entries_ge_0", float(np.min(g)), 0.0, tol=0.0)
    rec.within("overlap_route", float(np.max(np.abs(g - B.overlap_from_deviations(s, obs_a, obs_b)))))

    worst = 0.0
    for a in obs_a:
        for b in obs_b:
            pm = pair_moments(s, a, b)
            c, ac = pm.sur_terms
            worst = max(worst, abs(abs(pm.covariance) ** 2 - (c * c + ac * ac)))
    rec.within("sur_identity", worst)

    rec.ineq("c22", lhs, B.bound_c22(s, obs_a, obs_b))
    try:
        thm2 = B.bound_thm2(s, obs_a, obs_b, overlap)
        cor2 = B.bound_cor2(s, obs_a, obs_b, overlap)
    except DegenerateBound as exc:
        for name in ("thm2", "thm2_ge_cor2", "cor2"):
            rec.skip(name, exc)
    else:
        rec.ineq("thm2", lhs, thm2)
        rec.ineq("thm2_ge_cor2", thm2, cor2)
        rec.ineq("cor2", lhs, cor2)


def _pati_check(rec: _Recorder, s: QuantumState, obs_a, obs_b, c) -> None:
    p = B.bound_pati(s, obs_a, obs_b, c)
    rec.ineq("pati", p.lhs, p.rhs)


def canonical_fixture(a: Observable, b: Observable, pairs: int, scale: float = 1.0, shift: float = 0.0):
    """Sets ``{A_i}, {B_i}`` and ``C`` with ``[A_i, B_j] = i delta_ij C``.

    Built from one pair: ``A_1 = s A + t``, ``B_1 = B / s`` and, for two
    pairs, ``A_2 = B``, ``B_2 = -A``; then ``C = -i [A, B]``.
    """
    if pairs not in (1, 2):
        raise ValueError("pairs must be 1 or 2")
    dim = a.dim
    eye = np.eye(dim)
    c = Observable("C", -1j * commutator(a.matrix, b.matrix))
    obs_a = [Observable("A1", scale * a.matrix + shift * eye)]
    obs_b = [Observable("B1", b.matrix / scale)]
    if pairs == 2:
        obs_a.append(Observable("A2", b.matrix))
        obs_b.append(Observable("B2", -a.matrix))
    return obs_a, obs_b, c


def _fixtures() -> list[_Recorder]:
    sx, sy, sz = pauli("sigma_x"), pauli("sigma_y"), pauli("sigma_z")
    half_pi = math.pi / 2
    out = []

    rec = _Recorder("fixture fig1 theta=pi/2", -1)
    s = state_from_bloch([math.sqrt(3) / 2 * math.cos(half_pi), math.sqrt(3) / 2 * math.sin(half_pi), 0.0])
    _sum_checks(rec, s, [sx, sz])
    out.append(rec)

    rec = _Recorder("fixture fig2 theta=pi/2", -1)
    s = state_from_bloch([math.cos(half_pi), 0.0, 0.0])
    _sum_checks(rec, s, [sx, sy, sz])
    out.append(rec)

    rec = _Recorder("fixture fig3 theta=pi/4", -1)
    q = math.pi / 4
    s = state_from_bloch([0.5 * math.cos(q), 0.5 * math.sin(q), 0.0])
    _product_checks(rec, s, [sz], [sx, sy])
    out.append(rec)

    rec = _Recorder("fixture canonical pair sigma_x,sigma_y on |0>", -1)
    s = state_from_bloch([0.0, 0.0, 1.0])
    _pati_check(rec, s, [sx], [sy], Observable("C", 2 * sz.matrix))
    out.append(rec)
    return out


def run_trial(cfg: TrialConfig, trial: int) -> list[CheckResult]:
    rng = trial_rng(cfg.seed, trial)
    dim = int(rng.integers(cfg.dim_range[0], cfg.dim_range[1] + 1))
    rank = int(rng.integers(1, dim + 1))
    n = int(rng.integers(cfg.set_size_range[0], cfg.set_size_range[1] + 1))
    m = int(rng.integers(cfg.set_size_range[0], cfg.set_size_range[1] + 1))
    s = random_state(dim, rank, rng)
    obs_a = [random_observable(dim, rng, f"A{i + 1}") for i in range(n)]
    obs_b = [random_observable(dim, rng, f"B{j + 1}") for j in range(m)]
    scale = float(np.exp(rng.normal()))
    shift = float(rng.normal())

    rec = _Recorder(f"seed={cfg.seed} trial={trial} dim={dim} rank={rank} n={n} m={m}", trial)
    _sum_checks(rec, s, obs_a)
    _product_checks(rec, s, obs_a, obs_b)
    pairs = 1 + trial % 2
    _pati_check(rec, s, *canonical_fixture(obs_a[0], obs_b[0], pairs, scale, shift))
    return rec.results


def run_suite(cfg: TrialConfig) -> list[CheckResult]:
    """Evaluate every check on the fixtures (optional) and ``cfg.trials`` random trials.

    Results are ordered fixtures first, then by trial index.
    """
    results: list[CheckResult] = []
    if cfg.fixtures:
        for rec in _fixtures():
            results.extend(rec.results)
    for t in range(cfg.trials):
        results.extend(run_trial(cfg, t))
    return results


def summarize(results: list[CheckResult]) -> dict:
    """Per-check counts and worst (smallest) margin, in first-seen order."""
    per: OrderedDict[str, dict] = OrderedDict()
    for r in results:
        row = per.setdefault(
            r.name, {"checks": 0, "passed": 0, "failed": 0, "skipped": 0, "worst_margin": None, "worst_context": None}
        )
        row["checks"] += 1
        if r.skipped:
            row["skipped"] += 1
            continue
        row["passed" if r.passed else "failed"] += 1
        if row["worst_margin"] is None or r.margin < row["worst_margin"]:
            row["worst_margin"] = r.margin
            row["worst_context"] = r.context
    total = {
        "checks": len(results),
        "passed": sum(1 for r in results if r.passed and not r.skipped),
        "failed": sum(1 for r in results if not r.passed),
        "skipped": sum(1 for r in results if r.skipped),
    }
    return {"total": total, "by_check": per}


def suite_to_json(cfg: TrialConfig, results: list[CheckResult]) -> str:
    doc = {
        "config": asdict(cfg),
        "summary": summarize(results),
        "results": [asdict(r) for r in results],
    }
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def check_names(results: list[CheckResult]) -> list[str]:
    return list(OrderedDict.fromkeys(r.name for r in results))


__all__ = [
    "CheckResult",
    "TrialConfig",
    "canonical_fixture",
    "check_names",
    "complex_gaussian",
    "random_observable",
    "random_state",
    "run_suite",
    "run_trial",
    "summarize",
    "suite_to_json",
    "trial_rng",
]
