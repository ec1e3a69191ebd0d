"""JSON scenario and sweep files.

Complex numbers are ``[re, im]`` pairs or plain reals; matrices are
row-major nested lists.  Observables may be a Pauli name (``"sigma_x"``,
``"sigma1"``...), a bare matrix, or ``{"label": ..., "matrix": ...}``.

Example scenario::

    {"state": {"bloch": [0, 0.8660254038, 0]},
     "observables_a": ["sigma_x", "sigma_z"]}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations

from . import bounds as B
from .errors import InvalidInput
from .quantum import (
    PAULI,
    Observable,
    QuantumState,
    check_dims,
    state_from_bloch,
    state_from_pure,
    std,
    validate_state,
)
from .sweep import FAMILIES, SweepSpec


class ScenarioError(InvalidInput):
    """Malformed or invalid input file; ``where`` names the line or field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    except OSError as exc:
        raise ScenarioError(str(path), exc.strerror or str(exc)) from None
    if not isinstance(doc, dict):
        raise ScenarioError("top level", "expected a JSON object")
    return doc


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ScenarioError(where, f"expected a finite number, got {v!r}")
    return float(v)


def parse_complex(v, where: str) -> complex:
    if isinstance(v, list):
        if len(v) != 2:
            raise ScenarioError(where, "complex numbers are [re, im] pairs")
        return complex(_number(v[0], where), _number(v[1], where))
    return complex(_number(v, where))


def parse_vector(v, where: str) -> list[complex]:
    if not isinstance(v, list) or not v:
        raise ScenarioError(where, "expected a non-empty list")
    return [parse_complex(x, f"{where}[{i}]") for i, x in enumerate(v)]


def parse_matrix(v, where: str) -> list[list[complex]]:
    if not isinstance(v, list) or not v or not all(isinstance(r, list) for r in v):
        raise ScenarioError(where, "expected a matrix as a list of rows")
    rows = [parse_vector(r, f"{where}[{i}]") for i, r in enumerate(v)]
    if any(len(r) != len(rows) for r in rows):
        raise ScenarioError(where, "matrix must be square")
    return rows


def parse_observable(v, where: str, default_label: str) -> Observable:
    try:
        if isinstance(v, str):
            if v not in PAULI:
                raise ScenarioError(where, f"unknown Pauli name {v!r}")
            return Observable(v, PAULI[v])
        if isinstance(v, dict):
            label = v.get("label", default_label)
            if "pauli" in v:
                return Observable(label, parse_observable(v["pauli"], f"{where}.pauli", label).matrix)
            if "matrix" not in v:
                raise ScenarioError(where, "observable object needs 'matrix' or 'pauli'")
            return Observable(str(label), parse_matrix(v["matrix"], f"{where}.matrix"))
        return Observable(default_label, parse_matrix(v, where))
    except InvalidInput as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(where, f"{type(exc).__name__}: {exc}") from None


def parse_observables(v, where: str, prefix: str) -> tuple[Observable, ...]:
    if not isinstance(v, list) or not v:
        raise ScenarioError(where, "expected a non-empty list of observables")
    return tuple(parse_observable(x, f"{where}[{i}]", f"{prefix}{i + 1}") for i, x in enumerate(v))


def parse_state(v, where: str = "state") -> QuantumState:
    if not isinstance(v, dict) or len(v) != 1:
        raise ScenarioError(where, "expected exactly one of 'bloch', 'matrix', 'pure'")
    (kind, body), = v.items()
    try:
        if kind == "bloch":
            if not isinstance(body, list) or len(body) != 3:
                raise ScenarioError(f"{where}.bloch", "expected [x, y, z]")
            return state_from_bloch([_number(x, f"{where}.bloch[{i}]") for i, x in enumerate(body)])
        if kind == "matrix":
            return validate_state(parse_matrix(body, f"{where}.matrix"))
        if kind == "pure":
            return state_from_pure(parse_vector(body, f"{where}.pure"))
    except ScenarioError:
        raise
    except (InvalidInput, ValueError) as exc:
        raise ScenarioError(f"{where}.{kind}", f"{type(exc).__name__}: {exc}") from None
    raise ScenarioError(where, f"unknown state kind {kind!r}")


@dataclass(frozen=True)
class Scenario:
    state: QuantumState
    observables_a: tuple[Observable, ...]
    observables_b: tuple[Observable, ...] | None = None
    pati_c: Observable | None = None


def parse_scenario(doc: dict) -> Scenario:
    unknown = set(doc) - {"state", "observables_a", "observables_b", "pati_c"}
    if unknown:
        raise ScenarioError(sorted(unknown)[0], "unknown field")
    if "state" not in doc:
        raise ScenarioError("state", "missing")
    if "observables_a" not in doc:
        raise ScenarioError("observables_a", "missing")
    state = parse_state(doc["state"])
    obs_a = parse_observables(doc["observables_a"], "observables_a", "A")
    obs_b = parse_observables(doc["observables_b"], "observables_b", "B") if "observables_b" in doc else None
    pati_c = parse_observable(doc["pati_c"], "pati_c", "C") if "pati_c" in doc else None
    if pati_c is not None and obs_b is None:
        raise ScenarioError("pati_c", "requires observables_b")
    for field, group in (("observables_a", obs_a), ("observables_b", obs_b or ()), ("pati_c", (pati_c,) if pati_c else ())):
        for i, a in enumerate(group):
            try:
                check_dims(state, a)
            except InvalidInput as exc:
                raise ScenarioError(f"{field}[{i}]" if field != "pati_c" else field, str(exc)) from None
    return Scenario(state, obs_a, obs_b, pati_c)


def parse_sweep(doc: dict) -> SweepSpec:
    family = doc.get("family")
    if family not in FAMILIES:
        raise ScenarioError("family", f"expected one of {list(FAMILIES)}, got {family!r}")
    kwargs = {}
    for key in ("theta_start", "theta_end", "radius"):
        if key in doc:
            kwargs[key] = _number(doc[key], key)
    if "points" in doc:
        if isinstance(doc["points"], bool) or not isinstance(doc["points"], int):
            raise ScenarioError("points", "expected an integer")
        kwargs["points"] = doc["points"]
    if "plane" in doc:
        kwargs["plane"] = doc["plane"]
    if family == "bloch_circle":
        if "radius" not in doc:
            raise ScenarioError("radius", "missing")
        if "observables_a" not in doc:
            raise ScenarioError("observables_a", "missing")
        kwargs["observables_a"] = parse_observables(doc["observables_a"], "observables_a", "A")
        if "observables_b" in doc:
            kwargs["observables_b"] = parse_observables(doc["observables_b"], "observables_b", "B")
    try:
        return SweepSpec(family, **kwargs)
    except ValueError as exc:
        raise ScenarioError("sweep", str(exc)) from None


def _sum_section(rep: B.SumBoundReport) -> dict:
    out = {"n": rep.n, "lhs": rep.lhs, "thm1": rep.thm1}
    if rep.n == 2:
        out["maccone"] = rep.maccone
    if rep.n >= 3:
        out["chen_fei"] = rep.chen_fei
    if rep.n >= 2:
        out["cor3"] = rep.cor3
        out["pairwise_rur"] = rep.pairwise_rur
    out["lambda_max"] = rep.lambda_max
    out["sigma_max"] = rep.sigma_max
    out["degenerate"] = dict(rep.degenerate)
    return out


def _product_section(rep: B.ProductBoundReport) -> dict:
    return {
        "n": rep.n,
        "m": rep.m,
        "lhs": rep.lhs,
        "thm2": rep.thm2,
        "cor2": rep.cor2,
        "c22": rep.c22,
        "sigma_max": rep.sigma_max,
        "degenerate": dict(rep.degenerate),
    }


def _pair_entry(s: QuantumState, a: Observable, b: Observable) -> dict:
    pb = B.pair_bounds(s, a, b)
    da, db = std(s, a), std(s, b)
    return {"a": a.label, "b": b.label, "delta_a": da, "delta_b": db, "rur": pb.rur, "sur": pb.sur}


def evaluate_scenario(sc: Scenario) -> dict:
    """Report dict; degenerate bounds are ``None`` with reasons under ``degenerate``."""
    s = sc.state
    report: dict = {"state": {"dim": s.dim, "purity": s.purity}}
    if s.dim == 2:
        report["state"]["bloch"] = list(s.bloch())
    report["observables_a"] = [a.label for a in sc.observables_a]
    if sc.observables_b is not None:
        report["observables_b"] = [b.label for b in sc.observables_b]
    report["sum"] = _sum_section(B.sum_bounds(s, sc.observables_a))
    pairs = [_pair_entry(s, a, b) for a, b in combinations(sc.observables_a, 2)]
    if sc.observables_b is not None:
        report["product"] = _product_section(B.product_bounds(s, sc.observables_a, sc.observables_b))
        pairs += [_pair_entry(s, a, b) for a in sc.observables_a for b in sc.observables_b]
    report["pairs"] = pairs
    if sc.pati_c is not None:
        try:
            p = B.bound_pati(s, sc.observables_a, sc.observables_b, sc.pati_c)
        except InvalidInput as exc:
            raise ScenarioError("pati_c", f"{type(exc).__name__}: {exc}") from None
        report["pati"] = {"lhs": p.lhs, "rhs": p.rhs}
    return report


def degenerate_bounds(report: dict) -> dict[str, str]:
    out = {}
    for section in ("sum", "product"):
        for name, reason in report.get(section, {}).get("degenerate", {}).items():
            out[f"{section}.{name}"] = reason
    return out


__all__ = [
    "Scenario",
    "ScenarioError",
    "degenerate_bounds",
    "evaluate_scenario",
    "load_json",
    "parse_scenario",
    "parse_state",
    "parse_sweep",
]
