"""Bound curves along one-parameter families of qubit states, written as CSV.

The three named families reproduce the qubit examples used to compare the
bounds: ``fig1`` (sigma_x, sigma_z on a circle of radius sqrt(3)/2 in the xy
plane), ``fig2`` (all three Paulis on the x-axis diameter ``(cos t, 0, 0)``)
and ``fig3`` (sigma_z against {sigma_x, sigma_y} on a circle of radius 1/2).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bounds as B
from .quantum import Observable, pauli, state_from_bloch

FIGURES = ("fig1", "fig2", "fig3")
FAMILIES = FIGURES + ("bloch_circle",)
PLANES = ("xy", "yz", "zx")
DEFAULT_POINTS = 181

SUM_COLUMNS = ("theta", "lhs", "thm1", "{pair_col}", "cor3", "pairwise_rur", "lambda_max", "sigma_max", "degenerate")
PRODUCT_COLUMNS = ("theta", "lhs", "thm2", "cor2", "c22", "sigma_max", "degenerate")


@dataclass(frozen=True)
class SweepSpec:
    family: str
    theta_start: float = 0.0
    theta_end: float = math.pi
    points: int = DEFAULT_POINTS
    radius: float = 1.0
    plane: str = "xy"
    observables_a: tuple[Observable, ...] = ()
    observables_b: tuple[Observable, ...] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.points < 2:
            raise ValueError("points must be >= 2")
        if not (math.isfinite(self.theta_start) and math.isfinite(self.theta_end)):
            raise ValueError("theta range must be finite")
        if self.plane not in PLANES:
            raise ValueError(f"plane must be one of {PLANES}")
        if not 0.0 <= self.radius <= 1.0:
            raise ValueError("radius must lie in [0, 1]")
        if self.family == "bloch_circle":
            if not self.observables_a:
                raise ValueError("bloch_circle needs observables_a")
            if self.observables_b is None and len(self.observables_a) < 2:
                raise ValueError("a sum sweep needs at least two observables")
            for a in (*self.observables_a, *(self.observables_b or ())):
                if a.dim != 2:
                    raise ValueError(f"observable {a.label!r} is not a qubit observable")

    @property
    def is_product(self) -> bool:
        return self.observables_b is not None

    def thetas(self) -> np.ndarray:
        return np.linspace(self.theta_start, self.theta_end, self.points)

    def bloch(self, theta: float) -> tuple[float, float, float]:
        if self.family == "fig2":
            return (math.cos(theta), 0.0, 0.0)
        u, v = self.radius * math.cos(theta), self.radius * math.sin(theta)
        return {"xy": (u, v, 0.0), "yz": (0.0, u, v), "zx": (v, 0.0, u)}[self.plane]


def figure_spec(fig: str, points: int = DEFAULT_POINTS) -> SweepSpec:
    """Sweep spec for one of the named figure families over ``[0, pi]``."""
    sx, sy, sz = pauli("sigma_x"), pauli("sigma_y"), pauli("sigma_z")
    if fig == "fig1":
        return SweepSpec("fig1", points=points, radius=math.sqrt(3) / 2, observables_a=(sx, sz))
    if fig == "fig2":
        return SweepSpec("fig2", points=points, observables_a=(sx, sy, sz))
    if fig == "fig3":
        return SweepSpec("fig3", points=points, radius=0.5, observables_a=(sz,), observables_b=(sx, sy))
    raise ValueError(f"unknown figure {fig!r}; expected one of {FIGURES}")


def resolve(spec: SweepSpec) -> SweepSpec:
    """Fill in the observables and radius of a named family."""
    if spec.family == "bloch_circle":
        return spec
    base = figure_spec(spec.family)
    return SweepSpec(
        spec.family,
        spec.theta_start,
        spec.theta_end,
        spec.points,
        base.radius,
        base.plane,
        base.observables_a,
        base.observables_b,
    )


def header(spec: SweepSpec) -> list[str]:
    spec = resolve(spec)
    if spec.is_product:
        return list(PRODUCT_COLUMNS)
    pair_col = "maccone" if len(spec.observables_a) == 2 else "chen_fei"
    return [c.format(pair_col=pair_col) for c in SUM_COLUMNS]


def evaluate_point(spec: SweepSpec, theta: float) -> dict:
    s = state_from_bloch(spec.bloch(theta))
    if spec.is_product:
        rep = B.product_bounds(s, spec.observables_a, spec.observables_b)
        row = {"lhs": rep.lhs, "thm2": rep.thm2, "cor2": rep.cor2, "c22": rep.c22, "sigma_max": rep.sigma_max}
    else:
        rep = B.sum_bounds(s, spec.observables_a)
        row = {
            "lhs": rep.lhs,
            "thm1": rep.thm1,
            "maccone": rep.maccone,
            "chen_fei": rep.chen_fei,
            "cor3": rep.cor3,
            "pairwise_rur": rep.pairwise_rur,
            "lambda_max": rep.lambda_max,
            "sigma_max": rep.sigma_max,
        }
    row["theta"] = float(theta)
    row["degenerate"] = ";".join(sorted(rep.degenerate))
    return row


def evaluate(spec: SweepSpec) -> tuple[list[str], list[dict]]:
    """Header and one row dict per grid point, ordered by ``theta``."""
    spec = resolve(spec)
    cols = header(spec)
    rows = [evaluate_point(spec, t) for t in spec.thetas()]
    return cols, rows


def format_number(x: float | None) -> str:
    if x is None:
        return ""
    if x == 0.0:
        x = 0.0  # drop the sign of -0.0
    return format(x, ".15g")


def to_csv(cols: Sequence[str], rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    buf.write(",".join(cols) + "\n")
    for row in rows:
        cells = [row[c] if c == "degenerate" else format_number(row[c]) for c in cols]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def write_csv(spec: SweepSpec, path) -> str:
    text = to_csv(*evaluate(spec))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return text


def read_csv(path) -> dict[str, np.ndarray]:
    """Numeric columns of a sweep CSV (empty cells become NaN)."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    cols = lines[0].split(",")
    data = {c: [] for c in cols if c != "degenerate"}
    for line in lines[1:]:
        for c, cell in zip(cols, line.split(",")):
            if c != "degenerate":
                data[c].append(float(cell) if cell else math.nan)
    return {c: np.array(v) for c, v in data.items()}
