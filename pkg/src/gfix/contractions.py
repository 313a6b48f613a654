"""Contractive conditions on mappings of a G-metric space.

Each condition bounds G(Tx,Ty,Tz) by a weighted combination of G-values
of the arguments and their self-displacements G(p,Tp,Tp).  The checker
verifies a condition on sampled triples; the applicability verdict
reports whether the coefficients fall inside the region for which a
convergence rate for the averaged iteration is available.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

from .core import (Collector, CheckReport, GSpace, Point, SamplePlan,
                   allowance, sample_quads)

_RATIO_FLOOR = 1e-15  # denominator clamp for worst-ratio diagnostics


class ConditionKind(enum.Enum):
    FOUR_TERM = "four-term"          # a*G(x,y,z) + b,c,d on G(p,Tp,Tp)
    FOUR_TERM_ALT = "four-term-alt"  # same but with G(p,p,Tp) displacements
    SUM = "sum"                      # a*G(x,y,z) + b * sum of displacements
    MAX = "max"                      # a*G(x,y,z) + b * max of displacements
    THREE_TERM = "three-term"        # a,b,c on the three displacements
    K_SUM = "k-sum"                  # k * sum of displacements


_COEFF_NAMES = {
    ConditionKind.FOUR_TERM: ("a", "b", "c", "d"),
    ConditionKind.FOUR_TERM_ALT: ("a", "b", "c", "d"),
    ConditionKind.SUM: ("a", "b"),
    ConditionKind.MAX: ("a", "b"),
    ConditionKind.THREE_TERM: ("a", "b", "c"),
    ConditionKind.K_SUM: ("k",),
}


@dataclass(frozen=True)
class ContractionSpec:
    kind: ConditionKind
    coefficients: Dict[str, float]

    def __post_init__(self):
        names = _COEFF_NAMES[self.kind]
        got = tuple(sorted(self.coefficients))
        if got != tuple(sorted(names)):
            raise ValueError(
                f"{self.kind.value} takes coefficients {names}, got {got}")
        for name, value in self.coefficients.items():
            if not value >= 0:
                raise ValueError(f"coefficient {name} must be >= 0, got {value}")

    def __getitem__(self, name: str) -> float:
        return self.coefficients[name]


@dataclass(frozen=True)
class Mapping:
    """A self-map of the space, with its fixed point when known."""

    name: str
    apply: Callable[[Point], Point]
    fixed_point: Optional[Point] = None


@dataclass(frozen=True)
class ApplicabilityVerdict:
    """Whether coefficients admit a convergence rate; each residual must
    be strictly positive."""

    rule: str
    satisfied: bool
    residuals: Dict[str, float]
    note: str = ""


def rhs_value(spec: ContractionSpec, space: GSpace, T: Mapping,
              x: Point, y: Point, z: Point) -> float:
    """Right-hand side of the condition's inequality at (x, y, z)."""
    g = space.g
    t = T.apply
    kind = spec.kind
    if kind in (ConditionKind.FOUR_TERM, ConditionKind.FOUR_TERM_ALT):
        if kind is ConditionKind.FOUR_TERM:
            dx, dy, dz = (g(x, t(x), t(x)), g(y, t(y), t(y)), g(z, t(z), t(z)))
        else:
            dx, dy, dz = (g(x, x, t(x)), g(y, y, t(y)), g(z, z, t(z)))
        return (spec["a"] * g(x, y, z) + spec["b"] * dx
                + spec["c"] * dy + spec["d"] * dz)
    dx = g(x, t(x), t(x))
    dy = g(y, t(y), t(y))
    dz = g(z, t(z), t(z))
    if kind is ConditionKind.SUM:
        return spec["a"] * g(x, y, z) + spec["b"] * (dx + dy + dz)
    if kind is ConditionKind.MAX:
        return spec["a"] * g(x, y, z) + spec["b"] * max(dx, dy, dz)
    if kind is ConditionKind.THREE_TERM:
        return spec["a"] * dx + spec["b"] * dy + spec["c"] * dz
    return spec["k"] * (dx + dy + dz)


def check_condition(spec: ContractionSpec, space: GSpace, T: Mapping,
                    plan: SamplePlan, tol: float = 1e-9) -> CheckReport:
    """Verify G(Tx,Ty,Tz) <= rhs on sampled triples; the report carries
    the worst lhs/rhs ratio seen."""
    g = space.g
    t = T.apply
    col = Collector()
    for x, y, z, _ in sample_quads(space, plan):
        lhs = g(t(x), t(y), t(z))
        rhs = rhs_value(spec, space, T, x, y, z)
        col.record(spec.kind.value, (x, y, z), lhs, rhs,
                   lhs - rhs - allowance(tol, rhs))
        col.note_ratio(lhs / max(rhs, _RATIO_FLOOR))
    return col.report()


def check_applicability(spec: ContractionSpec) -> ApplicabilityVerdict:
    """Map the coefficients to the constraint region of the matching
    convergence result."""
    kind = spec.kind
    if kind in (ConditionKind.FOUR_TERM, ConditionKind.FOUR_TERM_ALT):
        a, b = spec["a"], spec["b"]
        residuals = {"1-(a+3b)": 1.0 - (a + 3.0 * b), "1-2b": 1.0 - 2.0 * b}
        note = ""
        if kind is ConditionKind.FOUR_TERM_ALT:
            note = ("alternate displacement orientation; rate constraint "
                    "borrowed from the four-term condition")
        return ApplicabilityVerdict(kind.value,
                                    all(r > 0 for r in residuals.values()),
                                    residuals, note)
    if kind in (ConditionKind.SUM, ConditionKind.MAX):
        a, b = spec["a"], spec["b"]
        residuals = {"a+3b": a + 3.0 * b, "1-(a+3b)": 1.0 - (a + 3.0 * b)}
        return ApplicabilityVerdict(kind.value,
                                    all(r > 0 for r in residuals.values()),
                                    residuals)
    if kind is ConditionKind.THREE_TERM:
        a, b, c = spec["a"], spec["b"], spec["c"]
        residuals = {"1-(a+b+c)": 1.0 - (a + b + c), "1/2-a": 0.5 - a}
        return ApplicabilityVerdict(kind.value,
                                    all(r > 0 for r in residuals.values()),
                                    residuals)
    k = spec["k"]
    residuals = {"k": k, "1/3-k": 1.0 / 3.0 - k}
    return ApplicabilityVerdict(kind.value,
                                all(r > 0 for r in residuals.values()),
                                residuals)


def make_affine_contraction(center: Point, k: float) -> Mapping:
    """T x = center + k*(x - center); fixed point is the center for k < 1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    center = tuple(float(c) for c in center)

    def apply(x: Point) -> Point:
        return tuple(c + k * (a - c) for a, c in zip(x, center))

    fixed = center if k < 1 else None
    return Mapping(name=f"affine(k={k})", apply=apply, fixed_point=fixed)


def make_translation(offset: Point) -> Mapping:
    """T x = x + offset; has no fixed point for a nonzero offset."""
    offset = tuple(float(c) for c in offset)

    def apply(x: Point) -> Point:
        return tuple(a + d for a, d in zip(x, offset))

    return Mapping(name="translation", apply=apply, fixed_point=None)
