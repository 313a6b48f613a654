"""Convex structures on G-metric spaces.

The two-point structure W(x,y; lam, 1-lam) must satisfy

    G(W(x,y;lam,beta), u, v) <= lam*G(x,u,v) + beta*G(y,u,v)

for all u, v and lam + beta = 1.  Only lam is stored; beta is always
derived, so the lam + beta = 1 constraint cannot be violated.

A three-point comparison structure W(x,y,z; lam) with the weaker bound
(lam/3 on each of the three terms) is included as a checker only: as
lam -> 0 its right-hand side vanishes while the left stays positive for
u != v, so no total structure can satisfy it at small lam.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .core import (Collector, CheckReport, DomainError, GSpace, Point,
                   SamplePlan, allowance, structured_points)
from .rng import Stream


@dataclass(frozen=True)
class ConvexStructure:
    """Two-point combinator; ``blend(x, y, lam)`` weights x by lam."""

    name: str
    blend: Callable[[Point, Point, float], Point]


@dataclass(frozen=True)
class ModiStructure:
    """Three-point combinator used by the comparison checker."""

    name: str
    blend3: Callable[[Point, Point, Point, float], Point]


@dataclass(frozen=True)
class ConvexGSpace:
    space: GSpace
    w: ConvexStructure


def linear_interpolation() -> ConvexStructure:
    """Coordinatewise lam*x + (1-lam)*y; the canonical structure for the
    Euclidean-derived spaces."""
    def blend(x: Point, y: Point, lam: float) -> Point:
        b = 1.0 - lam
        return tuple(lam * a + b * c for a, c in zip(x, y))
    return ConvexStructure("linear", blend)


def centroid_structure() -> ModiStructure:
    """(x+y+z)/3 regardless of lam; a natural three-point candidate."""
    def blend3(x: Point, y: Point, z: Point, lam: float) -> Point:
        return tuple((a + b + c) / 3.0 for a, b, c in zip(x, y, z))
    return ModiStructure("centroid", blend3)


def combine(cs: ConvexGSpace, x: Point, y: Point, lam: float) -> Point:
    """W(x, y; lam, 1-lam) with input validation."""
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must be in [0, 1], got {lam}")
    for p in (x, y):
        if not cs.space.contains(p):
            raise DomainError(f"{p!r} is not in the domain of {cs.space.name}")
    return cs.w.blend(x, y, lam)


# every sampled tuple is also checked at these weights; endpoint behavior
# is where candidate structures usually break
_LAMBDA_ANCHORS = (0.0, 0.5, 1.0)
_LAMBDA_ANCHORS_OPEN = (0.01, 0.5, 1.0)


def check_convexity(cs: ConvexGSpace, plan: SamplePlan,
                    tol: float = 1e-9) -> CheckReport:
    """Sampled verification of the two-point convexity inequality."""
    space = cs.space
    g = space.g
    blend = cs.w.blend
    box = plan.resolve_box(space)
    col = Collector()

    def check_tuple(x, y, u, v, lams):
        gx = g(x, u, v)
        gy = g(y, u, v)
        for lam in lams:
            w = blend(x, y, lam)
            lhs = g(w, u, v)
            rhs = lam * gx + (1.0 - lam) * gy
            col.record("convexity", (x, y, u, v, lam), lhs, rhs,
                       lhs - rhs - allowance(tol, rhs))

    for i in range(plan.count):
        s = Stream(plan.seed, i)
        x, y, u, v = (space.draw(s, box, plan.min_separation) for _ in range(4))
        check_tuple(x, y, u, v, (s.uniform(),) + _LAMBDA_ANCHORS)

    pts = structured_points(space, box)
    for x, y in itertools.combinations(pts, 2):
        for u, v in ((x, y), (y, x), (x, x), (pts[0], pts[-1])):
            check_tuple(x, y, u, v, _LAMBDA_ANCHORS)
    return col.report()


def check_modi_convexity(space: GSpace, m: ModiStructure, plan: SamplePlan,
                         tol: float = 1e-9) -> CheckReport:
    """Sampled verification of the three-point comparison inequality with
    lam drawn from (0, 1]."""
    g = space.g
    box = plan.resolve_box(space)
    col = Collector()

    def check_tuple(x, y, z, u, v, lams):
        third = (g(u, v, x), g(u, v, y), g(u, v, z))
        for lam in lams:
            w = m.blend3(x, y, z, lam)
            lhs = g(u, v, w)
            rhs = (lam / 3.0) * sum(third)
            col.record("modi-convexity", (x, y, z, u, v, lam), lhs, rhs,
                       lhs - rhs - allowance(tol, rhs))

    for i in range(plan.count):
        s = Stream(plan.seed, i)
        x, y, z, u, v = (space.draw(s, box, plan.min_separation)
                         for _ in range(5))
        lam = 1.0 - s.uniform()  # uniform in (0, 1]
        check_tuple(x, y, z, u, v, (lam,) + _LAMBDA_ANCHORS_OPEN)

    pts = structured_points(space, box)
    for x, y, z in zip(pts, pts[1:], pts[2:]):
        check_tuple(x, y, z, pts[0], pts[-1], _LAMBDA_ANCHORS_OPEN)
    return col.report()
