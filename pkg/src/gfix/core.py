"""G-metric spaces and sampled verification of their axioms.

A G-metric assigns a nonnegative real to every triple of points and must
satisfy: vanishing on diagonal triples, strict positivity off the
diagonal, monotonicity G(x,x,y) <= G(x,y,z) for z != y, full symmetry in
all three arguments, and the rectangle inequality
G(x,y,z) <= G(x,a,a) + G(a,y,z).

Nothing here is proved symbolically; the checkers sample the domain
(random draws plus a structured pass over corners, midpoints and
coincident tuples) and report violations as data.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .rng import Stream

# A point is a tuple of finite floats; dimension is its length.
Point = tuple
# Per-coordinate (low, high) bounds.
Box = tuple

STRICT_FLOOR = 1e-12  # strict positivity is witnessed above this level


class DomainError(ValueError):
    """A point lies outside the space's domain."""


def distance(x: Point, y: Point) -> float:
    """Euclidean distance; also used as the separation measure."""
    return math.dist(x, y)


def _finite(p: Point) -> bool:
    return all(isinstance(c, (int, float)) and math.isfinite(c) for c in p)


@dataclass(frozen=True)
class GSpace:
    """A G-metric evaluator plus a domain sampler.

    ``g`` must be deterministic and return a finite nonnegative real for
    every triple of domain points.  ``draw`` pulls one point from a
    Stream, rejecting anything outside the domain (e.g. near the excluded
    point of the sign-based space).
    """

    name: str
    dim: int
    g: Callable[[Point, Point, Point], float]
    draw: Callable[[Stream, Box, float], Point]
    contains: Callable[[Point], bool]
    default_box: Box


def eval_g(space: GSpace, x: Point, y: Point, z: Point) -> float:
    """Evaluate G(x,y,z) with domain validation."""
    for p in (x, y, z):
        if len(p) != space.dim or not _finite(p) or not space.contains(p):
            raise DomainError(f"{p!r} is not in the domain of {space.name}")
    return space.g(x, y, z)


@dataclass(frozen=True)
class SamplePlan:
    """How to sample a space: seed, sample count, bounding box, and the
    separation below which strict-inequality axioms are not checked."""

    seed: int
    count: int
    box: Optional[Box] = None
    min_separation: float = 1e-3

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.min_separation < 0:
            raise ValueError("min_separation must be >= 0")
        if self.box is not None:
            for lo, hi in self.box:
                if not lo < hi:
                    raise ValueError(f"invalid box interval ({lo}, {hi})")

    def resolve_box(self, space: GSpace) -> Box:
        box = self.box if self.box is not None else space.default_box
        if len(box) != space.dim:
            raise ValueError("box dimension does not match space dimension")
        return box


@dataclass(frozen=True)
class Violation:
    check_id: str
    witness: tuple
    lhs: float
    rhs: float
    margin: float


@dataclass(frozen=True)
class CheckReport:
    """Aggregate of one sampled verification run.

    ``violations`` keeps only the 10 worst offenders (sorted by margin,
    descending); ``violation_count`` is the full tally.  ``worst_margin``
    is the maximum signed margin over every check performed, so a passing
    report shows how close the worst sample came.
    """

    total_checks: int
    violation_count: int
    violations: tuple
    worst_margin: float
    passed: bool
    worst_ratio: Optional[float] = None


_KEEP_WORST = 10


class Collector:
    """Accumulates check outcomes; a check fails when margin > 0."""

    def __init__(self):
        self.total = 0
        self.count = 0
        self.worst: list[Violation] = []
        self.worst_margin = -math.inf
        self.worst_ratio: Optional[float] = None

    def record(self, check_id: str, witness: tuple, lhs: float, rhs: float,
               margin: float) -> None:
        self.total += 1
        if margin > self.worst_margin:
            self.worst_margin = margin
        if margin > 0:
            self.count += 1
            self.worst.append(Violation(check_id, witness, lhs, rhs, margin))
            if len(self.worst) > 4 * _KEEP_WORST:
                self.worst.sort(key=lambda v: -v.margin)
                del self.worst[_KEEP_WORST:]

    def note_ratio(self, ratio: float) -> None:
        if self.worst_ratio is None or ratio > self.worst_ratio:
            self.worst_ratio = ratio

    def report(self) -> CheckReport:
        self.worst.sort(key=lambda v: -v.margin)
        return CheckReport(
            total_checks=self.total,
            violation_count=self.count,
            violations=tuple(self.worst[:_KEEP_WORST]),
            worst_margin=self.worst_margin,
            passed=self.count == 0,
            worst_ratio=self.worst_ratio,
        )


def allowance(tol: float, rhs: float) -> float:
    """Slack granted to a <=-inequality: tol * max(1, |rhs|)."""
    return tol * max(1.0, abs(rhs))


def sample_points(space: GSpace, seed: int, count: int,
                  box: Optional[Box] = None,
                  min_separation: float = 1e-3) -> list:
    """Draw ``count`` domain points, one independent stream per index."""
    box = box if box is not None else space.default_box
    return [space.draw(Stream(seed, i), box, min_separation)
            for i in range(count)]


def structured_points(space: GSpace, box: Box, limit: int = 12) -> list:
    """Deterministic grid pass: corners, midpoint and quarter points of
    the box, filtered to the domain."""
    los = [lo for lo, _ in box]
    his = [hi for _, hi in box]
    pts = []
    if space.dim <= 4:
        pts.extend(itertools.product(*[(lo, hi) for lo, hi in box]))
    else:
        pts.append(tuple(los))
        pts.append(tuple(his))
    pts.append(tuple((lo + hi) / 2 for lo, hi in box))
    pts.append(tuple(lo + 0.25 * (hi - lo) for lo, hi in box))
    pts.append(tuple(lo + 0.75 * (hi - lo) for lo, hi in box))
    good = [tuple(float(c) for c in p) for p in pts if space.contains(p)]
    return good[:limit]


def structured_quads(pts: Sequence[Point]) -> list:
    """Coincident-point combinations the random pass is unlikely to hit."""
    quads = [(p, p, p, p) for p in pts]
    for p, q in itertools.combinations(pts, 2):
        quads.extend([(p, p, q, q), (p, q, q, p), (p, q, p, q),
                      (q, p, p, p), (p, q, q, q)])
    for p, q, r in zip(pts, pts[1:], pts[2:]):
        quads.append((p, q, r, p))
    return quads


def sample_quads(space: GSpace, plan: SamplePlan) -> list:
    """Random quadruples per the plan plus the structured pass."""
    box = plan.resolve_box(space)
    quads = []
    for i in range(plan.count):
        s = Stream(plan.seed, i)
        quads.append(tuple(space.draw(s, box, plan.min_separation)
                           for _ in range(4)))
    quads.extend(structured_quads(structured_points(space, box)))
    return quads


_PERMS = tuple(itertools.permutations((0, 1, 2)))


def check_axioms(space: GSpace, plan: SamplePlan, tol: float = 1e-9) -> CheckReport:
    """Sampled verification of the five defining axioms.

    Strict positivity and the z != y side condition are only checked at
    samples separated by at least ``plan.min_separation``: floating point
    cannot witness strict inequalities at arbitrarily close points.
    """
    g = space.g
    sep = plan.min_separation
    col = Collector()
    for x, y, z, a in sample_quads(space, plan):
        # (i) vanishing on the diagonal
        v = g(x, x, x)
        col.record("axiom-i", (x,), v, 0.0, abs(v) - tol)
        # (ii) strict positivity for separated points
        if distance(x, y) >= sep:
            v = g(x, x, y)
            col.record("axiom-ii", (x, y), v, STRICT_FLOOR, STRICT_FLOOR - v)
        # (iii) G(x,x,y) <= G(x,y,z) when z is separated from y
        if distance(z, y) >= sep:
            lhs = g(x, x, y)
            rhs = g(x, y, z)
            col.record("axiom-iii", (x, y, z), lhs, rhs,
                       lhs - rhs - allowance(tol, rhs))
        # (iv) symmetry in all three arguments
        args = (x, y, z)
        vals = [g(args[i], args[j], args[k]) for i, j, k in _PERMS]
        hi, lo = max(vals), min(vals)
        col.record("axiom-iv", (x, y, z), hi, lo, hi - lo - allowance(tol, hi))
        # (v) rectangle inequality
        lhs = g(x, y, z)
        rhs = g(x, a, a) + g(a, y, z)
        col.record("axiom-v", (x, y, z, a), lhs, rhs,
                   lhs - rhs - allowance(tol, rhs))
    return col.report()


def check_derived(space: GSpace, plan: SamplePlan, tol: float = 1e-9) -> CheckReport:
    """Sampled verification of the standard consequences of the axioms.

    The implication G = 0 => all points equal cannot be falsified by
    sampling, so it is checked constructively: diagonal triples must give
    exactly 0 and no separated triple may fall below tol.
    """
    g = space.g
    sep = plan.min_separation
    col = Collector()
    for x, y, z, a in sample_quads(space, plan):
        gxyz = g(x, y, z)
        # (i) constructive: diagonal gives 0, separated triples stay positive
        col.record("derived-i", (x,), g(x, x, x), 0.0, abs(g(x, x, x)) - tol)
        if (distance(x, y) >= sep and distance(y, z) >= sep
                and distance(x, z) >= sep):
            col.record("derived-i", (x, y, z), gxyz, tol, tol - gxyz)
        # (ii) G(x,y,z) <= G(x,x,y) + G(x,x,z)
        rhs = g(x, x, y) + g(x, x, z)
        col.record("derived-ii", (x, y, z), gxyz, rhs,
                   gxyz - rhs - allowance(tol, rhs))
        # (iii) G(x,y,y) <= 2 G(y,x,x)
        lhs = g(x, y, y)
        rhs = 2.0 * g(y, x, x)
        col.record("derived-iii", (x, y), lhs, rhs,
                   lhs - rhs - allowance(tol, rhs))
        # (iv) G(x,y,z) <= G(x,a,z) + G(a,y,z)
        rhs = g(x, a, z) + g(a, y, z)
        col.record("derived-iv", (x, y, z, a), gxyz, rhs,
                   gxyz - rhs - allowance(tol, rhs))
        # (v) G(x,y,z) <= (2/3)(G(x,y,a) + G(x,a,z) + G(a,y,z))
        rhs = (2.0 / 3.0) * (g(x, y, a) + g(x, a, z) + g(a, y, z))
        col.record("derived-v", (x, y, z, a), gxyz, rhs,
                   gxyz - rhs - allowance(tol, rhs))
        # (vi) G(x,y,z) <= G(x,a,a) + G(y,a,a) + G(z,a,a)
        rhs = g(x, a, a) + g(y, a, a) + g(z, a, a)
        col.record("derived-vi", (x, y, z, a), gxyz, rhs,
                   gxyz - rhs - allowance(tol, rhs))
    return col.report()
