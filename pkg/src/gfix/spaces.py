"""Bundled G-metric spaces.

Two Euclidean-derived constructions carry a linear convex structure:

* perimeter: G(x,y,z) = d(x,y) + d(y,z) + d(x,z)
* max:       G(x,y,z) = max{d(x,y), d(y,z), d(x,z)}

The sign-based space on the nonzero reals adds 1 whenever the three
arguments do not all share a sign.  Its domain is not convex (0 is
excluded), so it ships without a convex structure.
"""

from __future__ import annotations

import math

from .convexity import ConvexGSpace, linear_interpolation
from .core import GSpace, Point
from .rng import Stream

_DEFAULT_HALF_WIDTH = 10.0


def _euclid_contains(dim: int):
    def contains(p: Point) -> bool:
        return len(p) == dim and all(math.isfinite(c) for c in p)
    return contains


def _euclid_draw(dim: int):
    def draw(stream: Stream, box, min_separation: float) -> Point:
        return tuple(stream.uniform(lo, hi) for lo, hi in box)
    return draw


def _default_box(dim: int):
    return ((-_DEFAULT_HALF_WIDTH, _DEFAULT_HALF_WIDTH),) * dim


def make_perimeter_space(dim: int) -> ConvexGSpace:
    """Sum-of-pairwise-distances G-metric with linear interpolation."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    dist = math.dist

    def g(x: Point, y: Point, z: Point) -> float:
        return dist(x, y) + dist(y, z) + dist(x, z)

    space = GSpace(name=f"perimeter-{dim}", dim=dim, g=g,
                   draw=_euclid_draw(dim), contains=_euclid_contains(dim),
                   default_box=_default_box(dim))
    return ConvexGSpace(space, linear_interpolation())


def make_max_space(dim: int) -> ConvexGSpace:
    """Max-of-pairwise-distances G-metric with linear interpolation."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    dist = math.dist

    def g(x: Point, y: Point, z: Point) -> float:
        return max(dist(x, y), dist(y, z), dist(x, z))

    space = GSpace(name=f"max-{dim}", dim=dim, g=g,
                   draw=_euclid_draw(dim), contains=_euclid_contains(dim),
                   default_box=_default_box(dim))
    return ConvexGSpace(space, linear_interpolation())


def make_sign_example_space() -> GSpace:
    """The sign-based G-metric on the nonzero reals.

    Same-sign triples get the perimeter value; mixed-sign triples get an
    extra +1.  No convex structure: the domain excludes 0.
    """
    def g(x: Point, y: Point, z: Point) -> float:
        a, b, c = x[0], y[0], z[0]
        base = abs(a - b) + abs(b - c) + abs(a - c)
        if (a > 0 and b > 0 and c > 0) or (a < 0 and b < 0 and c < 0):
            return base
        return 1.0 + base

    def contains(p: Point) -> bool:
        return len(p) == 1 and math.isfinite(p[0]) and p[0] != 0

    def draw(stream: Stream, box, min_separation: float) -> Point:
        # stay away from the excluded point and the discontinuity at 0
        lo, hi = box[0]
        floor = max(min_separation, 1e-12)
        while True:
            v = stream.uniform(lo, hi)
            if abs(v) >= floor:
                return (v,)

    return GSpace(name="sign-example", dim=1, g=g, draw=draw,
                  contains=contains,
                  default_box=((-_DEFAULT_HALF_WIDTH, _DEFAULT_HALF_WIDTH),))


class UnknownSpaceError(ValueError):
    """Catalog key does not resolve to a bundled space."""


def get_space(key: str):
    """Resolve a catalog key: ``perimeter-<dim>``, ``max-<dim>`` or
    ``sign-example``.  Returns a ConvexGSpace, or a bare GSpace for the
    sign example."""
    if key == "sign-example":
        return make_sign_example_space()
    for prefix, maker in (("perimeter-", make_perimeter_space),
                          ("max-", make_max_space)):
        if key.startswith(prefix):
            try:
                dim = int(key[len(prefix):])
            except ValueError:
                raise UnknownSpaceError(f"bad dimension in space key {key!r}")
            if dim < 1:
                raise UnknownSpaceError(f"dimension must be >= 1 in {key!r}")
            return maker(dim)
    raise UnknownSpaceError(f"unknown space key {key!r}")
