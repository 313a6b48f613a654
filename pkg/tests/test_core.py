"""Axiom and derived-inequality checks, validated against an independent
brute-force grid sweep before trusting the sampled checkers."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gfix
from gfix.core import Collector, sample_quads, structured_points

PERIM1 = gfix.make_perimeter_space(1).space
PERIM2 = gfix.make_perimeter_space(2).space
MAX3 = gfix.make_max_space(3).space
SIGN = gfix.make_sign_example_space()


# --- independent oracle: exhaustive sweep on a small grid ---------------

def grid(space, n=5, lo=-2.0, hi=2.0):
    axis = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    pts = [p for p in itertools.product(axis, repeat=space.dim)
           if space.contains(p)]
    return pts


def brute_force_axioms(space, pts, quad_pts=None):
    """Directly sweep the five axioms; independent of the sampler."""
    g = space.g
    quad_pts = quad_pts or pts
    for p in pts:
        assert g(p, p, p) == 0.0
    for x, y in itertools.product(pts, repeat=2):
        if x != y:
            assert g(x, x, y) > 0.0
    for x, y, z in itertools.product(pts, repeat=3):
        if z != y:
            assert g(x, x, y) <= g(x, y, z) + 1e-12
        vals = {g(x, y, z), g(x, z, y), g(y, x, z),
                g(y, z, x), g(z, x, y), g(z, y, x)}
        assert max(vals) - min(vals) <= 1e-12
        for a in quad_pts:
            assert g(x, y, z) <= g(x, a, a) + g(a, y, z) + 1e-12


def test_grid_oracle_perimeter_dim1():
    brute_force_axioms(PERIM1, grid(PERIM1))


def test_grid_oracle_perimeter_dim2():
    pts = grid(PERIM2, n=3)
    brute_force_axioms(PERIM2, pts, quad_pts=pts[::3])


def test_grid_oracle_max_dim3():
    pts = grid(MAX3, n=2)
    brute_force_axioms(MAX3, pts)


def test_grid_oracle_sign_example():
    pts = [(v,) for v in (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)]
    brute_force_axioms(SIGN, pts)


# --- eval_g ---------------------------------------------------------------

def test_eval_g_sign_example_same_sign():
    assert gfix.eval_g(SIGN, (1.0,), (2.0,), (3.0,)) == 4.0


def test_eval_g_sign_example_mixed_sign():
    assert gfix.eval_g(SIGN, (1.0,), (-1.0,), (2.0,)) == 7.0


def test_eval_g_diagonal_is_zero():
    for space in (PERIM1, PERIM2, MAX3):
        p = (1.5,) * space.dim
        assert gfix.eval_g(space, p, p, p) == 0.0
    assert gfix.eval_g(SIGN, (1.5,), (1.5,), (1.5,)) == 0.0


def test_eval_g_rejects_zero_in_sign_example():
    with pytest.raises(gfix.DomainError):
        gfix.eval_g(SIGN, (0.0,), (1.0,), (2.0,))


def test_eval_g_rejects_wrong_dimension():
    with pytest.raises(gfix.DomainError):
        gfix.eval_g(PERIM2, (1.0,), (0.0, 0.0), (0.0, 0.0))


def test_eval_g_rejects_nonfinite():
    with pytest.raises(gfix.DomainError):
        gfix.eval_g(PERIM1, (math.inf,), (0.0,), (0.0,))


# --- check_axioms ---------------------------------------------------------

def test_axioms_pass_on_bundled_spaces():
    plan = gfix.SamplePlan(seed=7, count=1000)
    for space in (PERIM2, MAX3, SIGN):
        report = gfix.check_axioms(space, plan)
        assert report.passed, report.violations[:3]
        assert report.violation_count == 0
        assert report.total_checks > plan.count


def test_axioms_fail_on_broken_evaluator():
    # an asymmetric signed function must fail positivity/symmetry
    broken = gfix.GSpace(
        name="broken", dim=2,
        g=lambda x, y, z: x[0] - y[0],
        draw=PERIM2.draw, contains=PERIM2.contains,
        default_box=PERIM2.default_box)
    report = gfix.check_axioms(broken, gfix.SamplePlan(seed=1, count=200))
    assert not report.passed
    ids = {v.check_id for v in report.violations}
    assert ids & {"axiom-ii", "axiom-iv"}
    assert all(len(v.witness) >= 1 for v in report.violations)


def test_reports_are_reproducible():
    plan = gfix.SamplePlan(seed=42, count=500)
    r1 = gfix.check_axioms(PERIM2, plan)
    r2 = gfix.check_axioms(PERIM2, plan)
    assert r1 == r2
    assert repr(r1) == repr(r2)


def test_axioms_pass_implies_derived_pass():
    plan = gfix.SamplePlan(seed=11, count=1000)
    for space in (PERIM1, PERIM2, MAX3, SIGN):
        ax = gfix.check_axioms(space, plan)
        de = gfix.check_derived(space, plan)
        if ax.passed:
            assert de.passed


# --- check_derived ---------------------------------------------------------

def test_derived_hand_check_item_iii():
    # dim 1: G(0,1,1) = 2 <= 2*G(1,0,0) = 4
    assert PERIM1.g((0.0,), (1.0,), (1.0,)) == 2.0
    assert 2.0 * PERIM1.g((1.0,), (0.0,), (0.0,)) == 4.0


def test_derived_pass_on_bundled_spaces():
    plan = gfix.SamplePlan(seed=11, count=1000)
    for space in (PERIM2, MAX3):
        report = gfix.check_derived(space, plan)
        assert report.passed, report.violations[:3]


def test_derived_degenerate_triple():
    g = PERIM2.g
    p = (1.0, -2.0)
    assert g(p, p, p) == 0.0
    assert g(p, p, p) <= g(p, p, p) + g(p, p, p)


# --- sampling machinery -----------------------------------------------------

def test_sample_points_deterministic_and_in_domain():
    pts1 = gfix.sample_points(SIGN, seed=5, count=200)
    pts2 = gfix.sample_points(SIGN, seed=5, count=200)
    assert pts1 == pts2
    assert all(SIGN.contains(p) and abs(p[0]) >= 1e-3 for p in pts1)


def test_sample_points_independent_of_count_prefix():
    # per-index streams: the first k points do not depend on count
    long = gfix.sample_points(PERIM2, seed=9, count=100)
    short = gfix.sample_points(PERIM2, seed=9, count=10)
    assert long[:10] == short


def test_structured_points_cover_corners_and_midpoint():
    pts = structured_points(PERIM2, PERIM2.default_box)
    assert (-10.0, -10.0) in pts and (10.0, 10.0) in pts
    assert (0.0, 0.0) in pts


def test_structured_points_respect_sign_domain():
    pts = structured_points(SIGN, SIGN.default_box)
    assert all(p[0] != 0 for p in pts)


def test_sample_plan_validation():
    with pytest.raises(ValueError):
        gfix.SamplePlan(seed=0, count=0)
    with pytest.raises(ValueError):
        gfix.SamplePlan(seed=0, count=1, min_separation=-1.0)
    with pytest.raises(ValueError):
        gfix.SamplePlan(seed=0, count=1, box=((1.0, 1.0),))


def test_collector_keeps_ten_worst():
    col = Collector()
    for i in range(100):
        col.record("x", (i,), float(i), 0.0, float(i))
    report = col.report()
    assert report.violation_count == 99  # margin 0 is not a violation
    assert len(report.violations) == 10
    margins = [v.margin for v in report.violations]
    assert margins == sorted(margins, reverse=True)
    assert margins[0] == 99.0


# --- properties --------------------------------------------------------------

coords = st.floats(min_value=-100, max_value=100, allow_nan=False)


@settings(max_examples=50, deadline=None)
@given(st.tuples(coords, coords), st.tuples(coords, coords),
       st.tuples(coords, coords))
def test_permutation_invariance(x, y, z):
    for space in (PERIM2, gfix.make_max_space(2).space):
        vals = [space.g(*perm) for perm in itertools.permutations((x, y, z))]
        assert max(vals) - min(vals) <= 1e-9 * max(1.0, max(vals))


@settings(max_examples=50, deadline=None)
@given(coords, coords, coords)
def test_rectangle_inequality_dim1(a, b, c):
    x, y, z = (a,), (b,), (c,)
    for space in (PERIM1, gfix.make_max_space(1).space):
        for mid in (x, y, z, (0.0,)):
            lhs = space.g(x, y, z)
            rhs = space.g(x, mid, mid) + space.g(mid, y, z)
            assert lhs <= rhs + 1e-9 * max(1.0, rhs)
