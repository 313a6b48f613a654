"""Contractive-condition encodings, sampled checking, and applicability."""

import pytest

import gfix
from gfix.contractions import ConditionKind, ContractionSpec

PERIM1 = gfix.make_perimeter_space(1)
SPACE1 = PERIM1.space


def four_term(a, b, c, d):
    return ContractionSpec(ConditionKind.FOUR_TERM,
                           {"a": a, "b": b, "c": c, "d": d})


def test_rhs_four_term_hand_value():
    T = gfix.make_affine_contraction((0.0,), 0.5)
    spec = four_term(0.5, 0, 0, 0)
    rhs = gfix.rhs_value(spec, SPACE1, T, (0.0,), (1.0,), (3.0,))
    assert rhs == 3.0  # 0.5 * G(0,1,3) = 0.5 * 6


def test_rhs_vanishes_at_fixed_point():
    T = gfix.make_affine_contraction((2.0,), 0.5)
    spec = ContractionSpec(ConditionKind.K_SUM, {"k": 0.2})
    u = (2.0,)
    assert gfix.rhs_value(spec, SPACE1, T, u, u, u) == 0.0


def test_rhs_max_identity_mapping():
    T = gfix.make_affine_contraction((0.0,), 1.0)
    spec = ContractionSpec(ConditionKind.MAX, {"a": 0.0, "b": 1.0})
    assert gfix.rhs_value(spec, SPACE1, T, (1.0,), (2.0,), (5.0,)) == 0.0


def test_spec_validates_coefficients():
    with pytest.raises(ValueError):
        ContractionSpec(ConditionKind.SUM, {"a": 0.5})  # missing b
    with pytest.raises(ValueError):
        ContractionSpec(ConditionKind.K_SUM, {"k": -0.1})
    with pytest.raises(ValueError):
        ContractionSpec(ConditionKind.FOUR_TERM, {"a": 0.1, "b": 0.1})


def test_check_condition_halving_passes():
    T = gfix.make_affine_contraction((0.0,), 0.5)
    report = gfix.check_condition(four_term(0.5, 0, 0, 0), SPACE1, T,
                                  gfix.SamplePlan(seed=1, count=1000))
    assert report.passed
    assert report.worst_ratio <= 1.0 + 1e-9


def test_check_condition_doubling_fails():
    T = gfix.make_affine_contraction((0.0,), 2.0)
    report = gfix.check_condition(four_term(0.5, 0, 0, 0), SPACE1, T,
                                  gfix.SamplePlan(seed=1, count=1000))
    assert not report.passed
    assert report.violations
    x, y, z = report.violations[0].witness
    assert report.violations[0].lhs > report.violations[0].rhs


def test_check_condition_constant_map_passes():
    T = gfix.make_affine_contraction((3.0,), 0.0)
    spec = four_term(0.0, 0.4, 0.4, 0.4)
    report = gfix.check_condition(spec, SPACE1, T,
                                  gfix.SamplePlan(seed=2, count=500))
    assert report.passed


def test_affine_scaling_identity():
    # G(Tx,Ty,Tz) = k G(x,y,z) exactly for affine maps about the origin
    for make in (gfix.make_perimeter_space, gfix.make_max_space):
        space = make(2).space
        T = gfix.make_affine_contraction((0.0, 0.0), 0.25)
        for triple in (((1.0, 2.0), (3.0, -4.0), (0.5, 0.0)),
                       ((-8.0, 1.0), (2.0, 2.0), (7.0, -7.0))):
            x, y, z = triple
            lhs = space.g(T.apply(x), T.apply(y), T.apply(z))
            assert lhs == pytest.approx(0.25 * space.g(x, y, z), rel=1e-12)


def test_sum_reduction_of_four_term():
    # equal displacement coefficients collapse the four-term rhs to sum
    T = gfix.make_affine_contraction((1.0,), 0.3)
    ft = four_term(0.2, 0.1, 0.1, 0.1)
    sm = ContractionSpec(ConditionKind.SUM, {"a": 0.2, "b": 0.1})
    for triple in (((0.0,), (2.0,), (5.0,)), ((-3.0,), (1.0,), (1.0,))):
        lhs = gfix.rhs_value(ft, SPACE1, T, *triple)
        rhs = gfix.rhs_value(sm, SPACE1, T, *triple)
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_sum_dominates_max_pointwise():
    T = gfix.make_affine_contraction((0.0,), 0.6)
    sm = ContractionSpec(ConditionKind.SUM, {"a": 0.2, "b": 0.1})
    mx = ContractionSpec(ConditionKind.MAX, {"a": 0.2, "b": 0.1})
    pts = gfix.sample_points(SPACE1, seed=4, count=30)
    for x, y, z in zip(pts, pts[10:], pts[20:]):
        assert (gfix.rhs_value(sm, SPACE1, T, x, y, z)
                >= gfix.rhs_value(mx, SPACE1, T, x, y, z) - 1e-12)


def test_alt_orientation_differs_from_primary():
    T = gfix.make_affine_contraction((0.0,), 0.5)
    ft = four_term(0.0, 1.0, 0.0, 0.0)
    alt = ContractionSpec(ConditionKind.FOUR_TERM_ALT,
                          {"a": 0.0, "b": 1.0, "c": 0.0, "d": 0.0})
    x, y, z = (4.0,), (1.0,), (2.0,)
    # perimeter dim 1: G(x,Tx,Tx) = 2|x-Tx| = G(x,x,Tx), so both agree here
    assert gfix.rhs_value(ft, SPACE1, T, x, y, z) == pytest.approx(
        gfix.rhs_value(alt, SPACE1, T, x, y, z))


# --- applicability ------------------------------------------------------------

def test_applicability_four_term_satisfied():
    verdict = gfix.check_applicability(four_term(0.2, 0.1, 0.3, 0.3))
    assert verdict.satisfied
    assert verdict.residuals["1-(a+3b)"] == pytest.approx(0.5)


def test_applicability_three_term_a_too_large():
    spec = ContractionSpec(ConditionKind.THREE_TERM,
                           {"a": 0.5, "b": 0.2, "c": 0.2})
    verdict = gfix.check_applicability(spec)
    assert not verdict.satisfied
    assert verdict.residuals["1/2-a"] == pytest.approx(0.0)


def test_applicability_k_sum_boundary_is_strict():
    spec = ContractionSpec(ConditionKind.K_SUM, {"k": 1.0 / 3.0})
    assert not gfix.check_applicability(spec).satisfied
    spec = ContractionSpec(ConditionKind.K_SUM, {"k": 0.2})
    assert gfix.check_applicability(spec).satisfied


def test_applicability_alt_kind_carries_note():
    spec = ContractionSpec(ConditionKind.FOUR_TERM_ALT,
                           {"a": 0.2, "b": 0.1, "c": 0.0, "d": 0.0})
    verdict = gfix.check_applicability(spec)
    assert verdict.satisfied
    assert verdict.note


# --- mapping constructors -------------------------------------------------------

def test_affine_contraction_values():
    T = gfix.make_affine_contraction((0.0,), 0.5)
    assert T.apply((8.0,)) == (4.0,)
    T = gfix.make_affine_contraction((1.0, 1.0), 0.0)
    assert T.apply((9.0, -3.0)) == (1.0, 1.0)
    T = gfix.make_affine_contraction((2.0,), 0.25)
    assert T.apply((10.0,)) == (4.0,)


def test_affine_fixed_point_only_for_contractions():
    assert gfix.make_affine_contraction((2.0,), 0.5).fixed_point == (2.0,)
    assert gfix.make_affine_contraction((2.0,), 1.0).fixed_point is None


def test_fixed_point_is_actually_fixed():
    T = gfix.make_affine_contraction((1.5, -2.0), 0.7)
    u = T.fixed_point
    space = gfix.make_perimeter_space(2).space
    assert space.g(T.apply(u), u, u) <= 1e-9


def test_translation_has_no_fixed_point():
    T = gfix.make_translation((1.0,))
    assert T.fixed_point is None
    assert T.apply((3.0,)) == (4.0,)
