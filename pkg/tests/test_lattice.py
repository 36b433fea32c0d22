from fractions import Fraction

import pytest
from hypothesis import given

from rank2scatter.lattice import (
    E1, E2, LatticeError, LatticeVector, ProductOrder, SkewForm, SlopeOrder, check_cutoff,
    classify_product, graded_key, in_ideal, is_anti_ordered, points_up_to, slope_order,
)

from strategies import forms, vectors


@pytest.mark.parametrize("bad", [(0, 0), (-1, 2), (3, -1)])
def test_rejects_points_outside_cone(bad):
    with pytest.raises(LatticeError):
        LatticeVector(*bad)


def test_rejects_bool_coordinates():
    with pytest.raises(LatticeError):
        LatticeVector(True, 0)


def test_basic_accessors():
    n = LatticeVector(4, 6)
    assert (n.a1, n.a2, n.degree) == (4, 6, 10)
    assert not n.is_primitive()
    assert n.primitive() == (2, 3)
    assert n.slope == Fraction(3, 5)
    assert str(n) == "[4,6]"
    assert n + E1 == (5, 6)
    assert 2 * E2 == (0, 2)


def test_default_form_value():
    assert SkewForm()(E1, E2) == -1
    assert SkewForm(3)(E2, E1) == -3


@given(forms, vectors(), vectors(), vectors())
def test_form_is_bilinear_and_skew(form, a, b, c):
    assert form(a, b) == -form(b, a)
    assert form(a, a) == 0
    assert form(a + b, c) == form(a, c) + form(b, c)


@given(vectors(), vectors())
def test_slope_order_matches_slope(a, b):
    o = slope_order(a, b)
    if a.slope < b.slope:
        assert o is SlopeOrder.PRECEDES
    elif a.slope > b.slope:
        assert o is SlopeOrder.FOLLOWS
    else:
        assert o is SlopeOrder.PARALLEL


def test_slope_order_examples():
    assert slope_order(E1, E2) is SlopeOrder.PRECEDES
    assert slope_order((1, 1), (2, 2)) is SlopeOrder.PARALLEL
    assert slope_order((1, 2), (2, 1)) is SlopeOrder.FOLLOWS


def test_classify_product():
    assert classify_product([E1, (1, 1), (2, 2), E2]) is ProductOrder.ORDERED
    assert classify_product([E2, E1]) is ProductOrder.ANTI_ORDERED
    assert classify_product([E1, E2, E1]) is ProductOrder.NEITHER
    assert is_anti_ordered([(0, 1), (0, 2), (1, 0)])
    with pytest.raises(LatticeError):
        classify_product([])


def test_ideal_and_cutoff():
    assert in_ideal((3, 2), 4) and not in_ideal((2, 2), 4)
    assert check_cutoff(3) == 3
    for bad in (0, -2, 1.5, True):
        with pytest.raises(LatticeError):
            check_cutoff(bad)


def test_points_up_to_is_graded():
    pts = points_up_to(3)
    assert len(pts) == 2 + 3 + 4
    assert pts[:3] == [E1, E2, (2, 0)]
    assert pts == sorted(pts, key=graded_key)


def test_floats_are_refused():
    from rank2scatter.group import dilog_element
    from rank2scatter.lie import LieSeries
    from rank2scatter.products import Factor
    from rank2scatter.rewrite import apply_step, Kind, RewriteStep

    for make in (lambda: SkewForm(0.5), lambda: LieSeries({E1: 0.25}, 3), lambda: dilog_element(E1, 0.5, 3),
                 lambda: Factor(E1, 1.0), lambda: apply_step([(E1, 0.5)], RewriteStep(Kind.SPLIT_POW, 0, 1))):
        with pytest.raises(TypeError, match="float"):
            make()
