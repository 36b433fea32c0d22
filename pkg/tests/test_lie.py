from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rank2scatter import lie
from rank2scatter.lattice import E1, E2, SkewForm
from rank2scatter.lie import LieSeries, MismatchError, bracket, dilog_series

from strategies import forms, lie_series, vectors

F = SkewForm(-1)


def X(n, c=1, D=6, form=F):
    return LieSeries.generator(n, c, D, form)


def test_structure_constant():
    # [X_e1, X_e2] = {e1, e2} X_(1,1) = lam X_(1,1)
    assert bracket(X(E1), X(E2)) == X((1, 1), -1)
    assert bracket(X(E1, form=SkewForm(3)), X(E2, form=SkewForm(3))) == X((1, 1), 3, form=SkewForm(3))


def test_parallel_generators_commute():
    assert not bracket(X((1, 1)), X((2, 2)))


def test_bracket_respects_cutoff():
    assert not bracket(X((2, 1), D=3), X((0, 1), D=3))


def test_canonical_terms():
    s = LieSeries({(1, 0): Fraction(1, 2), (0, 1): 0, (5, 5): 3}, 4)
    assert dict(s.terms) == {(1, 0): Fraction(1, 2)}
    assert s == LieSeries({(1, 0): Fraction(2, 4)}, 4)
    assert s - s == LieSeries.zero(4)


def test_mismatch():
    with pytest.raises(MismatchError):
        X(E1, D=3) + X(E1, D=4)
    with pytest.raises(MismatchError):
        bracket(X(E1), X(E2, form=SkewForm(1)))


def test_dilog_series_coefficients():
    s = dilog_series((1, 0), 2, cutoff=4)
    assert dict(s.terms) == {(1, 0): 2, (2, 0): Fraction(-1, 2), (3, 0): Fraction(2, 9), (4, 0): Fraction(-1, 8)}
    assert dilog_series((2, 1), 1, cutoff=5).support() == [(2, 1)]
    assert not dilog_series(E1, 0, 5)


@settings(max_examples=200, deadline=None)
@given(forms.flatmap(lambda f: st.tuples(*(lie_series(6, f) for _ in range(3)))))
def test_jacobi_and_antisymmetry(xyz):
    x, y, z = xyz
    assert bracket(x, y) == -bracket(y, x)
    assert not bracket(x, x)
    jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert not jac


@settings(max_examples=100, deadline=None)
@given(forms.flatmap(lambda f: st.tuples(*(lie_series(5, f) for _ in range(3)))), st.fractions(max_denominator=5))
def test_bracket_bilinear(xyz, a):
    x, y, z = xyz
    assert bracket(lie.combine(a, x, 1, y), z) == lie.combine(a, bracket(x, z), 1, bracket(y, z))


@settings(max_examples=100, deadline=None)
@given(forms.flatmap(lambda f: st.lists(lie_series(5, f), min_size=6, max_size=6)))
def test_nilpotent(xs):
    # every generator has degree >= 1, so 6-fold brackets vanish at cutoff 5
    acc = xs[0]
    for y in xs[1:]:
        acc = bracket(acc, y)
    assert not acc


@given(forms.flatmap(lambda f: lie_series(8, f)))
def test_json_round_trip(x):
    assert lie.from_json(lie.to_json(x), x.form) == x


@given(vectors(6), st.integers(1, 8))
def test_truncate(n, D):
    s = dilog_series(n, 1, 8)
    t = s.truncate(D)
    assert t.cutoff == D
    assert all(m.degree <= D for m in t.support())
