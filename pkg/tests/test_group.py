from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rank2scatter import _series as S
from rank2scatter import group as G
from rank2scatter.lattice import E1, E2, LatticeVector, SkewForm, points_up_to
from rank2scatter.lie import LieSeries, MismatchError, bracket, dilog_series

from strategies import cutoffs, factor_lists, forms, lie_series, rationals, vectors

PROPS = settings(max_examples=200, deadline=None)
F = SkewForm(-1)


def elements(k, cutoff=cutoffs, max_terms=3):
    """k Lie series sharing one cutoff and form."""
    return st.tuples(cutoff, forms).flatmap(
        lambda cf: st.tuples(*(lie_series(cf[0], cf[1], max_terms) for _ in range(k)))
    )


def bch4(x, y):
    # BCH through degree 4 in brackets; exact when cutoff <= 4
    xy = bracket(x, y)
    return (x + y + xy.scale(Fraction(1, 2))
            + (bracket(x, xy) - bracket(y, xy)).scale(Fraction(1, 12))
            - bracket(y, bracket(x, xy)).scale(Fraction(1, 24)))


# ---- oracles


@PROPS
@given(elements(2, cutoff=st.integers(1, 4), max_terms=4))
def test_bch_matches_bracket_formula(xy):
    x, y = xy
    assert G.bch_product(x, y) == bch4(x, y)


@settings(max_examples=100, deadline=None)
@given(elements(1, cutoff=st.integers(1, 8)), st.dictionaries(vectors(4), rationals(), max_size=3),
       st.dictionaries(vectors(4), rationals(), max_size=3))
def test_action_is_ring_homomorphism(x, f, h):
    g = G.exp_action(x[0])
    D = g.cutoff
    f, h = S.truncate(S.clean(f), D), S.truncate(S.clean(h), D)
    assert g.act(S.mul(f, h, D)) == S.mul(g.act(f), g.act(h), D)


@PROPS
@given(cutoffs, forms, vectors(5), rationals())
def test_ray_action_matches_general_exp(D, form, n, c):
    X = dilog_series(n, c, D, form) + LieSeries.generator(n * 2, c, D, form)
    assert G.ray_action(X) == G.exp_action(X)


@PROPS
@given(elements(1), vectors(5), rationals())
def test_mul_dilog_matches_mul(x, n, c):
    g = G.exp_action(x[0])
    assert G.mul_dilog(g, n, c) == g * G.dilog_element(n, c, g.cutoff, g.form)


def test_dilog_closed_form_small_case():
    # [e1] at lam=-1: z^m -> z^m (1+x)^(-m2), so ux = 1 and uy = 1/(1+x)
    g = G.dilog_element(E1, 1, 3)
    assert dict(g.ux) == {(0, 0): 1}
    assert dict(g.uy) == {(0, 0): 1, (1, 0): -1, (2, 0): 1, (3, 0): -1}
    assert G.log(g) == dilog_series(E1, 1, 3)


# ---- group laws


@PROPS
@given(elements(1))
def test_exp_log_round_trip(x):
    (x,) = x
    g = G.exp_action(x)
    assert G.log(g) == x
    assert G.exp_action(G.log(g)) == g


@PROPS
@given(elements(3))
def test_associativity(xyz):
    a, b, c = (G.exp_action(x) for x in xyz)
    assert (a * b) * c == a * (b * c)


@PROPS
@given(elements(1))
def test_inverse(x):
    g = G.exp_action(x[0])
    e = G.identity(g.cutoff, g.form)
    assert g * G.inverse(g) == e
    assert G.inverse(g) * g == e
    assert G.inverse(G.inverse(g)) == g


@PROPS
@given(elements(1), rationals(), rationals())
def test_power_additive(x, a, b):
    g = G.exp_action(x[0])
    assert G.power(g, a) * G.power(g, b) == G.power(g, a + b)
    assert G.power(g, 1) == g


@PROPS
@given(elements(2))
def test_exp_is_homomorphism_on_commuting_pairs(xy):
    x, y = xy
    if bracket(x, y):
        y = x.scale(3)
    assert G.exp_action(x) * G.exp_action(y) == G.exp_action(x + y)


@PROPS
@given(cutoffs, forms, factor_lists())
def test_eval_product_is_left_to_right(D, form, factors):
    expect = G.identity(D, form)
    for n, c in factors:
        expect = expect * G.dilog_element(n, c, D, form)
    assert G.eval_product(factors, D, form) == expect


@given(elements(1), st.integers(1, 10))
def test_truncation_commutes_with_exp(x, D):
    (x,) = x
    D = min(D, x.cutoff)
    assert G.exp_action(x).truncate(D) == G.exp_action(x.truncate(D))


# ---- abelian case


@given(elements(2, max_terms=4).map(lambda xy: tuple(LieSeries(dict(v.terms), v.cutoff, SkewForm(0)) for v in xy)))
def test_lambda_zero_is_abelian(xy):
    x, y = xy
    g, h = G.exp_action(x), G.exp_action(y)
    assert g * h == h * g == G.exp_action(x + y)
    assert G.log(G.inverse(g)) == -x


# ---- comparison


def test_discrepancy_locates_perturbation():
    D = 6
    g = G.eval_product([((0, 1), 2), ((1, 0), 2)], D)
    h = G.eval_product([((1, 0), 2), ((1, 1), 4), ((0, 1), 2)], D)
    # h is the ordered side with the degree-3 factors [2,1]^2 [1,2]^2 left out
    cmp = G.equals_mod(g, h)
    assert not cmp.equal
    assert cmp.discrepancy == {(2, 1): 2, (1, 2): 2}
    assert cmp.to_json() == {"status": "fail", "ray": [2, 1], "degree": 3, "coefficient": "2"}


@PROPS
@given(elements(2))
def test_lowest_discrepancy_is_lowest_part_of_log_difference(xy):
    x, y = xy
    d, disc = G.lowest_discrepancy(G.exp_action(x), G.exp_action(y))
    diff = x - y
    assert d == diff.min_degree()
    if d is not None:
        assert disc == dict(diff.degree_part(d).terms)


def test_equal_elements_pass():
    g = G.dilog_element((1, 2), Fraction(1, 3), 7)
    assert G.equals_mod(g, G.exp_action(dilog_series((1, 2), Fraction(1, 3), 7))).to_json() == {"status": "pass"}


def test_mismatch_cutoffs():
    with pytest.raises(MismatchError):
        G.identity(3) * G.identity(4)


# ---- serialization


@given(elements(1))
def test_json_round_trip(x):
    g = G.exp_action(x[0])
    assert G.from_json(G.to_json(g)) == g


def test_from_json_rejects_non_image():
    bad = {"ux": [{"n": [0, 0], "coeff": "1"}, {"n": [1, 0], "coeff": "1"}],
           "uy": [{"n": [0, 0], "coeff": "1"}], "cutoff": 3, "lambda": "-1"}
    with pytest.raises(G.MalformedElementError):
        G.from_json(bad)


def test_constant_term_must_be_one():
    with pytest.raises(G.MalformedElementError):
        G.GroupElement({(0, 0): 2}, {(0, 0): 1}, 3)


def test_exp_univariate_stays_exact_across_gaps():
    # psi = t^2: the odd coefficients of exp vanish and must stay Fractions
    e = S.exp_univariate({2: Fraction(1)}, 6)
    assert e == [1, 0, 1, 0, Fraction(1, 2), 0, Fraction(1, 6)]
    assert all(type(v) is Fraction for v in e)


@PROPS
@given(cutoffs, forms, vectors(3), rationals(), rationals())
def test_ray_action_is_exact(D, form, n, a, b):
    X = LieSeries({n * 2: a, n * 3: b}, D, form)
    g = G.ray_action(X)
    assert all(type(v) is Fraction for v in list(g.ux.values()) + list(g.uy.values()))
    assert g == G.exp_action(X)
