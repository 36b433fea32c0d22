"""The truncated structure group G_L, L = {degree > D}.

An element g = exp(X) is stored as the ring automorphism it induces on the
truncated monoid ring k[x, y]: X_n acts as the derivation
z^m -> {n, m} z^(n+m), and exp of it sends z^m to z^m * ux^m1 * uy^m2. The
pair (ux, uy) determines X degree by degree because ({n, e1}, {n, e2}) is
never (0, 0) when lam != 0, so the representation is faithful on G_L.

For lam == 0 the action is trivial and the group is abelian; elements then
carry their log series directly and multiplication is addition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Optional

from . import _series as S
from .lattice import DEFAULT_FORM, E1, E2, LatticeVector, SkewForm, check_cutoff, exact, graded_key, vec
from .lie import LieSeries, MismatchError, combine, dilog_series
from .products import ProductExpr


class MalformedElementError(ValueError):
    """(ux, uy) is not the image of any Lie element."""


class GroupElement:
    __slots__ = ("cutoff", "form", "_ux", "_uy", "_log")

    def __init__(self, ux, uy, cutoff, form=DEFAULT_FORM):
        self.cutoff = check_cutoff(cutoff)
        self.form = form
        if form.lam == 0:
            raise ValueError("lam == 0 elements are built from log series; use exp_action")
        self._ux = S.clean(S.truncate({tuple(k): exact(v) for k, v in ux.items()}, self.cutoff))
        self._uy = S.clean(S.truncate({tuple(k): exact(v) for k, v in uy.items()}, self.cutoff))
        if self._ux.get((0, 0)) != 1 or self._uy.get((0, 0)) != 1:
            raise MalformedElementError("unit series must have constant term 1")
        self._log = None

    @classmethod
    def _raw(cls, ux, uy, cutoff, form):
        self = object.__new__(cls)
        self.cutoff, self.form, self._ux, self._uy, self._log = cutoff, form, ux, uy, None
        return self

    @classmethod
    def _abelian(cls, X: LieSeries):
        self = object.__new__(cls)
        self.cutoff, self.form, self._ux, self._uy, self._log = X.cutoff, X.form, None, None, X
        return self

    @property
    def abelian(self):
        return self.form.lam == 0

    @property
    def ux(self):
        return MappingProxyType(self._ux) if self._ux is not None else None

    @property
    def uy(self):
        return MappingProxyType(self._uy) if self._uy is not None else None

    def _check(self, other):
        if self.cutoff != other.cutoff or self.form != other.form:
            raise MismatchError(
                f"cutoff/form mismatch: ({self.cutoff}, {self.form.lam}) vs ({other.cutoff}, {other.form.lam})"
            )

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.cutoff != other.cutoff or self.form != other.form:
            return False
        if self.abelian:
            return self._log == other._log
        return self._ux == other._ux and self._uy == other._uy

    def __hash__(self):
        if self.abelian:
            return hash(self._log)
        return hash((self.cutoff, self.form, frozenset(self._ux.items()), frozenset(self._uy.items())))

    def __mul__(self, other):
        return mul(self, other)

    def __repr__(self):
        if self.abelian:
            return f"GroupElement(exp {self._log!r})"
        return f"GroupElement(cutoff={self.cutoff}, lam={self.form.lam}, |ux|={len(self._ux)}, |uy|={len(self._uy)})"

    def is_identity(self):
        if self.abelian:
            return not self._log
        return self._ux == S.ONE and self._uy == S.ONE

    def truncate(self, D):
        """Image under G_{L_cutoff} -> G_{L_D} for D <= cutoff."""
        D = check_cutoff(D)
        if D > self.cutoff:
            raise ValueError("cannot raise the cutoff of a truncated element")
        if self.abelian:
            return GroupElement._abelian(self._log.truncate(D))
        return GroupElement._raw(S.truncate(self._ux, D), S.truncate(self._uy, D), D, self.form)

    def act(self, f):
        """Apply the ring automorphism to a series {(a, b): coeff} (truncated at the cutoff)."""
        if self.abelian:
            return S.clean(S.truncate(dict(f), self.cutoff))
        return S.PowerTable(self._ux, self._uy, self.cutoff).apply(f)


def identity(cutoff=12, form=DEFAULT_FORM) -> GroupElement:
    cutoff = check_cutoff(cutoff)
    if form.lam == 0:
        return GroupElement._abelian(LieSeries.zero(cutoff, form))
    return GroupElement._raw(dict(S.ONE), dict(S.ONE), cutoff, form)


def _derivation_step(q, X: LieSeries, gen, D):
    # (X-hat)(z^gen * z^m) / z^gen for every monomial z^m of q
    lam = X.form.lam
    out = {}
    for (m1, m2), qv in q.items():
        dm = m1 + m2
        k1, k2 = m1 + gen[0], m2 + gen[1]
        for n, a in X._terms.items():
            if n[0] + n[1] + dm > D:
                continue
            cr = n[0] * k2 - n[1] * k1
            if cr:
                key = (n[0] + m1, n[1] + m2)
                out[key] = out.get(key, 0) + lam * cr * a * qv
    return S.clean(out)


def _exp_unit(X: LieSeries, gen):
    D = X.cutoff
    total = dict(S.ONE)
    term = dict(S.ONE)
    k = 1
    while True:
        term = S.scale(_derivation_step(term, X, gen, D), Fraction(1, k))
        if not term:
            return total
        total = S.add(total, term)
        k += 1


def exp_action(X: LieSeries) -> GroupElement:
    """exp of the derivation induced by X, returned as its (ux, uy)."""
    if X.form.lam == 0:
        return GroupElement._abelian(X)
    return GroupElement._raw(_exp_unit(X, E1), _exp_unit(X, E2), X.cutoff, X.form)


def ray_action(X: LieSeries) -> GroupElement:
    """exp_action for X supported on multiples of one primitive vector n0.

    Then X-hat z^m = {n0, m} z^m psi(z^n0) with psi(t) = sum k s_k t^k and
    psi(z^n0) is killed by X-hat, so ux = exp({n0, e1} psi) is a univariate
    exponential.
    """
    if X.form.lam == 0:
        return GroupElement._abelian(X)
    D = X.cutoff
    if not X:
        return identity(D, X.form)
    n0 = X.support()[0].primitive()
    psi = {}
    for n, s in X:
        if n.primitive() != n0:
            raise ValueError(f"{n} is not on the ray through {n0}")
        k = n[0] // n0[0] if n0[0] else n[1] // n0[1]
        psi[k] = k * s
    kmax = D // n0.degree
    units = []
    for gen in (E1, E2):
        w = X.form(n0, gen)
        e = S.exp_univariate({k: w * v for k, v in psi.items()}, kmax)
        units.append({(k * n0[0], k * n0[1]): v for k, v in enumerate(e) if v})
    return GroupElement._raw(units[0], units[1], D, X.form)


def _unit_log(g: GroupElement, gen, table):
    # log(rho)(z^gen)/z^gen = sum_k (-1)^(k+1)/k q_k with q_k = u * rho(q_{k-1}) - q_{k-1}, q_0 = 1
    D = g.cutoff
    u = g._ux if gen == E1 else g._uy
    q = dict(S.ONE)
    total = {}
    k = 1
    while True:
        q = S.add(S.mul(u, table.apply(q), D), q, 1, -1)
        if not q:
            return total
        total = S.add(total, q, 1, Fraction((-1) ** (k + 1), k))
        k += 1


def log(g: GroupElement) -> LieSeries:
    """The unique X with exp_action(X) == g."""
    if g.abelian:
        return g._log
    if g._log is not None:
        return g._log
    table = S.PowerTable(g._ux, g._uy, g.cutoff)
    lx = _unit_log(g, E1, table)
    ly = _unit_log(g, E2, table)
    form = g.form
    if lx.get((0, 0)) or ly.get((0, 0)):
        raise MalformedElementError("log has a constant term")
    terms = {}
    for key in set(lx) | set(ly):
        n = LatticeVector(*key)
        sx, sy = form(n, E1), form(n, E2)
        vx, vy = lx.get(key, 0), ly.get(key, 0)
        a = vx / sx if sx else vy / sy
        if a * sx != vx or a * sy != vy:
            raise MalformedElementError(f"inconsistent unit pair at {key}")
        terms[n] = a
    X = LieSeries._raw(terms, g.cutoff, form)
    g._log = X
    return X


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    """Group product, realized as composition rho(gh) = rho(g) o rho(h)."""
    g._check(h)
    if g.abelian:
        return GroupElement._abelian(g._log + h._log)
    D = g.cutoff
    table = S.PowerTable(g._ux, g._uy, D)
    ux = S.mul(g._ux, table.apply(h._ux), D)
    uy = S.mul(g._uy, table.apply(h._uy), D)
    return GroupElement._raw(ux, uy, D, g.form)


def inverse(g: GroupElement) -> GroupElement:
    return exp_action(-log(g))


def power(g: GroupElement, c) -> GroupElement:
    """g^c := exp(c log g)."""
    return exp_action(log(g).scale(exact(c)))


def bch_product(X: LieSeries, Y: LieSeries) -> LieSeries:
    """log(exp X exp Y), computed through the action; no coefficient table."""
    X._check(Y)
    return log(mul(exp_action(X), exp_action(Y)))


def _binomial_unit(n, alpha, D):
    # (1 + z^n)^alpha truncated at D
    if not alpha:
        return dict(S.ONE)
    coeffs = S.binomial_coefficients(Fraction(alpha), D // (n[0] + n[1]))
    return {(k * n[0], k * n[1]): c for k, c in enumerate(coeffs) if c}


def dilog_element(n, c=1, cutoff=12, form=DEFAULT_FORM) -> GroupElement:
    """[n]^c via z^m -> z^m (1 + z^n)^(c {n, m})."""
    n = vec(n)
    c = exact(c)
    D = check_cutoff(cutoff)
    if form.lam == 0:
        return GroupElement._abelian(dilog_series(n, c, D, form))
    return GroupElement._raw(_binomial_unit(n, c * form(n, E1), D), _binomial_unit(n, c * form(n, E2), D), D, form)


def mul_dilog(g: GroupElement, n, c) -> GroupElement:
    """g * [n]^c without building [n]^c's power table.

    rho(g) sends (1 + z^n)^a to (1 + W)^a with W = z^n gx^n1 gy^n2.
    """
    n = vec(n)
    c = exact(c)
    D = g.cutoff
    if n.degree > D or not c:
        return g
    if g.abelian:
        return GroupElement._abelian(g._log + dilog_series(n, c, D, g.form))
    ax, ay = c * g.form(n, E1), c * g.form(n, E2)
    lim = D - n.degree
    r = dict(S.ONE)
    for _ in range(n[0]):
        r = S.mul(r, g._ux, lim)
    for _ in range(n[1]):
        r = S.mul(r, g._uy, lim)
    W = S.shift(r, n, D)
    wp = S.powers(W, D // n.degree, D)
    ux = S.mul(g._ux, S.binomial_from_powers(ax, wp, D), D) if ax else g._ux
    uy = S.mul(g._uy, S.binomial_from_powers(ay, wp, D), D) if ay else g._uy
    return GroupElement._raw(ux, uy, D, g.form)


def eval_product(expr, cutoff=12, form=DEFAULT_FORM) -> GroupElement:
    """Left-to-right product of the dilogarithm factors of expr, modulo degree > cutoff.

    expr is a ProductExpr or an explicit list of (vector, exponent) pairs.
    """
    D = check_cutoff(cutoff)
    factors = expr.expand(D) if isinstance(expr, ProductExpr) else list(expr)
    g = identity(D, form)
    for n, c in factors:
        g = mul_dilog(g, n, c)
    return g


@dataclass(frozen=True)
class Comparison:
    """Outcome of comparing two elements of G_L.

    On failure ``point`` is the first lattice point (graded order) where
    log(g) - log(h) is nonzero and ``coefficient`` is that difference;
    ``discrepancy`` holds the whole lowest-degree part of the difference.
    """

    equal: bool
    degree: Optional[int] = None
    point: Optional[LatticeVector] = None
    coefficient: Optional[Fraction] = None
    discrepancy: dict = field(default_factory=dict)

    def __bool__(self):
        return self.equal

    def to_json(self):
        if self.equal:
            return {"status": "pass"}
        return {
            "status": "fail",
            "ray": [self.point[0], self.point[1]],
            "degree": self.degree,
            "coefficient": str(self.coefficient),
        }


def lowest_discrepancy(g: GroupElement, h: GroupElement):
    """(d, {n: coeff}) for the lowest-degree part of log(g) - log(h), or (None, {}).

    If g and h agree below degree d then log(g) - log(h) starts in degree d
    and its degree-d part is read off from ux, uy directly: the cross terms of
    the two exponentials only reach degree > d.
    """
    g._check(h)
    if g.abelian:
        diff = g._log - h._log
        d = diff.min_degree()
        return (d, dict(diff.degree_part(d))) if d is not None else (None, {})
    dx = S.add(g._ux, h._ux, 1, -1)
    dy = S.add(g._uy, h._uy, 1, -1)
    if not dx and not dy:
        return None, {}
    d = min(k[0] + k[1] for k in list(dx) + list(dy))
    out = {}
    for j in range(d + 1):
        n = LatticeVector(d - j, j)
        sx, sy = g.form(n, E1), g.form(n, E2)
        vx, vy = dx.get(tuple(n), 0), dy.get(tuple(n), 0)
        a = vx / sx if sx else vy / sy
        if a * sx != vx or a * sy != vy:
            raise MalformedElementError(f"inconsistent unit pair at {tuple(n)}")
        if a:
            out[n] = a
    return d, out


def equals_mod(g: GroupElement, h: GroupElement) -> Comparison:
    d, disc = lowest_discrepancy(g, h)
    if d is None:
        return Comparison(True)
    point = min(disc, key=graded_key)
    return Comparison(False, d, point, disc[point], disc)


def _terms_json(s):
    keys = sorted(s, key=lambda k: (k[0] + k[1], -k[0]))
    return [{"n": [k[0], k[1]], "coeff": str(s[k])} for k in keys]


def to_json(g: GroupElement) -> dict:
    if g.abelian:
        from .lie import to_json as lie_json

        return {"log": lie_json(g._log), "cutoff": g.cutoff, "lambda": str(g.form.lam)}
    return {"ux": _terms_json(g._ux), "uy": _terms_json(g._uy), "cutoff": g.cutoff, "lambda": str(g.form.lam)}


def from_json(obj) -> GroupElement:
    form = SkewForm(Fraction(obj["lambda"]))
    if "log" in obj:
        from .lie import from_json as lie_from_json

        return GroupElement._abelian(lie_from_json(obj["log"], form))
    ux = {tuple(t["n"]): Fraction(t["coeff"]) for t in obj["ux"]}
    uy = {tuple(t["n"]): Fraction(t["coeff"]) for t in obj["uy"]}
    g = GroupElement(ux, uy, obj["cutoff"], form)
    log(g)  # rejects pairs outside the image of exp
    return g
