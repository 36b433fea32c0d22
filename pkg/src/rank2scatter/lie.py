"""The N+-graded Lie algebra with [X_n, X_m] = {n, m} X_{n+m}, truncated at degree D."""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType

from .lattice import DEFAULT_FORM, LatticeVector, SkewForm, check_cutoff, exact, graded_key, vec


class MismatchError(ValueError):
    """Operands carry different cutoffs or skew forms."""


class LieSeries:
    """A finite sum of c_n X_n with deg(n) <= cutoff.

    Terms are kept canonical (no zero coefficients, graded iteration order),
    so ``==`` is equality of elements of the truncated algebra.
    """

    __slots__ = ("cutoff", "form", "_terms")

    def __init__(self, terms=None, cutoff=12, form=DEFAULT_FORM):
        self.cutoff = check_cutoff(cutoff)
        self.form = form
        clean = {}
        for n, c in (terms or {}).items():
            n = vec(n)
            c = exact(c)
            if c and n.degree <= self.cutoff:
                clean[n] = clean.get(n, 0) + c
        self._terms = {n: clean[n] for n in sorted(clean, key=graded_key) if clean[n]}

    @classmethod
    def _raw(cls, terms, cutoff, form):
        # terms already canonical-ish: LatticeVector keys, Fractions, within cutoff
        self = object.__new__(cls)
        self.cutoff = cutoff
        self.form = form
        self._terms = {n: terms[n] for n in sorted(terms, key=graded_key) if terms[n]}
        return self

    @classmethod
    def zero(cls, cutoff=12, form=DEFAULT_FORM):
        return cls._raw({}, check_cutoff(cutoff), form)

    @classmethod
    def generator(cls, n, coeff=1, cutoff=12, form=DEFAULT_FORM):
        return cls({vec(n): coeff}, cutoff, form)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __getitem__(self, n):
        return self._terms.get(vec(n), Fraction(0))

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, LieSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self.form == other.form and self._terms == other._terms

    def __hash__(self):
        return hash((self.cutoff, self.form, tuple(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"LieSeries(0, cutoff={self.cutoff})"
        body = " + ".join(f"({c})X{list(n)}" for n, c in self._terms.items())
        return f"LieSeries({body}, cutoff={self.cutoff})"

    def _check(self, other):
        if self.cutoff != other.cutoff or self.form != other.form:
            raise MismatchError(
                f"cutoff/form mismatch: ({self.cutoff}, {self.form.lam}) vs ({other.cutoff}, {other.form.lam})"
            )

    def __add__(self, other):
        return combine(1, self, 1, other)

    def __sub__(self, other):
        return combine(1, self, -1, other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = exact(c)
        return LieSeries._raw({n: c * v for n, v in self._terms.items()}, self.cutoff, self.form) if c else self.zero(self.cutoff, self.form)

    __rmul__ = scale

    def degree_part(self, d):
        return LieSeries._raw({n: v for n, v in self._terms.items() if n.degree == d}, self.cutoff, self.form)

    def min_degree(self):
        return min((n.degree for n in self._terms), default=None)

    def truncate(self, D):
        D = check_cutoff(D)
        return LieSeries._raw({n: v for n, v in self._terms.items() if n.degree <= D}, D, self.form)

    def with_cutoff(self, D):
        """Re-truncate (or widen) the ambient cutoff; widening adds no terms."""
        return self.truncate(D)

    def support(self):
        return list(self._terms)


def combine(a, X: LieSeries, b, Y: LieSeries) -> LieSeries:
    X._check(Y)
    a, b = Fraction(a), Fraction(b)
    out = {}
    if a:
        for n, v in X._terms.items():
            out[n] = a * v
    if b:
        for n, v in Y._terms.items():
            out[n] = out.get(n, 0) + b * v
    return LieSeries._raw(out, X.cutoff, X.form)


def bracket(X: LieSeries, Y: LieSeries) -> LieSeries:
    X._check(Y)
    D = X.cutoff
    lam = X.form.lam
    out = {}
    for n, a in X._terms.items():
        dn = n.degree
        for m, b in Y._terms.items():
            if dn + m.degree > D:
                continue
            cr = n[0] * m[1] - n[1] * m[0]
            if cr:
                k = LatticeVector(n[0] + m[0], n[1] + m[1])
                out[k] = out.get(k, 0) + lam * cr * a * b
    return LieSeries._raw(out, D, X.form)


def dilog_coefficient(j: int) -> Fraction:
    """Coefficient (-1)^(j+1)/j^2 of X_{jn} in the dilogarithm log-series."""
    return Fraction((-1) ** (j + 1), j * j)


def dilog_series(n, c=1, cutoff=12, form=DEFAULT_FORM) -> LieSeries:
    """c * sum_{j>=1} (-1)^(j+1)/j^2 X_{jn}, truncated at the cutoff."""
    n = vec(n)
    c = exact(c)
    D = check_cutoff(cutoff)
    if not c:
        return LieSeries.zero(D, form)
    terms = {}
    j = 1
    while j * n.degree <= D:
        terms[n * j] = c * dilog_coefficient(j)
        j += 1
    return LieSeries._raw(terms, D, form)


def to_json(X: LieSeries) -> dict:
    return {
        "terms": [{"n": [n[0], n[1]], "coeff": str(c)} for n, c in X._terms.items()],
        "cutoff": X.cutoff,
    }


def from_json(obj, form=DEFAULT_FORM) -> LieSeries:
    terms = {}
    for t in obj["terms"]:
        n = vec(t["n"])
        terms[n] = terms.get(n, 0) + Fraction(t["coeff"])
    return LieSeries(terms, obj["cutoff"], form)
