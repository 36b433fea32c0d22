"""Symbolic products of dilogarithm factors [n]^c, finite or indexed families.

A family ``fam p in 0.. { [1+p,p]^2 }`` stands for the arrow product
[1,0]^2 [2,1]^2 [3,2]^2 ...; ``famrev`` runs the index downwards. Vector
coordinates are affine in ``p`` and ``2^p`` and exponents are ``r`` or
``r / 2^p``, which covers every product shape in the affine identities.
Truncation at degree D turns every family into a finite list, since each
body vector has strictly increasing degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .lattice import LatticeError, LatticeVector, exact, vec


class ProductError(ValueError):
    pass


@dataclass(frozen=True)
class Factor:
    vector: LatticeVector
    exponent: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "vector", vec(self.vector))
        object.__setattr__(self, "exponent", exact(self.exponent))


# one coordinate: const + lin*p + pow2*2^p
Affine = Tuple[int, int, int]


@dataclass(frozen=True)
class FamilyTerm:
    coords: Tuple[Affine, Affine]
    coeff: Fraction = Fraction(1)
    halving: bool = False  # exponent is coeff / 2^p when set

    def __post_init__(self):
        coords = tuple(tuple(int(x) for x in c) for c in self.coords)
        if len(coords) != 2 or any(len(c) != 3 for c in coords):
            raise ProductError("family coordinates must be two (const, p, 2^p) triples")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "coeff", exact(self.coeff))
        object.__setattr__(self, "halving", bool(self.halving))

    def raw_vector(self, p):
        return tuple(c + l * p + t * 2**p for c, l, t in self.coords)

    def vector(self, p) -> LatticeVector:
        try:
            return LatticeVector(*self.raw_vector(p))
        except LatticeError as e:
            raise ProductError(f"family term leaves N+ at index {p}: {e}") from None

    def exponent(self, p) -> Fraction:
        return self.coeff / 2**p if self.halving else self.coeff

    def degree(self, p) -> int:
        return sum(self.raw_vector(p))

    def negated(self) -> FamilyTerm:
        return FamilyTerm(self.coords, -self.coeff, self.halving)


@dataclass(frozen=True)
class Family:
    var: str
    start: int
    stop: Optional[int]  # inclusive; None for an infinite family
    body: Tuple[FamilyTerm, ...]
    reverse: bool = False

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))
        if not self.body:
            raise ProductError("family body is empty")
        if self.stop is not None and self.stop < self.start:
            raise ProductError(f"empty index range {self.start}..{self.stop}")
        self.validate()

    def validate(self):
        for term in self.body:
            # strictly increasing degree: step = lin + pow2 * 2^p, both summed over coordinates
            lin = sum(c[1] for c in term.coords)
            pw = sum(c[2] for c in term.coords)
            if any(c[1] < 0 or c[2] < 0 for c in term.coords) or lin + pw * 2**self.start <= 0:
                raise ProductError(
                    f"family term {format_term(term, self.var)} does not have strictly increasing degree"
                )
            term.vector(self.start)
            if self.stop is not None:
                for p in range(self.start, self.stop + 1):
                    term.vector(p)

    def blocks(self, D: int):
        """Index blocks [(p, [Factor...]), ...] in product order, factors of degree > D dropped."""
        out = []
        p = self.start
        while self.stop is None or p <= self.stop:
            if all(t.degree(p) > D for t in self.body):
                break
            fs = [Factor(t.vector(p), t.exponent(p)) for t in self.body if t.degree(p) <= D]
            out.append((p, fs))
            p += 1
        if self.reverse:
            out.reverse()
        return out


Item = Union[Factor, Family]


@dataclass(frozen=True)
class ProductExpr:
    items: Tuple[Item, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def expand(self, D: int):
        """Finite factor list [(vector, exponent)] of everything with degree <= D.

        Factors of degree > D lie in the cutoff ideal and are the identity there.
        """
        out = []
        for it in self.items:
            if isinstance(it, Factor):
                if it.vector.degree <= D and it.exponent:
                    out.append((it.vector, it.exponent))
            else:
                for _, fs in it.blocks(D):
                    out.extend((f.vector, f.exponent) for f in fs if f.exponent)
        return out

    def is_finite(self):
        return all(isinstance(it, Factor) or it.stop is not None for it in self.items)

    def __add__(self, other):
        return ProductExpr(self.items + other.items)

    def __str__(self):
        return format_expr(self)


def explicit(*pairs) -> ProductExpr:
    """ProductExpr from (vector, exponent) pairs, e.g. explicit(((0,1), 1), ((1,0), 1))."""
    return ProductExpr(tuple(Factor(vec(n), c) for n, c in pairs))


def from_factors(factors) -> ProductExpr:
    return ProductExpr(tuple(Factor(n, c) for n, c in factors))


def affine(n0, step=(0, 0), pow2=(0, 0)):
    """Family coordinates n0 + p*step + 2^p*pow2 for lattice vectors n0, step, pow2."""
    return ((n0[0], step[0], pow2[0]), (n0[1], step[1], pow2[1]))


def invert_expr(expr: ProductExpr) -> ProductExpr:
    """Formal inverse: reverse the order and negate every exponent."""
    items = []
    for it in reversed(expr.items):
        if isinstance(it, Factor):
            items.append(Factor(it.vector, -it.exponent))
        else:
            body = tuple(t.negated() for t in reversed(it.body))
            items.append(Family(it.var, it.start, it.stop, body, not it.reverse))
    return ProductExpr(tuple(items))


def canonical_factors(factors):
    """Merge equal adjacent vectors and sort runs of parallel vectors by degree.

    Parallel dilogarithm factors commute, so this keeps the group value; two
    ordered products with the same value have the same canonical form.
    """
    from .lattice import cross

    runs = []
    for n, c in factors:
        if runs and cross(runs[-1][-1][0], n) == 0:
            runs[-1].append((n, c))
        else:
            runs.append([(n, c)])
    out = []
    for run in runs:
        acc = {}
        for n, c in run:
            acc[n] = acc.get(n, 0) + c
        out.extend((n, Fraction(acc[n])) for n in sorted(acc, key=lambda v: v[0] + v[1]) if acc[n])
    return out


# ---------------------------------------------------------------- printing


def format_rational(r: Fraction) -> str:
    return str(Fraction(r))


def format_pow(coeff: Fraction, halving: bool = False, var: str = "p") -> str:
    if halving:
        return f"^({format_rational(coeff)}/2^{var})"
    if coeff == 1:
        return ""
    if coeff.denominator == 1 and coeff > 0:
        return f"^{coeff.numerator}"
    return f"^({format_rational(coeff)})"


def format_affine(c: Affine, var: str) -> str:
    const, lin, pw = c
    parts = []
    if const or (not lin and not pw):
        parts.append(str(const))
    for k, sym in ((lin, var), (pw, f"2^{var}")):
        if not k:
            continue
        body = sym if abs(k) == 1 else (f"{abs(k)}{sym}" if sym == var else f"{abs(k)}*{sym}")
        parts.append(("-" if k < 0 else "+") + body)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def format_term(term: FamilyTerm, var: str) -> str:
    a, b = (format_affine(c, var) for c in term.coords)
    return f"[{a},{b}]" + format_pow(term.coeff, term.halving, var)


def format_item(it: Item) -> str:
    if isinstance(it, Factor):
        return f"[{it.vector[0]},{it.vector[1]}]" + format_pow(it.exponent)
    kw = "famrev" if it.reverse else "fam"
    stop = "" if it.stop is None else str(it.stop)
    body = " ".join(format_term(t, it.var) for t in it.body)
    return f"{kw} {it.var} in {it.start}..{stop} {{ {body} }}"


def format_expr(expr: ProductExpr) -> str:
    return " ".join(format_item(it) for it in expr.items)


def format_factors(factors) -> str:
    return " ".join(f"[{n[0]},{n[1]}]" + format_pow(Fraction(c)) for n, c in factors)


def to_json(expr: ProductExpr):
    out = []
    for it in expr.items:
        if isinstance(it, Factor):
            out.append({"factor": [it.vector[0], it.vector[1]], "exponent": str(it.exponent)})
        else:
            out.append({
                "family": "backward" if it.reverse else "forward",
                "index": it.var,
                "start": it.start,
                "stop": it.stop,
                "body": [
                    {"coords": [list(c) for c in t.coords], "coeff": str(t.coeff), "halving": t.halving}
                    for t in it.body
                ],
            })
    return out
