"""Builders for both sides of every dilogarithm identity, plus a verifier.

Each builder takes (n, n', c[, l]) with {n', n} = 1/c and returns the two
sides as ProductExpr, families standing in for the infinite arrow products.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .group import Comparison, equals_mod, eval_product
from .lattice import DEFAULT_FORM, LatticeVector, SkewForm, check_cutoff, vec
from .products import Factor, Family, FamilyTerm, ProductExpr, affine, invert_expr

IDS = (
    "pentagon", "commute", "b2", "B2", "lem33", "lem34a", "lem34b", "thm31",
    "lem42", "lem43a", "lem43b", "thm41", "a11", "a22",
)
NEEDS_L = ("lem33", "lem42")
FIXED = {
    "a11": (LatticeVector(1, 0), LatticeVector(0, 1), Fraction(1)),
    "a22": (LatticeVector(0, 1), LatticeVector(1, 0), Fraction(-1)),
}


class ConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class IdentityParams:
    n: LatticeVector
    nprime: LatticeVector
    c: Fraction = Fraction(1)
    l: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "n", vec(self.n))
        object.__setattr__(self, "nprime", vec(self.nprime))
        object.__setattr__(self, "c", Fraction(self.c))

    def to_json(self):
        out = {"n": list(self.n), "nprime": list(self.nprime), "c": str(self.c)}
        if self.l is not None:
            out["l"] = self.l
        return out


@dataclass(frozen=True)
class IdentityInstance:
    id: str
    params: IdentityParams
    lhs: ProductExpr
    rhs: ProductExpr


def _f(n, c):
    return Factor(vec(n), c)


def _lin(a, b, n, m):
    return LatticeVector(a * n[0] + b * m[0], a * n[1] + b * m[1])


def _shifted(a, b, n, m):
    # a*n + b*m as a bare tuple; may leave N+ (family offsets like 2n - n')
    return (a * n[0] + b * m[0], a * n[1] + b * m[1])


def _fam(body, start=0, stop=None, reverse=False, var="p"):
    return Family(var, start, stop, tuple(body), reverse)


def _term(n0, step=(0, 0), pow2=(0, 0), coeff=1, halving=False):
    return FamilyTerm(affine(n0, step, pow2), coeff, halving)


def _P(*items):
    return ProductExpr(tuple(items))


def check_constraint(id, params: IdentityParams, form: SkewForm):
    s = form(params.nprime, params.n)
    if id == "commute":
        if s != 0:
            raise ConstraintError(f"commute needs {{n', n}} = 0, got {s}")
        return
    if id in FIXED:
        n, np_, c = FIXED[id]
        if (params.n, params.nprime, params.c) != (n, np_, c):
            raise ConstraintError(f"{id} is fixed at n={list(n)}, n'={list(np_)}, c={c}")
    if params.c == 0 or s * params.c != 1:
        raise ConstraintError(f"{{n', n}} = {s} but 1/c = {1 / params.c if params.c else 'inf'}")
    if id in NEEDS_L and (params.l is None or params.l < 0):
        raise ConstraintError(f"{id} needs a non-negative integer l")


def _sides(id, n, m, c, l):
    # m is n' throughout
    s = n + m
    if id == "pentagon":
        return _P(_f(m, c), _f(n, c)), _P(_f(n, c), _f(s, c), _f(m, c))
    if id == "commute":
        return _P(_f(m, c), _f(n, c)), _P(_f(n, c), _f(m, c))
    if id == "b2":
        return (_P(_f(m, c), _f(n, 2 * c)),
                _P(_f(n, 2 * c), _f(_lin(2, 1, n, m), c), _f(s, 2 * c), _f(m, c)))
    if id == "B2":
        return (_P(_f(m, 2 * c), _f(n, c)),
                _P(_f(n, c), _f(s, 2 * c), _f(_lin(1, 2, n, m), c), _f(m, 2 * c)))
    if id == "lem33":
        lhs = _P(_f(m, 2 * c), _fam([_term(n, 2 * m, coeff=c)], 0, l))
        rhs = _P(_f(n, c), _fam([_term(n, m, coeff=2 * c)], 1, 2 * l + 1),
                 _f(_lin(1, 2 * l + 2, n, m), c), _f(m, 2 * c))
        return lhs, rhs
    if id == "lem34a":
        return (_P(_f(m, 2 * c), _fam([_term(n, 2 * m, coeff=c)])),
                _P(_f(n, c), _fam([_term(n, m, coeff=2 * c)], 1), _f(m, 2 * c)))
    if id == "lem34b":
        return (_P(_fam([_term(m, 2 * n, coeff=c)], reverse=True), _f(n, 2 * c)),
                _P(_f(n, 2 * c), _fam([_term(m, n, coeff=2 * c)], 1, reverse=True), _f(m, c)))
    if id in ("thm31", "a11"):
        return (_P(_f(m, 2 * c), _f(n, 2 * c)),
                _P(_fam([_term(n, s, coeff=2 * c)]),
                   _fam([_term((0, 0), pow2=s, coeff=4 * c, halving=True)]),
                   _fam([_term(m, s, coeff=2 * c)], reverse=True)))
    if id == "lem42":
        lhs = _P(_f(m, c), _fam([_term(n, m, coeff=2 * c)], 0, l))
        rhs = [_f(n, 2 * c)]
        if l >= 1:
            rhs.append(_fam([_term(_shifted(2, -1, n, m), 2 * m, coeff=c),
                             _term(n, m, coeff=4 * c)], 1, l))
        rhs += [_f(_lin(2, 2 * l + 1, n, m), c), _f(_lin(1, l + 1, n, m), 2 * c), _f(m, c)]
        return lhs, _P(*rhs)
    if id == "lem43a":
        return (_P(_f(m, c), _fam([_term(n, m, coeff=2 * c)])),
                _P(_f(n, 2 * c),
                   _fam([_term(_shifted(2, -1, n, m), 2 * m, coeff=c), _term(n, m, coeff=4 * c)], 1),
                   _f(m, c)))
    if id == "lem43b":
        return (_P(_fam([_term(m, n, coeff=2 * c)], reverse=True), _f(n, c)),
                _P(_f(n, c),
                   _fam([_term(m, n, coeff=4 * c), _term(_shifted(2, -1, m, n), 2 * n, coeff=c)],
                        1, reverse=True),
                   _f(m, 2 * c)))
    if id == "thm41":
        t = _lin(2, 1, n, m)
        lhs = _P(_f(m, c), _f(n, 4 * c))
        rhs = _P(
            _fam([_term(n, _lin(2, 1, n, m), coeff=4 * c), _term(_lin(4, 1, n, m), _lin(4, 2, n, m), coeff=c)]),
            _f(t, 2 * c),
            _fam([_term((0, 0), pow2=t, coeff=4 * c, halving=True)]),
            _fam([_term(s, _lin(2, 1, n, m), coeff=4 * c), _term(m, _lin(4, 2, n, m), coeff=c)], reverse=True),
        )
        return lhs, rhs
    if id == "a22":
        # thm41 at n=(0,1), n'=(1,0), c=-1 with both sides inverted; the
        # center [1,2]^2 [1,2]^4 is printed merged as [1,2]^6.
        lhs = _P(_f((0, 1), 4), _f((1, 0), 1))
        rhs = _P(
            _fam([_term((1, 0), (2, 4), coeff=1), _term((1, 1), (1, 2), coeff=4)]),
            _f((1, 2), 6),
            _fam([_term((0, 0), pow2=(1, 2), coeff=4, halving=True)], 1),
            _fam([_term((1, 4), (2, 4), coeff=1), _term((0, 1), (1, 2), coeff=4)], reverse=True),
        )
        return lhs, rhs
    raise ConstraintError(f"unknown identity {id!r}; expected one of {', '.join(IDS)}")


def build(id, params: IdentityParams = None, cutoff=None, form: SkewForm = DEFAULT_FORM) -> IdentityInstance:
    """Both sides of identity ``id`` as displayed, after checking {n', n} = 1/c.

    ``cutoff`` is accepted for interface symmetry with :func:`verify`; the
    returned expressions are untruncated.
    """
    if id not in IDS:
        raise ConstraintError(f"unknown identity {id!r}; expected one of {', '.join(IDS)}")
    if params is None:
        if id not in FIXED:
            raise ConstraintError(f"{id} needs parameters n, n', c")
        params = IdentityParams(*FIXED[id])
    check_constraint(id, params, form)
    lhs, rhs = _sides(id, params.n, params.nprime, params.c, params.l)
    return IdentityInstance(id, params, lhs, rhs)


@dataclass(frozen=True)
class VerifyReport:
    id: str
    params: IdentityParams
    cutoff: int
    result: Comparison

    @property
    def passed(self):
        return self.result.equal

    def to_json(self):
        out = {"identity": self.id, "params": self.params.to_json(), "cutoff": self.cutoff}
        out.update(self.result.to_json())
        return out


def verify(id, params: IdentityParams = None, cutoff=12, form: SkewForm = DEFAULT_FORM) -> VerifyReport:
    D = check_cutoff(cutoff)
    inst = build(id, params, D, form)
    cmp = equals_mod(eval_product(inst.lhs, D, form), eval_product(inst.rhs, D, form))
    return VerifyReport(id, inst.params, D, cmp)


def _draw(rng, maxdeg):
    d = rng.randint(1, maxdeg)
    j = rng.randint(0, d)
    return LatticeVector(d - j, j)


def enumerate_random_instances(id, count, seed=0, form: SkewForm = DEFAULT_FORM, maxdeg=3, l=None):
    """Deterministic random parameters for ``id`` with {n', n} * c = 1.

    Vectors have degree <= maxdeg; skew-degenerate draws are skipped. For
    ``commute`` the pair is parallel and c is drawn from a small set.
    """
    if count <= 0:
        raise ValueError("count must be positive")
    if id in FIXED:
        return [IdentityParams(*FIXED[id])] * count
    rng = random.Random(f"{id}:{seed}")
    out = []
    while len(out) < count:
        if id == "commute":
            v = _draw(rng, maxdeg).primitive()
            kmax = maxdeg // v.degree
            n, m = v * rng.randint(1, kmax), v * rng.randint(1, kmax)
            c = rng.choice([Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-1), Fraction(3, 2)])
            out.append(IdentityParams(n, m, c))
            continue
        n, m = _draw(rng, maxdeg), _draw(rng, maxdeg)
        s = form(m, n)
        if s == 0:
            continue
        ll = (rng.randint(0, 4) if l is None else l) if id in NEEDS_L else None
        out.append(IdentityParams(n, m, 1 / s, ll))
    return out


def inverted_thm41_for_a22() -> ProductExpr:
    """RHS of thm41 at the a22 parameters, formally inverted (unmerged center)."""
    inst = build("thm41", IdentityParams(*FIXED["a22"]))
    return invert_expr(inst.rhs)
