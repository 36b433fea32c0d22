"""Positional rewriting of finite dilogarithm products, replayed with value checks.

A product is a list of (vector, exponent) pairs. Steps name their position
explicitly, so a script is a plain list that transcribes a proof chain:

    split 0 1        [n']^2c -> [n']^1 [n']^(2c-1)
    pentagon+ 1      [n']^c [n]^c -> [n]^c [n+n']^c [n']^c   ({n', n} c = 1)
    pentagon- 1      the reverse
    commute 3        swap a pair with {a, b} = 0
    merge 2          [n]^a [n]^b -> [n]^(a+b)
    drop 4           remove a factor of degree > D (identity modulo L_D)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .group import equals_mod, eval_product
from .lattice import DEFAULT_FORM, LatticeVector, SkewForm, check_cutoff, exact, vec
from .products import format_factors


class Kind(enum.Enum):
    PENTAGON_EXPAND = "pentagon+"
    PENTAGON_CONTRACT = "pentagon-"
    COMMUTE = "commute"
    MERGE_POW = "merge"
    SPLIT_POW = "split"
    DROP = "drop"


class RewriteError(ValueError):
    def __init__(self, message, index=None):
        super().__init__(message if index is None else f"step {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class RewriteStep:
    kind: Kind
    position: int
    aux: Optional[Fraction] = None

    def __post_init__(self):
        if self.position < 0:
            raise RewriteError(f"negative position {self.position}")
        if (self.kind is Kind.SPLIT_POW) != (self.aux is not None):
            raise RewriteError("split takes an exponent; no other step does")
        if self.aux is not None:
            object.__setattr__(self, "aux", exact(self.aux))

    def __str__(self):
        s = f"{self.kind.value} {self.position}"
        return s if self.aux is None else f"{s} {self.aux}"


def _need(factors, i, width):
    if i + width > len(factors):
        raise RewriteError(f"position {i} needs {width} factors, product has {len(factors)}")


def apply_step(factors, step: RewriteStep, form: SkewForm = DEFAULT_FORM, cutoff=None):
    """Rewrite ``factors`` by one step; raises RewriteError naming the failed side condition."""
    f = [(vec(n), exact(c)) for n, c in factors]
    i, k = step.position, step.kind
    if k is Kind.PENTAGON_EXPAND:
        _need(f, i, 2)
        (m, a), (n, b) = f[i], f[i + 1]
        if a != b:
            raise RewriteError(f"pentagon+ needs equal exponents, got {a} and {b}")
        if form(m, n) * a != 1:
            raise RewriteError(f"pentagon+ needs {{n', n}} * c = 1, got {form(m, n)} * {a}")
        return f[:i] + [(n, a), (n + m, a), (m, a)] + f[i + 2:]
    if k is Kind.PENTAGON_CONTRACT:
        _need(f, i, 3)
        (n, a), (s, b), (m, e) = f[i], f[i + 1], f[i + 2]
        if not a == b == e:
            raise RewriteError(f"pentagon- needs equal exponents, got {a}, {b}, {e}")
        if s != n + m:
            raise RewriteError(f"pentagon- needs the middle vector {s} to be {n + m}")
        if form(m, n) * a != 1:
            raise RewriteError(f"pentagon- needs {{n', n}} * c = 1, got {form(m, n)} * {a}")
        return f[:i] + [(m, a), (n, a)] + f[i + 3:]
    if k is Kind.COMMUTE:
        _need(f, i, 2)
        (m, a), (n, b) = f[i], f[i + 1]
        if form(m, n) != 0:
            raise RewriteError(f"commute needs {{a, b}} = 0, got {form(m, n)} for {list(m)}, {list(n)}")
        return f[:i] + [(n, b), (m, a)] + f[i + 2:]
    if k is Kind.MERGE_POW:
        _need(f, i, 2)
        (m, a), (n, b) = f[i], f[i + 1]
        if m != n:
            raise RewriteError(f"merge needs equal vectors, got {list(m)} and {list(n)}")
        return f[:i] + [(m, a + b)] + f[i + 2:]
    if k is Kind.SPLIT_POW:
        _need(f, i, 1)
        n, c = f[i]
        return f[:i] + [(n, step.aux), (n, c - step.aux)] + f[i + 1:]
    if k is Kind.DROP:
        _need(f, i, 1)
        if cutoff is None:
            raise RewriteError("drop needs a truncation degree")
        if f[i][0].degree <= cutoff:
            raise RewriteError(f"drop needs degree > {cutoff}, {list(f[i][0])} has degree {f[i][0].degree}")
        return f[:i] + f[i + 1:]
    raise RewriteError(f"unknown step kind {k}")


@dataclass(frozen=True)
class Trace:
    products: List[list]
    script: List[RewriteStep]
    cutoff: int

    @property
    def final(self):
        return self.products[-1]

    def to_json(self):
        return {
            "status": "pass",
            "degree": self.cutoff,
            "initial": format_factors(self.products[0]),
            "steps": [
                {"index": i, "step": str(s), "product": format_factors(p)}
                for i, (s, p) in enumerate(zip(self.script, self.products[1:]))
            ],
            "final": format_factors(self.final),
        }


def replay(script, initial, cutoff=10, form: SkewForm = DEFAULT_FORM, check_values=True) -> Trace:
    """Apply the steps in order; every intermediate is compared with the initial value mod L_D."""
    D = check_cutoff(cutoff)
    cur = [(vec(n), exact(c)) for n, c in initial]
    products = [cur]
    ref = eval_product(cur, D, form) if check_values else None
    for idx, step in enumerate(script):
        try:
            cur = apply_step(cur, step, form, D)
        except RewriteError as e:
            raise RewriteError(str(e), idx) from None
        if check_values:
            cmp = equals_mod(ref, eval_product(cur, D, form))
            if not cmp.equal:
                raise RewriteError(
                    f"value changed at {list(cmp.point)} by {cmp.coefficient} after '{step}'", idx
                )
        products.append(cur)
    return Trace(products, list(script), D)


def invert_script(script, initial, form: SkewForm = DEFAULT_FORM, cutoff=None):
    """The script that walks the replay of ``script`` backwards, from its final product to ``initial``."""
    cur = [(vec(n), exact(c)) for n, c in initial]
    inverse = []
    for step in script:
        k, i = step.kind, step.position
        if k is Kind.PENTAGON_EXPAND:
            inv = RewriteStep(Kind.PENTAGON_CONTRACT, i)
        elif k is Kind.PENTAGON_CONTRACT:
            inv = RewriteStep(Kind.PENTAGON_EXPAND, i)
        elif k is Kind.COMMUTE:
            inv = step
        elif k is Kind.SPLIT_POW:
            inv = RewriteStep(Kind.MERGE_POW, i)
        elif k is Kind.MERGE_POW:
            inv = RewriteStep(Kind.SPLIT_POW, i, cur[i][1])
        else:
            raise RewriteError(f"'{step}' has no inverse")
        cur = apply_step(cur, step, form, cutoff)
        inverse.append(inv)
    inverse.reverse()
    return inverse


def _parse_step(text):
    parts = text.split()
    kinds = {k.value: k for k in Kind}
    if not parts or parts[0] not in kinds:
        raise RewriteError(f"unknown step {text!r}; expected one of {', '.join(kinds)}")
    kind = kinds[parts[0]]
    want = 3 if kind is Kind.SPLIT_POW else 2
    if len(parts) != want:
        raise RewriteError(f"{parts[0]} takes {want - 1} argument(s): {text!r}")
    if kind is Kind.SPLIT_POW and any(ch in parts[2].lower() for ch in ".e"):
        raise RewriteError(f"decimals are not accepted, write a fraction: {text!r}")
    try:
        pos = int(parts[1])
        aux = Fraction(parts[2]) if kind is Kind.SPLIT_POW else None
    except (ValueError, ZeroDivisionError):
        raise RewriteError(f"bad step arguments in {text!r}") from None
    return RewriteStep(kind, pos, aux)


@dataclass
class ScriptFile:
    steps: List[RewriteStep]
    initial: Optional[str] = None  # DSL text
    target: Optional[str] = None


def parse_script(text) -> ScriptFile:
    """Line-oriented scripts; '#' starts a comment, ``initial``/``target`` lines carry DSL products."""
    out = ScriptFile([])
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head in ("initial", "target"):
            setattr(out, head, rest.strip())
            continue
        try:
            out.steps.append(_parse_step(line))
        except RewriteError as e:
            raise RewriteError(f"line {lineno}: {e}") from None
    return out


def format_script(steps, initial=None, target=None) -> str:
    lines = []
    if initial is not None:
        lines.append(f"initial {initial}")
    if target is not None:
        lines.append(f"target {target}")
    lines.extend(str(s) for s in steps)
    return "\n".join(lines) + "\n"


def _b2_chain(c):
    # [n']^2c [n]^c = [n']^c [n']^c [n]^c = [n']^c [n]^c [n+n']^c [n']^c
    #   = [n]^c [n+n']^c [n']^c [n+n']^c [n']^c = [n]^c [n+n']^2c [n+2n']^c [n']^2c
    return [
        RewriteStep(Kind.SPLIT_POW, 0, c),
        RewriteStep(Kind.PENTAGON_EXPAND, 1),
        RewriteStep(Kind.PENTAGON_EXPAND, 0),
        RewriteStep(Kind.PENTAGON_EXPAND, 2),
        RewriteStep(Kind.MERGE_POW, 1),
        RewriteStep(Kind.MERGE_POW, 3),
    ]


def scripted_lemma(id, c=1):
    """Hard-coded proof chains, for the scale c.

    ``b2`` is the doubled-pentagon chain: three pentagon moves take
    [n']^2c [n]^c to [n]^c [n+n']^2c [n+2n']^c [n']^2c. ``B2`` is its formal
    inverse, walking from that end back to the start.
    """
    c = Fraction(c)
    if id == "b2":
        return _b2_chain(c)
    if id == "B2":
        n, m = LatticeVector(1, 0), LatticeVector(0, 1)
        # any instance will do; the inverse only depends on exponents and positions
        form = SkewForm(-1 / c)
        return invert_script(_b2_chain(c), [(m, 2 * c), (n, c)], form)
    raise RewriteError(f"no scripted proof for {id!r}")
