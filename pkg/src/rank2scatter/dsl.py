"""Text syntax for dilogarithm products.

    product := item*
    item    := vector pow? | family
    vector  := '[' comp ',' comp ']'
    pow     := '^' rational | '^(' rational ('/' '2^' IDENT)? ')'
    family  := ('fam' | 'famrev') IDENT 'in' INT '..' INT? '{' (vector pow?)+ '}'

Outside a family the components are plain integers; inside they are affine
in the index and in 2^index (``1+p``, ``2p``, ``3*2^p``). Rationals are exact
(``3``, ``-1/2``); decimals are rejected. Example (the A1(1) right-hand side)::

    fam p in 0.. { [1+p,p]^2 } fam p in 0.. { [2^p,2^p]^(4/2^p) } famrev p in 0.. { [p,1+p]^2 }
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .lattice import LatticeError, LatticeVector
from .products import Factor, Family, FamilyTerm, ProductError, ProductExpr, format_expr


class DSLError(ValueError):
    def __init__(self, message, line=None, col=None):
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)
        self.line, self.col = line, col


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\s+|(?P<int>\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<dots>\.\.)|(?P<punct>[\[\],^(){}+\-*/])")


def tokenize(text):
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            ch = text[pos]
            hint = " (decimals are not accepted; write a fraction)" if ch == "." else ""
            raise DSLError(f"unexpected character {ch!r}{hint}", line, col)
        kind = m.lastgroup
        if kind is not None:
            tokens.append(Token(kind, m.group(), line, col))
        else:
            nl = m.group().count("\n")
            if nl:
                line += nl
                line_start = pos + m.group().rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return DSLError(msg, tok.line, tok.col)

    def at(self, text):
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text):
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def integer(self):
        if self.tok.kind != "int":
            raise self.error(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return int(t.text)

    def ident(self):
        if self.tok.kind != "ident":
            raise self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t.text

    # ---- grammar

    def product(self):
        items = []
        while self.tok.kind != "eof":
            items.append(self.item())
        return ProductExpr(tuple(items))

    def item(self):
        if self.tok.kind == "ident" and self.tok.text in ("fam", "famrev"):
            return self.family()
        if self.at("["):
            start = self.tok
            coords = self.vector(None)
            coeff, halving = self.pow(None)
            try:
                return Factor(LatticeVector(coords[0][0], coords[1][0]), coeff)
            except LatticeError as e:
                raise self.error(str(e), start) from None
        raise self.error(f"expected '[' or a family, found {self.tok.text!r}")

    def family(self):
        start_tok = self.tok
        reverse = self.ident() == "famrev"
        var = self.ident()
        if var in ("fam", "famrev", "in"):
            raise self.error(f"{var!r} cannot be an index name", self.toks[self.i - 1])
        in_tok = self.tok
        if self.ident() != "in":
            raise self.error("expected 'in'", in_tok)
        lo = self.signed_int()
        self.expect("..")
        hi = self.signed_int() if (self.tok.kind == "int" or self.at("-")) else None
        self.expect("{")
        body = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                raise self.error("unterminated family body, expected '}'")
            tok = self.tok
            coords = self.vector(var)
            coeff, halving = self.pow(var)
            body.append((tok, FamilyTerm(coords, coeff, halving)))
        self.expect("}")
        if not body:
            raise self.error("family body is empty", start_tok)
        try:
            return Family(var, lo, hi, tuple(t for _, t in body), reverse)
        except ProductError as e:
            raise self.error(str(e), start_tok) from None

    def signed_int(self):
        sign = -1 if self.at("-") else 1
        if sign < 0:
            self.i += 1
        return sign * self.integer()

    def vector(self, var):
        self.expect("[")
        a = self.component(var)
        self.expect(",")
        b = self.component(var)
        self.expect("]")
        return (a, b)

    def component(self, var):
        # returns (const, lin, pow2)
        acc = [0, 0, 0]
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        elif self.at("+"):
            self.i += 1
        while True:
            k, slot = self.cterm(var)
            acc[slot] += sign * k
            if self.at("+"):
                sign = 1
            elif self.at("-"):
                sign = -1
            else:
                break
            self.i += 1
        return tuple(acc)

    def cterm(self, var):
        tok = self.tok
        if tok.kind == "ident":
            self.i += 1
            return 1, self._var_slot(tok, var, 1)
        k = self.integer()
        if self.at("^"):  # 2^p
            if k != 2:
                raise self.error("only powers of 2 are allowed", tok)
            self.i += 1
            return 1, self._var_slot(self.tok, var, 2, advance=True)
        if self.at("*"):
            self.i += 1
        elif self.tok.kind != "ident":
            return k, 0
        t = self.tok
        if t.kind == "ident":
            self.i += 1
            return k, self._var_slot(t, var, 1)
        if t.kind == "int" and t.text == "2" and self.peek().text == "^":
            self.i += 2
            return k, self._var_slot(self.tok, var, 2, advance=True)
        raise self.error("expected the index or 2^index after '*'")

    def _var_slot(self, tok, var, slot, advance=False):
        if tok.kind != "ident":
            raise self.error(f"expected the index name, found {tok.text!r}", tok)
        if var is None:
            raise self.error(f"index {tok.text!r} used outside a family", tok)
        if tok.text != var:
            raise self.error(f"unknown index {tok.text!r} (family index is {var!r})", tok)
        if advance:
            self.i += 1
        return slot

    def rational(self):
        tok = self.tok
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        num = self.integer()
        den = 1
        if self.at("/") and not self._halving_ahead():
            self.i += 1
            dtok = self.tok
            den = self.integer()
            if den == 0:
                raise self.error("zero denominator", dtok)
        return Fraction(sign * num, den)

    def _halving_ahead(self):
        return self.peek().kind == "int" and self.peek().text == "2" and self.peek(2).text == "^"

    def pow(self, var):
        if not self.at("^"):
            return Fraction(1), False
        self.i += 1
        if self.at("("):
            self.i += 1
            r = self.rational()
            halving = False
            if self.at("/") and self._halving_ahead():
                self.i += 3
                self._var_slot(self.tok, var, 2, advance=True)
                halving = True
            self.expect(")")
            return r, halving
        return self.rational(), False


def parse(text) -> ProductExpr:
    """Parse product text into a ProductExpr (families validated for increasing degree)."""
    return _Parser(text).product()


def to_text(expr: ProductExpr) -> str:
    return format_expr(expr)


def parse_vector(text):
    """'1,0' or '[1,0]' -> LatticeVector."""
    s = text.strip().strip("[]")
    try:
        a, b = (int(x) for x in s.split(","))
        return LatticeVector(a, b)
    except (ValueError, LatticeError) as e:
        raise DSLError(f"bad lattice vector {text!r}: {e}") from None


def parse_rational(text) -> Fraction:
    if "." in text or "e" in text.lower():
        raise DSLError(f"decimals are not accepted: {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise DSLError(f"bad rational {text!r}: {e}") from None
