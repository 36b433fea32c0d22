"""Truncated power series in z^(a,b) = x^a y^b with exact rational coefficients.

Series are plain dicts ``{(a, b): Fraction}`` with no zero entries; every
function takes the truncation degree ``D`` and returns a fresh dict. Nothing
here mutates its arguments.
"""

from fractions import Fraction

ONE = {(0, 0): Fraction(1)}


def clean(s):
    return {k: v for k, v in s.items() if v}


def truncate(s, D):
    return {k: v for k, v in s.items() if k[0] + k[1] <= D}


def add(a, b, alpha=1, beta=1):
    out = {k: alpha * v for k, v in a.items()} if alpha != 1 else dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + beta * v
    return clean(out)


def scale(s, c):
    if not c:
        return {}
    return {k: c * v for k, v in s.items()}


def shift(s, n, D):
    """Multiply by the monomial z^n."""
    return {(k[0] + n[0], k[1] + n[1]): v for k, v in s.items() if k[0] + k[1] + n[0] + n[1] <= D}


def _by_degree(s):
    return sorted(((k[0] + k[1], k, v) for k, v in s.items()), key=lambda t: t[0])


def mul(a, b, D):
    if len(a) > len(b):
        a, b = b, a
    bl = _by_degree(b)
    out = {}
    get = out.get
    for (a1, a2), va in a.items():
        lim = D - a1 - a2
        if lim < 0:
            continue
        for db, (b1, b2), vb in bl:
            if db > lim:
                break
            key = (a1 + b1, a2 + b2)
            out[key] = get(key, 0) + va * vb
    return clean(out)


def min_degree(s):
    return min((k[0] + k[1] for k in s), default=None)


def binomial_coefficients(alpha, kmax):
    """binom(alpha, k) for k = 0..kmax, alpha rational."""
    out = [Fraction(1)]
    for k in range(1, kmax + 1):
        out.append(out[-1] * (alpha - (k - 1)) / k)
    return out


def powers(w, kmax, D):
    """[1, w, w^2, ..., w^kmax] truncated at D; stops early once a power vanishes."""
    out = [dict(ONE)]
    for _ in range(kmax):
        nxt = mul(out[-1], w, D)
        if not nxt:
            break
        out.append(nxt)
    return out


def binomial_from_powers(alpha, wpows, D):
    """(1 + w)^alpha given the powers of w (w without constant term)."""
    coeffs = binomial_coefficients(alpha, len(wpows) - 1)
    out = {}
    for c, p in zip(coeffs, wpows):
        if not c:
            continue
        for k, v in p.items():
            out[k] = out.get(k, 0) + c * v
    return clean(out)


def unit_power(u, alpha, D):
    """u^alpha for a series with constant term 1, by the binomial series."""
    w = {k: v for k, v in u.items() if k != (0, 0)}
    md = min_degree(w)
    if md is None:
        return dict(ONE)
    return binomial_from_powers(Fraction(alpha), powers(w, D // md, D), D)


def inverse(u, D):
    return unit_power(u, -1, D)


def exp_univariate(psi, kmax):
    """exp(psi(t)) for a univariate series given as {k: coeff}, psi[0] == 0."""
    e = [Fraction(0)] * (kmax + 1)
    e[0] = Fraction(1)
    for k in range(1, kmax + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            pj = psi.get(j)
            if pj:
                acc += j * pj * e[k - j]
        e[k] = acc / k
    return e


class PowerTable:
    """Lazily computed products ``(x*ux)^a (y*uy)^b`` truncated at ``D``.

    Substituting x -> x*ux, y -> y*uy into a series f is then a linear
    combination of table entries, which is what the automorphism
    z^m -> z^m ux^m1 uy^m2 does to f.
    """

    def __init__(self, ux, uy, D):
        self.D = D
        self.ux = ux
        self.uy = uy
        self._table = {(0, 0): dict(ONE)}

    def entry(self, a, b):
        # ux^a uy^b truncated at D - a - b
        key = (a, b)
        t = self._table.get(key)
        if t is not None:
            return t
        lim = self.D - a - b
        if b > 0:
            t = mul(self.entry(a, b - 1), self.uy, lim)
        else:
            t = mul(self.entry(a - 1, 0), self.ux, lim)
        self._table[key] = t
        return t

    def apply(self, f):
        out = {}
        for (a, b), v in f.items():
            if a + b > self.D:
                continue
            for (c1, c2), w in self.entry(a, b).items():
                key = (a + c1, b + c2)
                out[key] = out.get(key, 0) + v * w
        return clean(out)
