"""Consistent rank-2 scattering diagrams by order-by-order completion.

Given anti-ordered initial walls, find ray elements (one Lie series per
primitive direction, supported on its multiples) whose product taken from the
e1 side to the e2 side equals the product of the initial walls in G_{L_D}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict

from .group import GroupElement, equals_mod, eval_product, identity, lowest_discrepancy, mul, ray_action
from .lattice import DEFAULT_FORM, LatticeVector, SkewForm, check_cutoff, is_anti_ordered, vec
from .lie import LieSeries, dilog_series
from .lie import to_json as lie_json
from .products import ProductExpr, format_factors, from_factors


class ScatteringError(ValueError):
    pass


@dataclass(frozen=True)
class ScatteringDiagram:
    cutoff: int
    form: SkewForm
    rays: Dict[LatticeVector, LieSeries] = field(default_factory=dict)
    incoming: ProductExpr = ProductExpr()

    def __post_init__(self):
        object.__setattr__(self, "rays", {vec(p): X for p, X in self.rays.items()})
        for p, X in self.rays.items():
            if not p.is_primitive():
                raise ScatteringError(f"ray key {p} is not primitive")
            if any(n.primitive() != p for n in X.support()):
                raise ScatteringError(f"ray {p} carries terms off its direction")

    def directions(self):
        """Primitive directions with nonzero elements, from the e1 side to the e2 side."""
        return sorted((p for p, X in self.rays.items() if X), key=lambda p: p.slope)

    def ordered_product(self, D=None) -> GroupElement:
        D = self.cutoff if D is None else D
        g = identity(D, self.form)
        for p in self.directions():
            g = mul(g, ray_action(self.rays[p].truncate(D)))
        return g

    def to_json(self):
        return {
            "lambda": str(self.form.lam),
            "cutoff": self.cutoff,
            "incoming": [{"n": [n[0], n[1]], "c": str(c)} for n, c in self.incoming.expand(self.cutoff)],
            "rays": [{"primitive": [p[0], p[1]], "series": lie_json(self.rays[p])} for p in self.directions()],
        }


def _add_to_ray(rays, n, coeff, D, form):
    p = n.primitive()
    X = rays.get(p) or LieSeries.zero(D, form)
    rays[p] = X + LieSeries.generator(n, coeff, D, form)


def complete(initial, cutoff=12, form: SkewForm = DEFAULT_FORM) -> ScatteringDiagram:
    """The consistent diagram with the given incoming walls, modulo degree > cutoff.

    At degree d the rays already agree with the target below d, so the
    lowest-degree part of log(target) - log(current) is central modulo
    degree > d and can be added to the ray through each of its points.
    """
    D = check_cutoff(cutoff)
    if not isinstance(initial, ProductExpr):
        initial = from_factors(initial)
    factors = initial.expand(D)
    if factors and not is_anti_ordered([n for n, _ in factors]):
        raise ScatteringError(f"incoming walls are not anti-ordered: {format_factors(factors)}")
    rays: Dict[LatticeVector, LieSeries] = {}
    if form.lam == 0:
        for n, c in factors:
            p = n.primitive()
            rays[p] = (rays.get(p) or LieSeries.zero(D, form)) + dilog_series(n, c, D, form)
        return ScatteringDiagram(D, form, {p: X for p, X in rays.items() if X}, initial)

    target = eval_product(factors, D, form)
    for d in range(1, D + 1):
        current = ScatteringDiagram(D, form, rays).ordered_product(d)
        deg, disc = lowest_discrepancy(target.truncate(d), current)
        if deg is None:
            continue
        if deg != d:
            raise ScatteringError(f"completion lost agreement below degree {d} (found {deg})")
        for n, coeff in disc.items():
            _add_to_ray(rays, n, coeff, D, form)
    return ScatteringDiagram(D, form, {p: X for p, X in rays.items() if X}, initial)


def ray_element(diagram: ScatteringDiagram, direction) -> LieSeries:
    p = vec(direction).primitive()
    return diagram.rays.get(p) or LieSeries.zero(diagram.cutoff, diagram.form)


def check_consistency(diagram: ScatteringDiagram):
    """Compare the slope-ordered ray product with the incoming walls."""
    return equals_mod(
        eval_product(diagram.incoming, diagram.cutoff, diagram.form),
        diagram.ordered_product(),
    )


def ray_closed_form(factors, cutoff, form=DEFAULT_FORM) -> Dict[LatticeVector, LieSeries]:
    """Per-ray log series of an ordered factor list: parallel factors simply add."""
    out: Dict[LatticeVector, LieSeries] = {}
    for n, c in factors:
        p = vec(n).primitive()
        out[p] = (out.get(p) or LieSeries.zero(cutoff, form)) + dilog_series(n, Fraction(c), cutoff, form)
    return {p: X for p, X in out.items() if X}
