"""Generate pentagon-rewrite scripts taking the affine left-hand sides to their
truncated ordered right-hand sides, for the fixtures in tests/fixtures/.

Bubble sort with pentagon moves: the first out-of-order adjacent pair
[n']^a [n]^b whose exponents are multiples of u = 1/{n', n} is split into
unit exponents and swapped by one pentagon move. Factors of degree > D are
dropped and equal neighbours merged.
Finally parallel runs are sorted by degree with commute steps.

    python tools/make_reduction_scripts.py [--max-degree 6] [--out tests/fixtures]
"""

import argparse
import pathlib
from fractions import Fraction

from rank2scatter import catalog, dsl
from rank2scatter.lattice import DEFAULT_FORM, SlopeOrder, slope_order
from rank2scatter.products import canonical_factors, format_factors
from rank2scatter.rewrite import Kind, RewriteStep, apply_step, format_script, replay


def _unit_split(left, right, form):
    (m, a), (n, b) = left, right
    u = 1 / form(m, n)
    return all((x / u).denominator == 1 and x / u >= 1 for x in (a, b))


def reduce_to_ordered(factors, D, form=DEFAULT_FORM, max_steps=100000):
    state = [(n, Fraction(c)) for n, c in factors]
    steps = []

    def do(step):
        nonlocal state
        state = apply_step(state, step, form, D)
        steps.append(step)

    while len(steps) < max_steps:
        i = next((i for i, (n, _) in enumerate(state) if n.degree > D), None)
        if i is not None:
            do(RewriteStep(Kind.DROP, i))
            continue
        i = next((i for i in range(len(state) - 1) if state[i][0] == state[i + 1][0]), None)
        if i is not None:
            do(RewriteStep(Kind.MERGE_POW, i))
            continue
        bad = [i for i in range(len(state) - 1)
               if slope_order(state[i][0], state[i + 1][0]) is SlopeOrder.FOLLOWS]
        i = next((i for i in bad if _unit_split(state[i], state[i + 1], form)), None)
        if bad and i is None:
            raise RuntimeError(f"no out-of-order pair splits into pentagon units: {format_factors(state)}")
        if i is not None:
            (m, a), (n, b) = state[i], state[i + 1]
            u = 1 / form(m, n)
            if a != u:
                do(RewriteStep(Kind.SPLIT_POW, i, a - u))
                i += 1
            if b != u:
                do(RewriteStep(Kind.SPLIT_POW, i + 1, u))
            do(RewriteStep(Kind.PENTAGON_EXPAND, i))
            continue
        i = next((i for i in range(len(state) - 1)
                  if slope_order(state[i][0], state[i + 1][0]) is SlopeOrder.PARALLEL
                  and state[i][0].degree > state[i + 1][0].degree), None)
        if i is not None:
            do(RewriteStep(Kind.COMMUTE, i))
            continue
        return steps, state
    raise RuntimeError("step budget exhausted")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-degree", type=int, default=6)
    ap.add_argument("--out", default="tests/fixtures")
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for id in ("a11", "a22"):
        inst = catalog.build(id)
        for D in range(1, args.max_degree + 1):
            lhs = inst.lhs.expand(D)
            steps, final = reduce_to_ordered(lhs, D)
            want = canonical_factors(inst.rhs.expand(D))
            assert final == want, (id, D, format_factors(final), format_factors(want))
            replay(steps, lhs, D)
            text = format_script(steps, dsl.to_text(inst.lhs), format_factors(want))
            header = f"# {id} truncated at degree {D}: {len(steps)} steps\n"
            (out / f"{id}_D{D}.script").write_text(header + text)
            print(id, D, len(steps))


if __name__ == "__main__":
    main()
