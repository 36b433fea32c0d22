"""Replay a pentagon-rewrite proof and watch the product change shape.

    python demos/rewrite_replay.py [script] [D]

Without arguments it replays the scripted proof of the doubled pentagon and
then the generated truncated reduction for the A1(1) identity at degree 4.
"""

import pathlib
import sys

from rank2scatter import dsl
from rank2scatter.lattice import LatticeVector
from rank2scatter.products import format_factors
from rank2scatter.rewrite import parse_script, replay, scripted_lemma


def show(trace):
    print("   ", format_factors(trace.products[0]))
    for step, prod in zip(trace.script, trace.products[1:]):
        print(f"    {str(step):<13} {format_factors(prod)}")


e1, e2 = LatticeVector(1, 0), LatticeVector(0, 1)
print("doubled pentagon:")
show(replay(scripted_lemma("b2"), [(e2, 2), (e1, 1)], 8))

here = pathlib.Path(__file__).resolve().parent.parent
path = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else here / "tests" / "fixtures" / "a11_D4.script"
D = int(sys.argv[2]) if len(sys.argv) > 2 else 4
script = parse_script(path.read_text())
trace = replay(script.steps, dsl.parse(script.initial).expand(D), D)
print(f"\n{path.name}, {len(script.steps)} steps, every intermediate value-checked at D={D}:")
print("    start ", format_factors(trace.products[0]))
print("    end   ", format_factors(trace.final))
print("    target", script.target)
