"""Knit the component of the trivial module over k[x,y]/(x^2, y^2) in characteristic 2."""

import sys

from arquiver.algebra import simple
from arquiver.artheory import knit, tree_class_report
from arquiver.catalog import kronecker, local_frobenius
from arquiver.exactcore import PrimeField

depth = int(sys.argv[1]) if len(sys.argv) > 1 else 3
alg = kronecker(PrimeField(2))
win = knit(simple(alg, "1"), local_frobenius(alg), depth)
for v in win.nodes:
    kind = "projective" if v in win.projective else "stable"
    print(f"node {v}: dim {win.rep(v).dim} ({kind}, distance {win.node_depth.get(v)})")
for (x, y), val in sorted(win.arrows().items()):
    print(f"  {x} -> {y} valuation {val}")
print("projective attachments:", win.attachments())
print("consistent tree classes:", tree_class_report(win)["classes"])
with open("kronecker_window.dot", "w") as fh:
    fh.write(win.to_dot())
print("wrote kronecker_window.dot")
