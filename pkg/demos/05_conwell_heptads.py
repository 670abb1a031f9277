"""Conwell heptads of the hyperbolic quadric III and their heptads of doilies."""
import itertools

from polartax import Doily, conwell_heptads, doily_heptad, pauli
from polartax.conwell import ConwellHeptad, triple_to_point

heptads = conwell_heptads(0)
for k, h in enumerate(heptads, 1):
    print(k, " ".join(h.labels()))

h = ConwellHeptad(tuple(pauli.parse_many("ZYX,YIX,YZZ,XYX,IYZ,YXZ,IIY")), 0)
print("triple 146 ->", pauli.decode(triple_to_point(h, (0, 3, 5)), 3))

dh = doily_heptad(h)
doilies = [Doily(pts, 3) for pts in dh.doilies]
lines = {ln for d in doilies for ln in d.lines}
print("seven doilies cover", len(lines), "distinct quadric lines")
shared = {len(set(a.points) & set(b.points)) for a, b in itertools.combinations(doilies, 2)}
print("any two of them share", shared, "points (an ovoid)")
