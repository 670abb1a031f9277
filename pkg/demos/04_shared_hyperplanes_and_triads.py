"""Four doilies through one hyperplane, and four through a planar triad."""
from polartax import pauli
from polartax.taxonomy import (
    classify,
    doilies_on_planar_triad,
    doilies_sharing_hyperplane,
    doily_tails,
    planar_triads,
    shared_hyperplane_census,
)

records = classify(3)
print("containment census:", shared_hyperplane_census())

ovoid = pauli.parse_many("IXZ,XYI,IZZ,ZYI,YYI")
sh = doilies_sharing_hyperplane(ovoid)
print("ovoid", [pauli.decode(p, 3) for p in sh.points], "split", sh.split)
print("   types:", [records[i].label for i in sh.doilies])

t = planar_triads()[0]
pt = doilies_on_planar_triad(t)
print("planar triad", [pauli.decode(p, 3) for p in t])
print("   distinguished point of the polar plane:", pauli.decode(pt.distinguished, 3))
print("   doilies:", [(i, records[i].label) for i in pt.doilies])

rep = doily_tails(pauli.encode("ZIZ"))
print("tail through ZIZ:", [pauli.decode(p, 3) for p in rep.tail])
print("   doilies hanging off the tail, by type:", dict(rep.types))
