"""The 21760 W(5,2)'s inside the four-qubit W(7,2), composites and negative planes."""
from polartax import classify, pauli, space
from polartax.golden import check_table
from polartax.subspaces import negative_plane_counts
from polartax.taxonomy import composite_census, lift_composite

records = classify(4)
rows, diff = check_table(5)
for r in rows:
    print(r)
print("matches the stored table:", not diff)
print("composite lifts per hyperplane class:", composite_census(4))

# lift the perp-set of XII, inserting X at the front
S3 = space(3)
by_points = {r.subspace.points: r for r in records}
lifted = by_points[lift_composite(3, S3.perp_mask(pauli.encode("XII")), 0, "X").points]
print("perp of XII lifts to type", lifted.label, "with distribution", lifted.distribution)

composites = [r.subspace for r in records if r.composite or r.trivial]
print("negative planes in composite W(5,2)'s:", set(negative_plane_counts(composites).tolist()))
