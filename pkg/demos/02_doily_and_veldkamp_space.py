"""The two-qubit doily W(3,2): hyperplanes, triads and Veldkamp lines."""
from polartax import Doily, space
from polartax.golden import table1_rows

d = Doily(space(2).points, 2)
print("points:", ", ".join(d.labels()))
print("hyperplanes:", d.hyperplane_census())

uni, tri = d.triad_census()
print(f"triads: {uni} unicentric, {tri} tricentric")

# every pair of hyperplanes spans a Veldkamp line; five types by core
for row in table1_rows():
    print(row)

# the three negative lines and the order of every point
print("negative lines:", d.negative_line_count())
print("order signature [p0, p1, p2, p3]:", d.order_signature())
