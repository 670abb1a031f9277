"""Classifying the 1344 doilies of the three-qubit W(5,2).

Each doily is fingerprinted by its number of negative lines, its counts of
observables of types A, B, C, and whether it is linear or quadratic.  The
refined view splits every doily along the three qubit positions.
"""
from collections import Counter

from polartax import classify
from polartax.golden import check_table
from polartax.taxonomy import composite_type_breakdown

records = classify(3)
print("doilies:", len(records), Counter(r.kind for r in records))

rows, diff = check_table(3)
for r in rows:
    print(r)
print("matches the stored table:", not diff)

rows, diff = check_table(4)
print("refined types:", [r["T"] for r in rows], "match:", not diff)

# doilies obtained from the two-qubit doily by inserting a mark
print("composite doilies per hyperplane class:", composite_type_breakdown(3))
