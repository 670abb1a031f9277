"""Pauli observables as points of W(2N-1, 2), and the signs of its lines.

Two observables commute exactly when the symplectic form vanishes on their
points.  Three pairwise commuting observables whose product is +-identity
form a line; the line is negative when that product is minus the identity.
"""
from polartax import pauli, space

xz, zx = pauli.parse_many("XZ,ZX")
print("XZ and ZX commute:", pauli.commute(xz, zx, 2))

# the Mermin-square style sign: XX . YY . ZZ = -II
line = pauli.parse_many("XX,YY,ZZ")
print("sign of {XX, YY, ZZ}:", pauli.line_sign(line, 2))

for n in (2, 3, 4):
    S = space(n)
    print(f"N={n}: {len(S.points)} points, {len(S.lines)} lines, {len(S.generators)} generators")
    print("   negative lines by type:", S.negative_line_census())
    hyp, ell = S.quadric_census()
    print(f"   {hyp} hyperbolic and {ell} elliptic quadrics")
