"""Rank N-1 symplectic subspaces W(2N-3, 2) inside W(2N-1, 2).

A *linear* subspace is the common perp of two non-commuting points; a
*quadratic* one is the intersection of a hyperbolic and an elliptic quadric.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import pauli
from .polar import GeometryError, PolarSpace, distinguished_quadric, members, space

HYPERPLANE_SIZES = {
    3: {5: "ell", 7: "perp", 9: "hyp", 15: "full"},
    4: {27: "ell", 31: "perp", 35: "hyp", 63: "full"},
}


@dataclass(frozen=True)
class SymplecticSubspace:
    n: int
    kind: str
    points: tuple[int, ...]
    provenance: tuple = field(compare=False)

    @property
    def mask(self) -> int:
        m = 0
        for p in self.points:
            m |= 1 << p
        return m

    @property
    def space(self) -> PolarSpace:
        return space(self.n)

    def labels(self) -> list[str]:
        return [pauli.decode(p, self.n) for p in self.points]

    def provenance_labels(self) -> dict[str, object]:
        if self.kind == "linear":
            return {"pairs": [[pauli.decode(a, self.n), pauli.decode(b, self.n)] for a, b in self.provenance]}
        w_hyp, w_ell = self.provenance
        return {"hyp": pauli.decode(w_hyp, self.n), "ell": pauli.decode(w_ell, self.n)}

    def __len__(self) -> int:
        return len(self.points)


def _check(n: int) -> PolarSpace:
    if n not in (2, 3, 4):
        raise ValueError(f"unsupported rank N={n}")
    return space(n)


def _points_of(row: np.ndarray) -> tuple[int, ...]:
    return tuple(int(p) for p in np.nonzero(row)[0])


@lru_cache(maxsize=None)
def linear_subspaces(n: int) -> tuple[SymplecticSubspace, ...]:
    """Common perps of non-collinear pairs; three pairs give each subspace."""
    S = _check(n)
    perp = S.perp_table
    found: dict[bytes, list] = {}
    for a in S.points:
        for b in np.nonzero(S.sigma[a, a + 1:])[0] + a + 1:
            b = int(b)
            row = perp[a] & perp[b]
            found.setdefault(row.tobytes(), [row, []])[1].append((a, b))
    out = []
    for row, pairs in found.values():
        if len(pairs) != 3:
            raise GeometryError(f"linear subspace generated by {len(pairs)} pairs")
        out.append(SymplecticSubspace(n, "linear", _points_of(row), tuple(pairs)))
    out.sort(key=lambda s: s.points)
    return tuple(out)


@lru_cache(maxsize=None)
def quadratic_subspaces(n: int) -> tuple[SymplecticSubspace, ...]:
    """``Q_hyp & Q_ell`` over all hyperbolic/elliptic parameter pairs."""
    S = _check(n)
    Q = S.quadric_table
    seen = set()
    out = []
    for wh in S.hyperbolic_parameters:
        for we in S.elliptic_parameters:
            row = Q[wh] & Q[we]
            key = row.tobytes()
            if key in seen:
                raise GeometryError("two quadric pairs give the same subspace")
            seen.add(key)
            out.append(SymplecticSubspace(n, "quadratic", _points_of(row), (wh, we)))
    out.sort(key=lambda s: s.points)
    return tuple(out)


def all_subspaces(n: int) -> tuple[SymplecticSubspace, ...]:
    return linear_subspaces(n) + quadratic_subspaces(n)


def membership_matrix(subs) -> np.ndarray:
    subs = list(subs)
    if not subs:
        return np.zeros((0, 1), dtype=bool)
    S = space(subs[0].n)
    out = np.zeros((len(subs), S.size), dtype=bool)
    for i, s in enumerate(subs):
        out[i, list(s.points)] = True
    return out


def contained_lines(M: np.ndarray, line_array: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """Boolean ``[subspace, line]``: the line lies inside the subspace."""
    out = np.empty((M.shape[0], line_array.shape[0]), dtype=bool)
    for i in range(0, M.shape[0], chunk):
        m = M[i:i + chunk]
        out[i:i + chunk] = m[:, line_array[:, 0]] & m[:, line_array[:, 1]] & m[:, line_array[:, 2]]
    return out


def induced_lines(s: SymplecticSubspace):
    """Ambient lines lying entirely inside ``s``."""
    pts = set(s.points)
    return [ln for ln in space(s.n).lines if all(p in pts for p in ln.points)]


def negative_line_count(s: SymplecticSubspace) -> int:
    return sum(1 for ln in induced_lines(s) if ln.sign < 0)


def negative_line_counts(subs, chunk: int = 2048) -> np.ndarray:
    """Vectorised :func:`negative_line_count` over a population."""
    subs = list(subs)
    if not subs:
        return np.zeros(0, dtype=np.int64)
    S = space(subs[0].n)
    neg = S.line_array[S.line_signs < 0]
    M = membership_matrix(subs)
    out = np.empty(len(subs), dtype=np.int64)
    for i in range(0, len(subs), chunk):
        m = M[i:i + chunk]
        out[i:i + chunk] = (m[:, neg[:, 0]] & m[:, neg[:, 1]] & m[:, neg[:, 2]]).sum(axis=1)
    return out


def observable_distribution(s: SymplecticSubspace) -> tuple[int, ...]:
    """Counts of observables of type A, B, ... (one entry per qubit)."""
    return space(s.n).type_counts(s.points)


def distinguished_intersection(s: SymplecticSubspace) -> str:
    """Class of ``s`` meet the distinguished quadric: ell, perp, hyp or full.

    The intersection is also checked to be a geometric hyperplane of ``s``.
    """
    n = s.n
    if n not in HYPERPLANE_SIZES:
        raise ValueError("distinguished intersections are defined for N = 3, 4")
    S = space(n)
    q = S.quadric_table[distinguished_quadric(n)]
    inside = [bool(q[p]) for p in range(S.size)]
    size = sum(inside[p] for p in s.points)
    try:
        cls = HYPERPLANE_SIZES[n][size]
    except KeyError:
        raise GeometryError(f"intersection of size {size} is not a hyperplane") from None
    for ln in induced_lines(s):
        if sum(inside[p] for p in ln.points) not in (1, 3):
            raise GeometryError("intersection with the distinguished quadric is not a hyperplane")
    return cls


def distinguished_intersections(subs) -> list[str]:
    """Vectorised :func:`distinguished_intersection` with the same hyperplane check."""
    subs = list(subs)
    if not subs:
        return []
    n = subs[0].n
    S = space(n)
    q = S.quadric_table[distinguished_quadric(n)]
    M = membership_matrix(subs)
    sizes = (M & q[None, :]).sum(axis=1)
    on_line = q[S.line_array].sum(axis=1)
    bad_line = (on_line == 0) | (on_line == 2)
    bad = contained_lines(M, S.line_array[bad_line]).any(axis=1)
    if bad.any():
        raise GeometryError("intersection with the distinguished quadric is not a hyperplane")
    table = HYPERPLANE_SIZES[n]
    out = []
    for k in sizes.tolist():
        if k not in table:
            raise GeometryError(f"intersection of size {k} is not a hyperplane")
        out.append(table[k])
    return out


def is_nondegenerate(s: SymplecticSubspace) -> bool:
    """The restricted symplectic form has trivial radical and ``s`` is closed.

    ``s`` must be the nonzero part of a vector subspace (closed under XOR)
    and no point of it may commute with every other point of it.
    """
    S = space(s.n)
    pts = list(s.points)
    ps = set(pts)
    for a in pts:
        for b in pts:
            if a < b and (a ^ b) not in ps:
                return False
    sub = S.sigma[np.ix_(pts, pts)]
    return bool(sub.any(axis=1).all())


def planes_in(s: SymplecticSubspace) -> list[tuple[int, ...]]:
    """Totally isotropic planes (7 points) of the ambient space lying in ``s``."""
    S = space(s.n)
    pts = set(s.points)
    return [pl for pl in _planes(s.n) if all(p in pts for p in pl)]


@lru_cache(maxsize=None)
def _planes(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(space(n).isotropic_flats(3))


@lru_cache(maxsize=None)
def plane_signs(n: int) -> np.ndarray:
    """Sign of each totally isotropic plane: product of its observables in canonical order."""
    return np.array([pauli.sign_of_identity_product(pl, n) for pl in _planes(n)], dtype=np.int64)


def plane_array(n: int) -> np.ndarray:
    return np.array(_planes(n), dtype=np.int64)


def negative_planes(s: SymplecticSubspace | None = None, n: int | None = None) -> int:
    """Negative planes inside ``s`` (or in the whole space of rank ``n``)."""
    if s is None:
        if n is None:
            raise ValueError("give a subspace or a rank")
        if n < 3:
            return 0
        return int((plane_signs(n) < 0).sum())
    if s.n < 3 or len(s.points) < 63:
        return 0
    pts = np.zeros(space(s.n).size, dtype=bool)
    pts[list(s.points)] = True
    P = plane_array(s.n)
    inside = pts[P].all(axis=1)
    return int((inside & (plane_signs(s.n) < 0)).sum())


def negative_plane_counts(subs, chunk: int = 1024) -> np.ndarray:
    subs = list(subs)
    if not subs:
        return np.zeros(0, dtype=np.int64)
    n = subs[0].n
    P = plane_array(n)
    neg = P[plane_signs(n) < 0]
    M = membership_matrix(subs)
    out = np.empty(len(subs), dtype=np.int64)
    for i in range(0, len(subs), chunk):
        m = M[i:i + chunk]
        ok = np.ones((m.shape[0], neg.shape[0]), dtype=bool)
        for c in range(7):
            ok &= m[:, neg[:, c]]
        out[i:i + chunk] = ok.sum(axis=1)
    return out


def from_mask(n: int, mask: int, kind: str = "linear", provenance: tuple = ()) -> SymplecticSubspace:
    return SymplecticSubspace(n, kind, tuple(members(mask)), provenance)
