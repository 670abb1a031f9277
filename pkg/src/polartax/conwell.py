"""Conwell heptads with respect to hyperbolic quadrics of the three-qubit space."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import pauli
from .polar import GeometryError, QuadraticForm, space

N = 3


@dataclass(frozen=True)
class ConwellHeptad:
    points: tuple[int, ...]
    w: int  # hyperbolic quadric parameter

    def labels(self) -> list[str]:
        return [pauli.decode(p, N) for p in self.points]


@dataclass
class DoilyHeptad:
    heptad: ConwellHeptad
    triples: dict[tuple[int, int, int], int]
    doilies: list[tuple[int, ...]]


def _check_hyperbolic(w: int) -> QuadraticForm:
    q = space(N).quadric(w)
    if w and q.kind != "hyperbolic":
        raise ValueError("Conwell heptads are taken with respect to a hyperbolic quadric")
    return q


def skew_graph(w: int) -> dict[int, int]:
    """Off-quadric points, each with a bitmask of neighbours joined by a skew line."""
    _check_hyperbolic(w)
    on = space(N).quadric_table[w]
    off = [p for p in space(N).points if not on[p]]
    adj = {p: 0 for p in off}
    for a, b in itertools.combinations(off, 2):
        if not on[a ^ b]:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return adj


def _maximal_cliques(adj: dict[int, int]) -> list[int]:
    """Bron-Kerbosch with pivoting over bitmask adjacency."""
    out = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        u = max(((p | x) & -(p | x)).bit_length() - 1, 0)
        pivot_nb = adj[u]
        cand = p & ~pivot_nb
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(r | low, p & adj[v], x & adj[v])
            p &= ~low
            x |= low
            cand &= ~low

    allv = 0
    for v in adj:
        allv |= 1 << v
    expand(0, allv, 0)
    return out


@lru_cache(maxsize=None)
def conwell_heptads(w: int = 0) -> tuple[ConwellHeptad, ...]:
    """All seven-point sets of off-quadric points with pairwise skew joins.

    The skew-join graph also has maximal triangles; only the 7-cliques
    (which are the largest cliques) are heptads.
    """
    adj = skew_graph(w)
    cliques = _maximal_cliques(adj)
    if max(c.bit_count() for c in cliques) != 7:
        raise GeometryError("largest exterior set does not have seven points")
    out = []
    for c in cliques:
        if c.bit_count() == 7:
            out.append(ConwellHeptad(tuple(p for p in sorted(adj) if c >> p & 1), w))
    out.sort(key=lambda h: h.points)
    return tuple(out)


def triple_to_point(h: ConwellHeptad, triple) -> int:
    """Product of three heptad observables (sign dropped); lies on the quadric."""
    i, j, k = triple
    if len({i, j, k}) != 3:
        raise ValueError("triple needs three distinct indices")
    pts = h.points
    return pts[i] ^ pts[j] ^ pts[k]


def doily_heptad(h: ConwellHeptad) -> DoilyHeptad:
    """The seven doilies of a heptad, one per element, from the triple map."""
    triples = {t: triple_to_point(h, t) for t in itertools.combinations(range(7), 3)}
    doilies = []
    for e in range(7):
        doilies.append(tuple(sorted(p for t, p in triples.items() if e in t)))
    return DoilyHeptad(h, triples, doilies)


def quadric_lines(w: int):
    on = space(N).quadric_table[w]
    return [ln for ln in space(N).lines if all(on[p] for p in ln.points)]


def tangent_knot(h: ConwellHeptad, p: int) -> tuple[int, int, int]:
    """The three heptad points collinear with ``p`` (a point of the quadric)."""
    S = space(N)
    if not S.quadric_table[h.w][p]:
        raise ValueError("point is not on the quadric")
    hits = tuple(q for q in h.points if S.sigma[p, q] == 0)
    if len(hits) != 3:
        raise GeometryError(f"tangent hyperplane meets the heptad in {len(hits)} points")
    return hits


def heptad_report(w: int = 0) -> dict:
    """JSON-ready listing: heptads and, for each, its 35-row triple table."""
    out = []
    for h in conwell_heptads(w):
        dh = doily_heptad(h)
        out.append({
            "observables": h.labels(),
            "triples": [
                {"triple": "".join(str(i + 1) for i in t), "observable": pauli.decode(p, N)}
                for t, p in sorted(dh.triples.items())
            ],
        })
    return {"quadric": pauli.decode(w, N), "heptads": out}


def heptad_dot(h: ConwellHeptad) -> str:
    """Graphviz source: seven doily clusters over the shared quadric points."""
    dh = doily_heptad(h)
    lines = ["graph heptad {", "  node [shape=circle, fontsize=9];"]
    for p in sorted(set(dh.triples.values())):
        lines.append(f'  "{pauli.decode(p, N)}";')
    for e, d in enumerate(dh.doilies):
        lines.append(f"  subgraph cluster_{e + 1} {{")
        lines.append(f'    label="{pauli.decode(h.points[e], N)}";')
        pts = set(d)
        for ln in space(N).lines:
            if all(q in pts for q in ln.points):
                a, b, c = (pauli.decode(q, N) for q in ln.points)
                lines.append(f'    "{a}" -- "{b}" -- "{c}";')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
