"""Intrinsic GQ(2,2) geometry of a 15-point doily.

A :class:`Doily` is built from 15 ambient points; inside it, point sets are
15-bit masks over the local index (position in the sorted point tuple).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from . import pauli
from .polar import GeometryError, IsotropicLine, space

HYPERPLANE_CLASS = {5: "ovoid", 7: "perp", 9: "grid"}
SHORT_CLASS = {"ovoid": "ov", "perp": "ps", "grid": "gr"}

# Veldkamp line types keyed by core class
CORE_TYPE = {"2cl": "I", "le": "II", "ttr": "III", "utr": "IV", "pt": "V"}
VELDKAMP_TYPES = ("I", "II", "III", "IV", "V")


class NotADoily(ValueError):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class DoilyHyperplane:
    mask: int
    cls: str
    nucleus: int | None = None  # local index, perps only


@dataclass(frozen=True)
class VeldkampLine:
    hyperplanes: tuple[int, int, int]
    core: int
    core_class: str

    @property
    def type(self) -> str:
        return CORE_TYPE[self.core_class]


@dataclass(frozen=True)
class Triad:
    points: tuple[int, int, int]
    centers: tuple[int, ...]

    @property
    def tricentric(self) -> bool:
        return len(self.centers) == 3


class Doily:
    """A W(3,2) living in W(2N-1, 2), with its induced signed lines."""

    def __init__(self, points, n: int):
        self.n = n
        self.points = tuple(sorted(points))
        if len(self.points) != 15:
            raise NotADoily("a doily has 15 points")
        self.index = {p: i for i, p in enumerate(self.points)}
        S = space(n)
        self.lines: list[IsotropicLine] = [
            ln for ln in S.lines if all(p in self.index for p in ln.points)
        ]
        self._check()
        self.full = (1 << 15) - 1

    @classmethod
    def from_labels(cls, labels) -> Doily:
        words = [w.strip() for w in labels.split(",")] if isinstance(labels, str) else list(labels)
        return cls(pauli.parse_many(words), len(words[0]))

    def _check(self) -> None:
        if len(self.lines) != 15:
            raise NotADoily(f"{len(self.lines)} induced lines, expected 15")
        deg = Counter(p for ln in self.lines for p in ln.points)
        if set(deg.values()) != {3} or len(deg) != 15:
            raise NotADoily("not every point is on three lines")
        col = self.collinear
        for a, b, c in combinations(range(15), 3):
            if col[a] >> b & 1 and col[b] >> c & 1 and col[a] >> c & 1:
                if not any({a, b, c} == set(self.local(ln)) for ln in self.lines):
                    raise NotADoily("the configuration has a triangle")

    def __repr__(self) -> str:
        return f"Doily({','.join(self.labels())})"

    def labels(self, mask: int | None = None) -> list[str]:
        idx = range(15) if mask is None else _bits(mask)
        return [pauli.decode(self.points[i], self.n) for i in idx]

    def local(self, line: IsotropicLine) -> tuple[int, int, int]:
        return tuple(self.index[p] for p in line.points)

    def to_mask(self, ambient_points) -> int:
        m = 0
        for p in ambient_points:
            m |= 1 << self.index[p]
        return m

    def ambient(self, mask: int) -> tuple[int, ...]:
        return tuple(self.points[i] for i in _bits(mask))

    @cached_property
    def line_masks(self) -> list[int]:
        return [sum(1 << i for i in self.local(ln)) for ln in self.lines]

    @cached_property
    def collinear(self) -> list[int]:
        """``collinear[i]``: mask of points sharing a line with ``i`` (``i`` excluded)."""
        out = [0] * 15
        for m in self.line_masks:
            for i in _bits(m):
                out[i] |= m & ~(1 << i)
        return out

    # ---- hyperplanes ------------------------------------------------------

    def is_hyperplane(self, mask: int) -> bool:
        return all((mask & lm).bit_count() in (1, 3) for lm in self.line_masks)

    def perp(self, i: int) -> int:
        return self.collinear[i] | (1 << i)

    def hyperplane_class(self, mask: int) -> str:
        if mask == self.full:
            return "full"
        if not self.is_hyperplane(mask):
            raise GeometryError("not a geometric hyperplane of the doily")
        return HYPERPLANE_CLASS[mask.bit_count()]

    @cached_property
    def hyperplanes(self) -> list[DoilyHyperplane]:
        """All 31 hyperplanes.

        A complement ``f`` of a hyperplane meets each line in 0 or 2 points,
        i.e. ``f(a) + f(b) + f(c) = 0`` on every line, so the complements are
        the nonzero vectors of a GF(2) null space.
        """
        found = {self.full & ~f for f in _span(_nullspace(self.line_masks, 15)) if f}
        out = []
        for m in sorted(found):
            cls = self.hyperplane_class(m)
            nucleus = None
            if cls == "perp":
                nucleus = next(i for i in _bits(m) if self.perp(i) == m)
            out.append(DoilyHyperplane(m, cls, nucleus))
        if Counter(h.cls for h in out) != Counter(perp=15, grid=10, ovoid=6):
            raise GeometryError("hyperplane census of a doily must be 15/10/6")
        return out

    def hyperplane_census(self) -> dict[str, int]:
        return dict(Counter(h.cls for h in self.hyperplanes))

    # ---- triads, Veldkamp lines --------------------------------------------

    def centers(self, pts) -> tuple[int, ...]:
        return tuple(c for c in range(15) if c not in pts and all(self.collinear[c] >> i & 1 for i in pts))

    @cached_property
    def triads(self) -> list[Triad]:
        col = self.collinear
        out = []
        for a, b, c in combinations(range(15), 3):
            if not (col[a] >> b & 1 or col[a] >> c & 1 or col[b] >> c & 1):
                out.append(Triad((a, b, c), self.centers((a, b, c))))
        return out

    def triad_census(self) -> tuple[int, int]:
        uni = sum(1 for t in self.triads if len(t.centers) == 1)
        tri = sum(1 for t in self.triads if len(t.centers) == 3)
        return uni, tri

    def core_class(self, core: int) -> str:
        pts = list(_bits(core))
        k = len(pts)
        if k == 1:
            return "pt"
        if k == 5:
            return "2cl"
        if k == 3:
            if core in self.line_masks:
                return "le"
            if any(self.collinear[a] >> b & 1 for a, b in combinations(pts, 2)):
                raise GeometryError("core of three points is neither a line nor a triad")
            return "ttr" if len(self.centers(pts)) == 3 else "utr"
        raise GeometryError(f"core of {k} points")

    def veldkamp_line(self, h1: int, h2: int) -> VeldkampLine:
        h3 = self.full & ~(h1 ^ h2)
        core = h1 & h2 & h3
        return VeldkampLine(tuple(sorted((h1, h2, h3))), core, self.core_class(core))

    @cached_property
    def veldkamp_lines(self) -> list[VeldkampLine]:
        hs = [h.mask for h in self.hyperplanes]
        known = set(hs)
        seen = {}
        for h1, h2 in combinations(hs, 2):
            vl = self.veldkamp_line(h1, h2)
            if vl.hyperplanes[0] not in known or vl.hyperplanes[2] not in known or vl.hyperplanes[1] not in known:
                raise GeometryError("Veldkamp addition left the hyperplane set")
            seen[vl.hyperplanes] = vl
        return sorted(seen.values(), key=lambda v: v.hyperplanes)

    def veldkamp_summary(self) -> dict[str, dict]:
        """Per type: count, core description and hyperplane composition."""
        cls = {h.mask: h.cls for h in self.hyperplanes}
        out: dict[str, dict] = {}
        for vl in self.veldkamp_lines:
            comp = Counter(cls[h] for h in vl.hyperplanes)
            key = (comp["perp"], comp["ovoid"], comp["grid"])
            row = out.setdefault(vl.type, {"core": vl.core_class, "count": 0, "compositions": Counter()})
            row["count"] += 1
            row["compositions"][key] += 1
        return {t: out[t] for t in VELDKAMP_TYPES if t in out}

    # ---- signs --------------------------------------------------------------

    @cached_property
    def orders(self) -> list[int]:
        """Number of negative lines through each point."""
        out = [0] * 15
        for ln in self.lines:
            if ln.sign < 0:
                for i in self.local(ln):
                    out[i] += 1
        return out

    def negative_line_count(self) -> int:
        return sum(1 for ln in self.lines if ln.sign < 0)

    def deep_and_zero_points(self) -> tuple[list[int], list[int]]:
        """Ambient points all of whose lines are negative, and those on no negative line."""
        deep = [self.points[i] for i, k in enumerate(self.orders) if k == 3]
        zero = [self.points[i] for i, k in enumerate(self.orders) if k == 0]
        return deep, zero

    def order_signature(self) -> list[int]:
        return order_signature(self.points, self.n)

    # ---- residual Veldkamp analysis ------------------------------------------

    def residual_signature(self) -> list[str]:
        """One outcome per qubit position.

        ``fl`` when every letter there is ``I``; ``ov``/``ps``/``gr`` when a
        single non-trivial mark occurs (class of the ``I`` set); otherwise the
        core class of the Veldkamp line formed by the three ``{m, I}`` sets.
        """
        out = []
        for j in range(self.n):
            lets = [pauli.letter(p, self.n, j) for p in self.points]
            marks = sorted(set(lets) - {"I"})
            core = sum(1 << i for i, c in enumerate(lets) if c == "I")
            if not marks:
                out.append("fl")
            elif len(marks) == 1:
                out.append(SHORT_CLASS[self.hyperplane_class(core)])
            else:
                hs = []
                for m in "XYZ":
                    h = sum(1 << i for i, c in enumerate(lets) if c in ("I", m))
                    if not self.is_hyperplane(h):
                        raise GeometryError(f"residual set for mark {m} at position {j} is not a hyperplane")
                    hs.append(h)
                if self.full & ~(hs[0] ^ hs[1]) != hs[2]:
                    raise GeometryError("residual hyperplanes do not form a Veldkamp line")
                out.append(self.core_class(core))
        return out


def _nullspace(rows: list[int], width: int) -> list[int]:
    """Basis of ``{v : popcount(v & r) even for every r}`` over GF(2)."""
    pivots: dict[int, int] = {}
    for r in rows:
        for col, pr in pivots.items():
            if r >> col & 1:
                r ^= pr
        if r:
            col = r.bit_length() - 1
            for c in list(pivots):
                if pivots[c] >> col & 1:
                    pivots[c] ^= r
            pivots[col] = r
    basis = []
    for free in range(width):
        if free in pivots:
            continue
        v = 1 << free
        for col, pr in pivots.items():
            if pr >> free & 1:
                v |= 1 << col
        basis.append(v)
    return basis


def _span(basis: list[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [v ^ b for v in out]
    return out


def order_signature(points, n: int) -> list[int]:
    """``[p_0, p_1, ...]``: number of points on exactly ``k`` negative induced lines.

    The vector has one entry per possible order, i.e. lines-per-point + 1.
    """
    pts = set(points)
    orders = dict.fromkeys(pts, 0)
    for ln in space(n).negative_lines:
        if all(p in pts for p in ln.points):
            for p in ln.points:
                orders[p] += 1
    # a W(2s-1,2) has (4**s - 1) points and 4**(s-1) - 1 lines per point
    s = {3: 1, 15: 2, 63: 3, 255: 4}[len(pts)]
    sig = [0] * (4 ** (s - 1))
    for k in orders.values():
        sig[k] += 1
    return sig
