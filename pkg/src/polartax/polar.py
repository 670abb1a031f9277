"""The symplectic polar space W(2N-1, 2) with Pauli-labelled points.

Point sets are handled in two interchangeable forms: Python ``int`` bitmasks
(bit ``p`` set iff point ``p`` is present) for single sets, and boolean numpy
rows of length ``4**N`` for batches.  Column 0 (the identity) is always false.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import pauli

SUPPORTED_RANKS = (2, 3, 4)


class GeometryError(RuntimeError):
    """A structural invariant failed; signals a bug rather than bad input."""


@dataclass(frozen=True, order=True)
class IsotropicLine:
    points: tuple[int, int, int]
    sign: int

    def labels(self, n: int) -> list[str]:
        return [pauli.decode(p, n) for p in self.points]

    @property
    def mask(self) -> int:
        a, b, c = self.points
        return (1 << a) | (1 << b) | (1 << c)


@dataclass(frozen=True)
class QuadraticForm:
    """``Q_w(x) = Q_0(x) + sigma(w, x)`` with ``Q_0(x) = sum_j x_j x_{j+N}``.

    ``w = 0`` is the distinguished hyperbolic form; otherwise the quadric is
    hyperbolic iff ``w`` is a symmetric observable.
    """

    w: int
    n: int

    @property
    def kind(self) -> str:
        return "hyperbolic" if pauli.is_symmetric(self.w, self.n) else "elliptic"

    def __call__(self, x: int) -> int:
        return (pauli.y_count(x, self.n) + pauli.symplectic_form(self.w, x, self.n)) & 1

    @property
    def label(self) -> str:
        return pauli.decode(self.w, self.n)

    def points(self) -> frozenset[int]:
        return space(self.n).quadric_points(self.w)


def bitmask(points) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def members(mask: int) -> list[int]:
    """Points of a bitmask in canonical (increasing) order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _popcount_parity(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    out = np.zeros_like(a)
    while a.any():
        out ^= a & 1
        a >>= 1
    return out


class PolarSpace:
    """W(2N-1, 2) for one rank ``N``; build through :func:`space`."""

    def __init__(self, n: int):
        if n not in SUPPORTED_RANKS and n != 1:
            raise ValueError(f"unsupported rank N={n}; expected one of {SUPPORTED_RANKS}")
        self.n = n
        self.size = 4**n
        self.points = list(range(1, self.size))

    def __repr__(self) -> str:
        return f"PolarSpace(n={self.n})"

    def label(self, p: int) -> str:
        return pauli.decode(p, self.n)

    def labels(self, pts) -> list[str]:
        return [pauli.decode(p, self.n) for p in pts]

    # ---- tables -----------------------------------------------------------

    @cached_property
    def sigma(self) -> np.ndarray:
        """``sigma[x, y]`` for all words, as a uint8 matrix."""
        n, m = self.n, (1 << self.n) - 1
        v = np.arange(self.size, dtype=np.int64)
        hi, lo = v >> n, v & m
        return _popcount_parity((hi[:, None] & lo[None, :]) ^ (lo[:, None] & hi[None, :])).astype(np.uint8)

    @cached_property
    def base_form(self) -> np.ndarray:
        v = np.arange(self.size, dtype=np.int64)
        return _popcount_parity((v >> self.n) & v & ((1 << self.n) - 1)).astype(np.uint8)

    @cached_property
    def type_index(self) -> np.ndarray:
        """0 for type A, 1 for B, ...; -1 for the identity column."""
        return np.array([pauli.weight(v, self.n) - 1 for v in range(self.size)], dtype=np.int64)

    @cached_property
    def letters(self) -> np.ndarray:
        """``letters[j, x]`` is the per-qubit code (I=0, X=1, Z=2, Y=3) at position j."""
        n = self.n
        v = np.arange(self.size, dtype=np.int64)
        out = np.empty((n, self.size), dtype=np.int64)
        for j in range(n):
            s = n - 1 - j
            out[j] = (((v >> (n + s)) & 1) << 1) | ((v >> s) & 1)
        return out

    @cached_property
    def quadric_table(self) -> np.ndarray:
        """Row ``w``: boolean zero set of ``Q_w`` (identity column cleared)."""
        z = (self.sigma ^ self.base_form[None, :]) == 0
        z[:, 0] = False
        return z

    @cached_property
    def perp_table(self) -> np.ndarray:
        """Row ``x``: boolean perp-set of ``x`` (includes ``x``)."""
        z = self.sigma == 0
        z[:, 0] = False
        return z

    # ---- points, lines, generators ----------------------------------------

    def symmetric_points(self) -> list[int]:
        return [p for p in self.points if pauli.is_symmetric(p, self.n)]

    @cached_property
    def lines(self) -> list[IsotropicLine]:
        n = self.n
        out = []
        sig = self.sigma
        for a in self.points:
            for b in np.nonzero(sig[a, a + 1:] == 0)[0] + a + 1:
                b = int(b)
                c = a ^ b
                if c > b:
                    out.append(IsotropicLine((a, b, c), pauli.line_sign((a, b, c), n)))
        return out

    @cached_property
    def line_array(self) -> np.ndarray:
        return np.array([ln.points for ln in self.lines], dtype=np.int64).reshape(-1, 3)

    @cached_property
    def line_signs(self) -> np.ndarray:
        return np.array([ln.sign for ln in self.lines], dtype=np.int64)

    @cached_property
    def negative_lines(self) -> list[IsotropicLine]:
        return [ln for ln in self.lines if ln.sign < 0]

    def line_type(self, line: IsotropicLine) -> str:
        """Observable types of a line, most identities last, e.g. ``'C-C-B'``."""
        ts = sorted((pauli.observable_type(p, self.n) for p in line.points), reverse=True)
        return "-".join(ts)

    def isotropic_flats(self, k: int) -> list[tuple[int, ...]]:
        """All totally isotropic subspaces of vector dimension ``k``.

        Each flat is produced once from its reduced echelon basis: basis
        vectors are chosen with strictly increasing leading bit, and each new
        vector is zero at the earlier leading bits.
        """
        n = self.n
        if not 1 <= k <= n:
            raise ValueError("dimension out of range")
        out: list[tuple[int, ...]] = []
        sig = self.sigma

        def extend(basis: list[int], span: list[int], pivots: int, top: int) -> None:
            if len(basis) == k:
                out.append(tuple(sorted(span)))
                return
            for v in range(1 << top, self.size):
                if v & pivots:
                    continue
                if any(sig[v, b] for b in basis):
                    continue
                lead = v.bit_length() - 1
                extend(basis + [v], span + [s ^ v for s in span] + [v], pivots | (1 << lead), lead + 1)

        extend([], [], 0, 0)
        out.sort()
        return out

    @cached_property
    def generators(self) -> list[tuple[int, ...]]:
        """Maximal totally isotropic subspaces (point sets of size ``2**N - 1``)."""
        return self.isotropic_flats(self.n)

    # ---- quadrics and perps -----------------------------------------------

    def quadric(self, w: int) -> QuadraticForm:
        return QuadraticForm(w, self.n)

    def quadric_points(self, w: int) -> frozenset[int]:
        return frozenset(int(p) for p in np.nonzero(self.quadric_table[w])[0])

    def quadric_mask(self, w: int) -> int:
        return bitmask(np.nonzero(self.quadric_table[w])[0].tolist())

    def perp_set(self, x: int) -> frozenset[int]:
        if not 0 < x < self.size:
            raise ValueError("not a point")
        return frozenset(int(p) for p in np.nonzero(self.perp_table[x])[0])

    def perp_mask(self, x: int) -> int:
        return bitmask(np.nonzero(self.perp_table[x])[0].tolist())

    @cached_property
    def hyperbolic_parameters(self) -> list[int]:
        """Parameters ``w`` of the hyperbolic quadrics (``0`` included)."""
        return [0] + self.symmetric_points()

    @cached_property
    def elliptic_parameters(self) -> list[int]:
        return [p for p in self.points if not pauli.is_symmetric(p, self.n)]

    def quadric_census(self) -> tuple[int, int]:
        hyp = {self.quadric_table[w].tobytes() for w in self.hyperbolic_parameters}
        ell = {self.quadric_table[w].tobytes() for w in self.elliptic_parameters}
        return len(hyp), len(ell)

    @cached_property
    def hyperplanes(self) -> dict[int, tuple[str, int]]:
        """Every geometric hyperplane as ``mask -> (class, parameter)``.

        Class is ``'perp'`` (parameter = nucleus), ``'hyp'`` or ``'ell'``
        (parameter = ``w`` of the quadric).
        """
        out: dict[int, tuple[str, int]] = {}
        for x in self.points:
            out[self.perp_mask(x)] = ("perp", x)
        for w in self.hyperbolic_parameters:
            out[self.quadric_mask(w)] = ("hyp", w)
        for w in self.elliptic_parameters:
            out[self.quadric_mask(w)] = ("ell", w)
        return out

    def is_hyperplane(self, mask: int) -> bool:
        """Every line meets the set in one or three points."""
        for ln in self.lines:
            k = (mask & ln.mask).bit_count()
            if k not in (1, 3):
                return False
        return True

    # ---- misc -------------------------------------------------------------

    def type_counts(self, pts) -> tuple[int, ...]:
        counts = [0] * self.n
        for p in pts:
            counts[pauli.weight(p, self.n) - 1] += 1
        return tuple(counts)

    def negative_line_census(self) -> dict[str, int]:
        census: dict[str, int] = {}
        for ln in self.negative_lines:
            t = self.line_type(ln)
            census[t] = census.get(t, 0) + 1
        return dict(sorted(census.items()))

    def membership(self, masks_or_sets) -> np.ndarray:
        """Boolean matrix, one row per point set."""
        rows = list(masks_or_sets)
        out = np.zeros((len(rows), self.size), dtype=bool)
        for i, s in enumerate(rows):
            pts = members(s) if isinstance(s, int) else list(s)
            out[i, pts] = True
        return out


@lru_cache(maxsize=None)
def space(n: int) -> PolarSpace:
    """Shared, lazily populated instance of W(2n-1, 2)."""
    return PolarSpace(n)


def enumerate_points(n: int) -> list[int]:
    if n not in SUPPORTED_RANKS:
        raise ValueError(f"unsupported rank N={n}")
    return list(space(n).points)


def enumerate_lines(n: int) -> list[IsotropicLine]:
    return list(space(n).lines)


def enumerate_generators(n: int) -> list[tuple[int, ...]]:
    return list(space(n).generators)


def quadric_census(n: int) -> tuple[int, int]:
    return space(n).quadric_census()


def distinguished_quadric(n: int) -> int:
    """Parameter of the quadric hosting the "middle" observable types.

    ``YY`` (hyperbolic) for two qubits, ``YYY`` (elliptic) for three and
    ``YYYY`` (hyperbolic) for four.
    """
    return (1 << (2 * n)) - 1
