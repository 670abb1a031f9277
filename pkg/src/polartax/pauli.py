"""N-qubit Pauli observables as points of the binary symplectic space.

An observable ``G_1 G_2 ... G_N`` is stored as a ``2N``-bit integer whose
coordinates ``x_1 .. x_2N`` are read with ``x_1`` as the most significant bit.
Qubit ``j`` owns the coordinate pair ``(x_j, x_{j+N})`` with

    I <-> (0, 0)    X <-> (0, 1)    Y <-> (1, 1)    Z <-> (1, 0)

so the high half of the word holds the "Z part" and the low half the
"X part".  Adding points is XOR; the identity word (all zero) is not a point.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence

LETTERS = "IXYZ"
MAX_QUBITS = 4

# letter -> (x_j, x_{j+N})
_PAIR = {"I": (0, 0), "X": (0, 1), "Y": (1, 1), "Z": (1, 0)}
_LETTER = {pair: letter for letter, pair in _PAIR.items()}

# Per-qubit code: (x_j << 1) | x_{j+N}, so I=0, X=1, Z=2, Y=3.
_CODE_LETTER = "IXZY"

# _PHASE[a][b] = e such that sigma_a * sigma_b = i**e * sigma_{a ^ b}
_PHASE = (
    (0, 0, 0, 0),  # I
    (0, 0, 3, 1),  # X:  XZ = -iY, XY = iZ
    (0, 1, 0, 3),  # Z:  ZX = iY,  ZY = -iX
    (0, 3, 1, 0),  # Y:  YX = -iZ, YZ = iX
)

OBSERVABLE_TYPES = "ABCD"


class PauliError(ValueError):
    """Raised for malformed observables or rank mismatches."""


def _mask(n: int) -> int:
    return (1 << n) - 1


def _check_rank(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise PauliError(f"unsupported number of qubits: {n}")


def encode(letters: Sequence[str] | str) -> int:
    """Encode a word over ``IXYZ`` as its point.

    >>> encode("XI")
    2
    """
    n = len(letters)
    _check_rank(n)
    hi = lo = 0
    for letter in letters:
        try:
            z, x = _PAIR[letter]
        except KeyError:
            raise PauliError(f"not a Pauli letter: {letter!r}") from None
        hi = (hi << 1) | z
        lo = (lo << 1) | x
    p = (hi << n) | lo
    if p == 0:
        raise PauliError("the identity is not a point of the polar space")
    return p


def decode(p: int, n: int) -> str:
    """Inverse of :func:`encode` (the identity decodes to ``'I' * n``)."""
    _check_rank(n)
    if not 0 <= p < 1 << (2 * n):
        raise PauliError(f"{p} is not a {2 * n}-bit word")
    hi, lo = p >> n, p & _mask(n)
    out = []
    for j in range(n - 1, -1, -1):
        out.append(_LETTER[((hi >> j) & 1, (lo >> j) & 1)])
    return "".join(out)


def bits(p: int, n: int) -> tuple[int, ...]:
    """Coordinates ``(x_1, ..., x_2N)``."""
    return tuple((p >> (2 * n - 1 - k)) & 1 for k in range(2 * n))


def from_bits(coords: Sequence[int]) -> int:
    if len(coords) % 2:
        raise PauliError("coordinate vector must have even length")
    p = 0
    for c in coords:
        p = (p << 1) | (int(c) & 1)
    return p


def letter(p: int, n: int, j: int) -> str:
    """Letter at qubit position ``j`` (0-based, leftmost is 0)."""
    s = n - 1 - j
    return _CODE_LETTER[(((p >> (n + s)) & 1) << 1) | ((p >> s) & 1)]


def parse_many(text: str | Iterable[str]) -> list[int]:
    """Parse a comma separated list (or iterable) of equal-length words."""
    words = [w.strip() for w in text.split(",")] if isinstance(text, str) else list(text)
    words = [w for w in words if w]
    if not words:
        raise PauliError("no observables given")
    n = len(words[0])
    if any(len(w) != n for w in words):
        raise PauliError("observables of different rank")
    return [encode(w) for w in words]


def symplectic_form(x: int, y: int, n: int) -> int:
    """``sum_j x_j y_{j+N} + x_{j+N} y_j`` mod 2; zero iff the observables commute."""
    top = 1 << (2 * n)
    if not (0 <= x < top and 0 <= y < top):
        raise PauliError("points of different rank")
    m = _mask(n)
    return (((x >> n) & y & m) ^ ((y >> n) & x & m)).bit_count() & 1


def commute(x: int, y: int, n: int) -> bool:
    return symplectic_form(x, y, n) == 0


def weight(p: int, n: int) -> int:
    """Number of non-identity letters."""
    return ((p >> n) | (p & _mask(n))).bit_count()


def observable_type(p: int, n: int) -> str:
    """``'A'`` for ``N-1`` identity letters, ``'B'`` for ``N-2`` and so on."""
    if p == 0:
        raise PauliError("the identity has no observable type")
    return OBSERVABLE_TYPES[weight(p, n) - 1]


def y_count(p: int, n: int) -> int:
    return ((p >> n) & p & _mask(n)).bit_count()


def is_symmetric(p: int, n: int) -> bool:
    """Even number of Y letters, i.e. the base quadratic form vanishes on ``p``."""
    return y_count(p, n) % 2 == 0


def product(points: Iterable[int], n: int) -> tuple[int, int]:
    """Ordered product of observables.

    Returns ``(word, e)`` meaning ``i**e * word``; ``word == 0`` is the identity.
    """
    cur, e = 0, 0
    for p in points:
        for s in range(n):
            a = (((cur >> (n + s)) & 1) << 1) | ((cur >> s) & 1)
            b = (((p >> (n + s)) & 1) << 1) | ((p >> s) & 1)
            e += _PHASE[a][b]
        cur ^= p
    return cur, e % 4


def phase_value(e: int) -> complex:
    return (1, 1j, -1, -1j)[e % 4]


def sign_of_identity_product(points: Sequence[int], n: int) -> int:
    """Sign ``+1``/``-1`` of a product of observables that must equal ``+-I``."""
    word, e = product(points, n)
    if word != 0:
        raise PauliError("observables do not multiply to a multiple of the identity")
    if e % 2:
        raise PauliError("product carries an imaginary phase")
    return 1 if e == 0 else -1


def line_sign(line: Sequence[int], n: int) -> int:
    """Sign of a totally isotropic line ``{a, b, a+b}``."""
    if len(set(line)) != 3:
        raise PauliError("a line has three distinct points")
    a, b, c = line
    if a ^ b ^ c or not (commute(a, b, n) and commute(a, c, n) and commute(b, c, n)):
        raise PauliError("points do not form an isotropic line")
    return sign_of_identity_product(line, n)
