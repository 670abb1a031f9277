"""Classification of rank N-1 subspaces and the structures built on doilies.

Type numbers follow the usual table order: descending number of negative
lines, then ascending counts of type A, B, ... observables, quadratic before
linear, then intersection class.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import pauli
from .doily import Doily, SHORT_CLASS
from .polar import GeometryError, bitmask, members, space
from .subspaces import (
    SymplecticSubspace,
    all_subspaces,
    distinguished_intersections,
    membership_matrix,
    negative_line_counts,
    negative_plane_counts,
)

KIND_RANK = {"quadratic": 0, "linear": 1}
INT_RANK = {"ell": 0, "perp": 1, "hyp": 2, "full": 3}
RESIDUAL_COLUMNS = ("2cl", "le", "ttr", "utr", "pt", "ov", "ps", "gr", "fl")
DOILY_HYPERPLANE_NAME = {"perp": "ps", "hyp": "gr", "ell": "ov", "full": "fl"}


# ---- composite subspaces -----------------------------------------------------


def strip_position(p: int, n: int, j: int) -> int:
    """Remove qubit ``j`` (0-based from the left) from an ``n``-qubit word."""
    s = n - 1 - j
    hi, lo = p >> n, p & ((1 << n) - 1)

    def cut(v: int) -> int:
        return ((v >> (s + 1)) << s) | (v & ((1 << s) - 1))

    return (cut(hi) << (n - 1)) | cut(lo)


def insert_position(q: int, n: int, j: int, mark: str) -> int:
    """Insert ``mark`` at position ``j`` of an ``n``-qubit word (result has ``n+1`` qubits)."""
    z, x = {"I": (0, 0), "X": (0, 1), "Y": (1, 1), "Z": (1, 0)}[mark]
    s = n - j
    hi, lo = q >> n, q & ((1 << n) - 1)

    def put(v: int, b: int) -> int:
        return ((v >> s) << (s + 1)) | (b << s) | (v & ((1 << s) - 1))

    return (put(hi, z) << (n + 1)) | put(lo, x)


@dataclass(frozen=True)
class CompositeWitness:
    """Position ``j`` and mark ``m`` such that erasing ``j`` gives the full lower space.

    ``hyperplane`` is the mask (in the lower space) of points carrying ``I``
    at ``j``; ``cls`` is perp/hyp/ell, or ``full`` for the trivial case.
    """

    position: int
    mark: str | None
    hyperplane: int
    cls: str
    observable: int | None

    @property
    def trivial(self) -> bool:
        return self.cls == "full"

    def describe(self, n_base: int) -> str:
        if self.trivial:
            return f"pos {self.position + 1}: trivial"
        obs = pauli.decode(self.observable, n_base)
        return f"pos {self.position + 1}, mark {self.mark}: {self.cls} O={obs}"


def detect_composite(s: SymplecticSubspace) -> list[CompositeWitness]:
    """Every position/mark exhibiting ``s`` as lifted from the lower space."""
    n = s.n
    if n not in (3, 4):
        raise ValueError("composite detection needs N = 3 or 4")
    base = space(n - 1)
    out = []
    for j in range(n):
        lets = [pauli.letter(p, n, j) for p in s.points]
        marks = set(lets) - {"I"}
        if not marks:
            stripped = {strip_position(p, n, j) for p in s.points}
            if 0 not in stripped and len(stripped) == base.size - 1:
                out.append(CompositeWitness(j, None, bitmask(stripped), "full", None))
            continue
        if len(marks) != 1:
            continue
        (mark,) = marks
        w = _witness(s.points, n, j, mark)
        if w is not None:
            out.append(w)
    return out


def _witness(points, n: int, j: int, mark: str) -> CompositeWitness | None:
    base = space(n - 1)
    stripped = [strip_position(p, n, j) for p in points]
    if 0 in stripped or len(set(stripped)) != base.size - 1:
        return None
    h = bitmask(q for p, q in zip(points, stripped) if pauli.letter(p, n, j) == "I")
    hit = base.hyperplanes.get(h)
    if hit is None:
        if base.is_hyperplane(h):
            raise GeometryError("hyperplane not matched by a perp or a quadric")
        return None
    cls, obs = hit
    return CompositeWitness(j, mark, h, cls, obs)


def lift_composite(n_base: int, hyperplane: int | None, j: int, mark: str) -> SymplecticSubspace:
    """Insert ``mark`` at ``j`` in every observable, then erase it on ``hyperplane``.

    ``hyperplane=None`` means the full lower space (the trivial lift).
    """
    base = space(n_base)
    if mark not in "XYZ" or len(mark) != 1:
        raise ValueError("mark must be X, Y or Z")
    if hyperplane is not None and hyperplane not in base.hyperplanes:
        if not base.is_hyperplane(hyperplane):
            raise GeometryError("not a geometric hyperplane of the lower space")
    full = hyperplane is None
    pts = sorted(
        insert_position(q, n_base, j, "I" if full or hyperplane >> q & 1 else mark)
        for q in base.points
    )
    n = n_base + 1
    found = population_index(n).get(tuple(pts))
    if found is not None:
        return found
    raise GeometryError("lift is not a subspace of the expected rank")


@lru_cache(maxsize=None)
def population_index(n: int) -> dict[tuple[int, ...], SymplecticSubspace]:
    return {s.points: s for s in all_subspaces(n)}


def _composite_candidates(subs, n: int) -> set[int]:
    """Indices of subspaces whose letters at some position use at most one mark."""
    S = space(n)
    M = membership_matrix(subs)
    hit = np.zeros(len(subs), dtype=bool)
    for j in range(n):
        codes = S.letters[j]
        for m in (1, 2, 3):
            bad = (codes != 0) & (codes != m)
            hit |= ~(M & bad[None, :]).any(axis=1)
    return set(np.nonzero(hit)[0].tolist())


# ---- records and type assignment ------------------------------------------------


@dataclass
class TaxonomyRecord:
    index: int
    subspace: SymplecticSubspace
    neg_lines: int
    distribution: tuple[int, ...]
    intersection: str | None
    witnesses: list[CompositeWitness] = field(default_factory=list)
    residual: tuple[str, ...] | None = None
    type_id: int = 0
    subtype: str = ""

    @property
    def kind(self) -> str:
        return self.subspace.kind

    @property
    def fingerprint(self) -> tuple:
        return (self.neg_lines, self.distribution, self.kind, self.intersection)

    @property
    def composite(self) -> bool:
        return any(not w.trivial for w in self.witnesses)

    @property
    def trivial(self) -> bool:
        return any(w.trivial for w in self.witnesses)

    @property
    def label(self) -> str:
        return self.subtype or str(self.type_id)

    def to_json(self) -> dict:
        n = self.subspace.n
        d = {
            "index": self.index,
            "type": self.label,
            "kind": self.kind,
            "provenance": self.subspace.provenance_labels(),
            "points": self.subspace.labels(),
            "neg_lines": self.neg_lines,
            "distribution": list(self.distribution),
            "intersection": self.intersection,
            "witnesses": [
                {
                    "position": w.position + 1,
                    "mark": w.mark,
                    "class": w.cls,
                    "observable": None if w.observable is None else pauli.decode(w.observable, n - 1),
                }
                for w in self.witnesses
            ],
        }
        if self.residual is not None:
            d["residual"] = list(self.residual)
        return d


def _type_sort_key(fp: tuple) -> tuple:
    neg, dist, kind, inter = fp
    return (-neg, *dist, KIND_RANK[kind], INT_RANK.get(inter, -1))


def assign_types(records: list[TaxonomyRecord]) -> list[tuple]:
    """Number fingerprints in table order and stamp ``type_id`` on every record."""
    fps = sorted({r.fingerprint for r in records}, key=_type_sort_key)
    ids = {fp: i + 1 for i, fp in enumerate(fps)}
    for r in records:
        r.type_id = ids[r.fingerprint]
    return fps


def _type_a_commute(r: TaxonomyRecord) -> bool:
    n = r.subspace.n
    a = [p for p in r.subspace.points if pauli.weight(p, n) == 1]
    return all(pauli.commute(x, y, n) for x, y in itertools.combinations(a, 2))


def _analyse(task: tuple[int, tuple[int, ...], bool]) -> tuple[list[CompositeWitness], tuple[str, ...] | None]:
    """Per-subspace work that does not depend on the rest of the population."""
    n, points, candidate = task
    witnesses = detect_composite(SymplecticSubspace(n, "", points, ())) if candidate else []
    residual = tuple(Doily(points, 3).residual_signature()) if n == 3 else None
    return witnesses, residual


def _ordered_map(fn, tasks: list, jobs: int) -> list:
    """``map`` over a process pool; results keep input order, so output is job-count independent."""
    if jobs <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    from concurrent.futures import ProcessPoolExecutor

    chunk = max(1, len(tasks) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))


_CLASSIFIED: dict[int, tuple[TaxonomyRecord, ...]] = {}


def classify(n: int, jobs: int = 1) -> tuple[TaxonomyRecord, ...]:
    """Fingerprint every rank ``n-1`` subspace of W(2n-1, 2) and assign types.

    Results are memoised per rank; ``jobs`` only affects how the first call
    spreads the per-subspace analysis over processes.
    """
    if n not in _CLASSIFIED:
        _CLASSIFIED[n] = build_records(n, jobs)
    return _CLASSIFIED[n]


def build_records(n: int, jobs: int = 1) -> tuple[TaxonomyRecord, ...]:
    subs = list(all_subspaces(n))
    neg = negative_line_counts(subs)
    inters = distinguished_intersections(subs) if n in (3, 4) else [None] * len(subs)
    S = space(n)
    M = membership_matrix(subs)
    dists = np.stack([(M & (S.type_index == t)[None, :]).sum(axis=1) for t in range(n)], axis=1)
    cands = _composite_candidates(subs, n) if n in (3, 4) else set()
    tasks = [(n, s.points, i in cands) for i, s in enumerate(subs)]
    analysed = _ordered_map(_analyse, tasks, jobs)
    records = []
    for i, (s, (wit, res)) in enumerate(zip(subs, analysed)):
        r = TaxonomyRecord(i, s, int(neg[i]), tuple(int(v) for v in dists[i]), inters[i], wit, res)
        records.append(r)
    assign_types(records)
    if n == 3:
        for r in records:
            if r.type_id == 9:
                r.subtype = "9A" if _type_a_commute(r) else "9B"
            elif r.type_id == 8 and r.composite:
                r.subtype = "8'"
    return tuple(records)


def type_members(records, label) -> list[TaxonomyRecord]:
    label = str(label)
    return [r for r in records if r.label == label or str(r.type_id) == label]


# ---- tables ---------------------------------------------------------------------


def _group(records) -> dict[int, list[TaxonomyRecord]]:
    out: dict[int, list[TaxonomyRecord]] = defaultdict(list)
    for r in records:
        out[r.type_id].append(r)
    return dict(sorted(out.items()))


def classify_triads_w3() -> list[dict]:
    """W(1,2)'s in the two-qubit doily grouped by observable distribution."""
    rows = []
    for t, rs in _group(classify(2)).items():
        r0 = rs[0]
        rows.append({
            "T": t,
            "OA": r0.distribution[0],
            "OB": r0.distribution[1],
            "Wl": sum(r.kind == "linear" for r in rs),
            "Wq": sum(r.kind == "quadratic" for r in rs),
        })
    return rows


def table3_rows() -> list[dict]:
    rows = []
    for t, rs in _group(classify(3)).items():
        r0 = rs[0]
        rows.append({
            "T": t,
            "C-": r0.neg_lines,
            "OA": r0.distribution[0],
            "OB": r0.distribution[1],
            "OC": r0.distribution[2],
            "Dl": sum(r.kind == "linear" for r in rs),
            "Dq": sum(r.kind == "quadratic" for r in rs),
        })
    return rows


TABLE4_ORDER = ("1", "2", "3", "4", "5", "6", "7", "8", "9A", "8'", "9B", "10", "11", "12", "13")


def table4_rows() -> list[dict]:
    """Residual Veldkamp outcomes per refined doily type; all members must agree."""
    by_label: dict[str, set] = defaultdict(set)
    for r in classify(3):
        by_label[r.label].add(tuple(sorted(Counter(r.residual).items())))
    rows = []
    for label in TABLE4_ORDER:
        sigs = by_label.get(label, set())
        if len(sigs) != 1:
            raise GeometryError(f"type {label} has {len(sigs)} residual signatures")
        counts = dict(next(iter(sigs)))
        rows.append({"T": label, **{c: counts.get(c, 0) for c in RESIDUAL_COLUMNS}})
    return rows


# Descriptions of the hyperplane carrying the trivial mark, as observable sets
# of the three-qubit space (``III`` stands for the quadric with w = 0).
GH_SELECTORS = {
    "ell: O=YYY": ("ell", lambda w: w == "YYY"),
    "hyp: all 9 O's featuring two Y's": ("hyp", lambda w: w.count("Y") == 2),
    "perp: all 27 O's of type C": ("perp", lambda w: w.count("I") == 0),
    "ell: all 27 O's featuring one Y": ("ell", lambda w: w.count("Y") == 1),
    "perp: all 27 O's of type B": ("perp", lambda w: w.count("I") == 1),
    "hyp: 26 O's having no Y + III": ("hyp", lambda w: w.count("Y") == 0),
    "perp: all 9 O's of type A": ("perp", lambda w: w.count("I") == 2),
}


def gh_selector_set(text: str) -> set[tuple[str, str]]:
    cls, pred = GH_SELECTORS[text]
    words = ("".join(t) for t in itertools.product("IXYZ", repeat=3))
    params = space(3).hyperbolic_parameters if cls == "hyp" else space(3).points
    allowed = {pauli.decode(w, 3) for w in params}
    return {(cls, w) for w in words if pred(w) and w in allowed}


def gh_column(rs: list[TaxonomyRecord]) -> str:
    """Render the composite-hyperplane column from the witnesses of a type."""
    if any(r.trivial for r in rs):
        if not all(r.trivial for r in rs):
            raise GeometryError("type mixes trivial and non-trivial subspaces")
        return "full W(5,2)"
    found = {(w.cls, pauli.decode(w.observable, 3)) for r in rs for w in r.witnesses if not w.trivial}
    if not found:
        return "---"
    if not all(r.composite for r in rs):
        raise GeometryError("type mixes composite and irreducible subspaces")
    for text in GH_SELECTORS:
        if gh_selector_set(text) == found:
            return text
    return "; ".join(f"{c}: {o}" for c, o in sorted(found))


def table5_rows() -> list[dict]:
    rows = []
    for t, rs in _group(classify(4)).items():
        r0 = rs[0]
        rows.append({
            "T": t,
            "C-": r0.neg_lines,
            "OA": r0.distribution[0],
            "OB": r0.distribution[1],
            "OC": r0.distribution[2],
            "OD": r0.distribution[3],
            "Wl": sum(r.kind == "linear" for r in rs),
            "Wq": sum(r.kind == "quadratic" for r in rs),
            "Int": r0.intersection,
            "GH": gh_column(rs),
        })
    return rows


def composite_census(n: int) -> dict[str, int]:
    """Non-trivial composite subspaces per hyperplane class of the witness."""
    out: Counter = Counter()
    for r in classify(n):
        for w in r.witnesses:
            if not w.trivial:
                out[w.cls] += 1
    return dict(out)


def composite_type_breakdown(n: int) -> dict[str, dict[str, int]]:
    """Hyperplane class -> refined type label -> number of lifts landing there."""
    out: dict[str, Counter] = defaultdict(Counter)
    for r in classify(n):
        for w in r.witnesses:
            if not w.trivial:
                out[w.cls][r.label] += 1
    return {k: dict(sorted(v.items())) for k, v in sorted(out.items())}


# ---- doily populations ------------------------------------------------------------


@lru_cache(maxsize=None)
def doilies() -> tuple[Doily, ...]:
    return tuple(Doily(r.subspace.points, 3) for r in classify(3))


@lru_cache(maxsize=None)
def _doily_matrix() -> np.ndarray:
    return membership_matrix([r.subspace for r in classify(3)]).astype(np.float32)


def doilies_containing(points) -> list[int]:
    """Indices (into :func:`classify` order) of doilies containing every point."""
    v = np.zeros(space(3).size, dtype=np.float32)
    v[list(points)] = 1
    hits = _doily_matrix() @ v
    return np.nonzero(hits == len(set(points)))[0].tolist()


@dataclass
class SharedHyperplane:
    points: tuple[int, ...]
    cls: str
    doilies: list[int]
    split: str
    patterns: Counter


def _centers(d: Doily, pts) -> list[int]:
    return [d.points[c] for c in d.centers(tuple(d.index[p] for p in pts))]


def doilies_sharing_hyperplane(points) -> SharedHyperplane:
    """The doilies containing a doily hyperplane, and the footing split among them.

    For every triad of the hyperplane that has a center off the hyperplane
    in some doily, look at those off-hyperplane centers per doily.  With one
    center per doily (ovoids, grids) the split is ``3+1`` when one center
    commutes with the other three and these pairwise anticommute.  Otherwise
    (perps) the doilies are split by whether the triad has off-hyperplane
    centers in them, which gives ``2+2`` or ``4+0``.
    """
    pts = tuple(sorted(points))
    idx = doilies_containing(pts)
    if len(idx) != 4:
        raise GeometryError(f"hyperplane lies in {len(idx)} doilies")
    ds = [doilies()[i] for i in idx]
    cls = ds[0].hyperplane_class(ds[0].to_mask(pts))
    H = set(pts)
    patterns: Counter = Counter()
    for t in itertools.combinations(pts, 3):
        if any(pauli.commute(a, b, 3) for a, b in itertools.combinations(t, 2)):
            continue
        cs = [[c for c in _centers(d, t) if c not in H] for d in ds]
        if not any(cs):
            continue
        if all(len(c) == 1 for c in cs):
            c = [x[0] for x in cs]
            deg = sorted(sum(pauli.commute(a, b, 3) for b in c if b != a) for a in c)
            patterns["3+1" if deg == [1, 1, 1, 3] else f"deg{deg}"] += 1
        else:
            k = sum(1 for c in cs if c)
            patterns[f"{k}+{4 - k}"] += 1
    split = next(iter(patterns)) if len(patterns) == 1 else "mixed"
    return SharedHyperplane(pts, cls, idx, split, patterns)


@lru_cache(maxsize=None)
def all_doily_hyperplanes() -> dict[tuple[int, ...], str]:
    out = {}
    for d in doilies():
        for h in d.hyperplanes:
            out[d.ambient(h.mask)] = h.cls
    return out


def shared_hyperplane_census() -> dict:
    """Containment counts over every (doily, hyperplane) pair, vectorised."""
    hps = all_doily_hyperplanes()
    keys = list(hps)
    H = np.zeros((space(3).size, len(keys)), dtype=np.float32)
    for k, pts in enumerate(keys):
        H[list(pts), k] = 1
    hits = _doily_matrix() @ H
    sizes = H.sum(axis=0)
    counts = (hits == sizes[None, :]).sum(axis=0)
    per_class: dict[str, Counter] = defaultdict(Counter)
    for k, pts in enumerate(keys):
        per_class[hps[pts]][int(counts[k])] += 1
    pairs = sum(len(d.hyperplanes) for d in doilies())
    return {"pairs": pairs, "distinct": len(keys), "containment": {c: dict(v) for c, v in per_class.items()}}


@dataclass
class PlanarTriad:
    triad: tuple[int, int, int]
    polar_plane: tuple[int, ...]
    distinguished: int
    complementary: list[tuple[int, int, int]]
    doilies: list[int]


def doily_from_triads(t, u) -> tuple[int, ...]:
    """Point set spanned by a triad and its three centers: ``t + u + {a+c}``."""
    return tuple(sorted(set(t) | set(u) | {a ^ c for a in t for c in u}))


def doilies_on_planar_triad(triad) -> PlanarTriad:
    """Four quadratic doilies through a tricentric triad spanning a plane."""
    n = 3
    t = tuple(sorted(triad))
    a, b, c = t
    if a ^ b ^ c == 0:
        raise ValueError("triad spans a line, not a plane")
    if any(pauli.commute(x, y, n) for x, y in itertools.combinations(t, 2)):
        raise ValueError("not a triad")
    S = space(n)
    polar = tuple(p for p in S.points if all(S.sigma[p, x] == 0 for x in t))
    if len(polar) != 7:
        raise GeometryError("polar of a plane must have seven points")
    dist = [p for p in polar if all(S.sigma[p, q] == 0 for q in polar)]
    if len(dist) != 1:
        raise GeometryError("polar plane must have exactly one distinguished point")
    d = dist[0]
    rest = [p for p in polar if p != d]
    index = population_index(3)
    comp, found = [], []
    for u in itertools.combinations(rest, 3):
        if any(pauli.commute(x, y, n) for x, y in itertools.combinations(u, 2)):
            continue
        s = index.get(doily_from_triads(t, u))
        if s is not None and s.kind == "quadratic":
            comp.append(u)
            found.append(s.points)
    recs = {r.subspace.points: r.index for r in classify(3)}
    return PlanarTriad(t, polar, d, comp, [recs[p] for p in found])


def planar_triads() -> list[tuple[int, int, int]]:
    """Tricentric triads of quadratic doilies that span a plane."""
    out = set()
    for r, d in zip(classify(3), doilies()):
        if r.kind != "quadratic":
            continue
        for tr in d.triads:
            if tr.tricentric:
                pts = tuple(d.points[i] for i in tr.points)
                if pts[0] ^ pts[1] ^ pts[2]:
                    out.add(pts)
    return sorted(out)


@dataclass
class TailReport:
    point: int
    negative_lines: list[tuple[int, int, int]]
    tail: tuple[int, int, int]
    doilies: dict[int, list[int]]
    types: Counter


def doily_tails(p: int) -> TailReport:
    """Negative lines through a type-B observable and the doilies hanging off the tail.

    Each observable of the all-B negative line through ``p`` has three
    negative B-C-C lines; their union is a perp-set of a doily, shared by
    four doilies in which that observable is a deep point.
    """
    n = 3
    if pauli.observable_type(p, n) != "B":
        raise ValueError("doily tails start at an observable of type B")
    S = space(n)
    through = [ln for ln in S.negative_lines if p in ln.points]
    tails = [ln for ln in through if S.line_type(ln) == "B-B-B"]
    if len(tails) != 1:
        raise GeometryError("expected exactly one all-B negative line")
    tail = tails[0]
    recs = classify(3)
    found = {}
    types: Counter = Counter()
    for q in tail.points:
        bcc = [ln for ln in S.negative_lines if q in ln.points and S.line_type(ln) == "C-C-B"]
        pts = {x for ln in bcc for x in ln.points}
        idx = doilies_containing(pts)
        found[q] = idx
        for i in idx:
            types[recs[i].label] += 1
    return TailReport(p, [ln.points for ln in through], tail.points, found, types)


# ---- statistics -------------------------------------------------------------------


def negative_planes_by_type(n: int = 4, composite_only: bool = False) -> dict[str, Counter]:
    recs = [r for r in classify(n) if (r.composite or r.trivial) or not composite_only]
    counts = negative_plane_counts([r.subspace for r in recs])
    out: dict[str, Counter] = defaultdict(Counter)
    for r, c in zip(recs, counts.tolist()):
        out[r.label][c] += 1
    return dict(out)


def order_signatures_by_type() -> dict[str, set[tuple[int, ...]]]:
    out: dict[str, set] = defaultdict(set)
    for r, d in zip(classify(3), doilies()):
        out[r.label].add(tuple(d.order_signature()))
    return dict(out)
