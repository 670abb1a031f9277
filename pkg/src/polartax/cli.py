"""Command-line front end: censuses, golden-table checks, queries and exports.

Exit codes: 0 success (or table matches golden), 1 golden mismatch,
2 usage error (bad flags, unparsable observables, wrong rank).
"""
from __future__ import annotations

import argparse
import csv
import io
import sys

from . import conwell, golden, pauli, store, taxonomy
from .doily import Doily, NotADoily
from .polar import space
from .subspaces import negative_planes

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---- helpers -----------------------------------------------------------------------


def _points(text: str, n: int | None = None) -> list[int]:
    words = [w.strip() for w in text.split(",") if w.strip()]
    if not words:
        raise UsageError("no observables given")
    try:
        pts = pauli.parse_many(words)
    except pauli.PauliError as exc:
        raise UsageError(str(exc)) from None
    ranks = {len(w) for w in words}
    if len(ranks) != 1 or (n is not None and ranks != {n}):
        raise UsageError(f"observables must all have {n or 'the same number of'} qubits")
    return pts


def _labels(pts, n: int) -> list[str]:
    return [pauli.decode(p, n) for p in pts]


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="raise")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _emit(args, text: str, manifest: store.RunManifest) -> None:
    if args.out:
        manifest.outputs[str(args.out)] = store.write_text(args.out, text)
        store.write_text(f"{args.out}.manifest.json", store.canonical_json(manifest.to_json()))
    else:
        sys.stdout.write(text)


def _records(n: int, args) -> tuple[list[dict], dict]:
    """Record dicts and cached tables for rank ``n``, through the cache when one is configured."""
    path = store.cache_path(n, getattr(args, "cache", None))
    if path is not None:
        data = store.load_records(path, n)
        if data is not None:
            return data["records"], data["tables"]
    recs = [r.to_json() for r in taxonomy.classify(n, jobs=getattr(args, "jobs", 1))]
    tables = {}
    for tid, tn in ((3, 3), (4, 3), (5, 4)):
        if tn == n:
            tables[str(tid)] = golden.compute_table(tid)
    if path is not None:
        store.save_records(path, n, recs, tables)
    return recs, tables


def _quadric(text: str) -> int:
    """Quadric parameter from its label; ``III`` is the parameter-free form."""
    if len(text) != 3:
        raise UsageError("quadric label must have three letters")
    if set(text) == {"I"}:
        return 0
    return _points(text, 3)[0]


def _doily_arg(args) -> Doily:
    if args.points:
        try:
            return Doily(_points(args.points, 3), 3)
        except NotADoily as exc:
            raise UsageError(f"not a doily: {exc}") from None
    if args.doily is None:
        raise UsageError("give --doily <index> or --points")
    recs = taxonomy.classify(3, jobs=args.jobs)
    if not 0 <= args.doily < len(recs):
        raise UsageError(f"doily index must be in 0..{len(recs) - 1}")
    return taxonomy.doilies()[args.doily]


def _doily_json(d: Doily) -> dict:
    idx = {r.subspace.points: r for r in taxonomy.classify(3)}
    r = idx.get(d.points)
    return {
        "index": None if r is None else r.index,
        "type": None if r is None else r.label,
        "points": d.labels(),
    }


# ---- commands ------------------------------------------------------------------------


def space_info(n: int) -> dict:
    S = space(n)
    return {
        "n": n,
        "points": len(S.points),
        "lines": len(S.lines),
        "generators": len(S.generators),
        "negative_lines": len(S.negative_lines),
        "negative_lines_by_type": S.negative_line_census(),
        "quadrics": dict(zip(("hyperbolic", "elliptic"), S.quadric_census())),
        "negative_planes": negative_planes(n=n),
    }


def cmd_space_info(args, manifest) -> int:
    if args.n not in (2, 3, 4):
        raise UsageError("--n must be 2, 3 or 4")
    _emit(args, store.canonical_json(space_info(args.n)), manifest)
    return EXIT_OK


def cmd_table(args, manifest) -> int:
    tid = args.id
    rows = None
    if tid in (3, 4, 5):
        _, tables = _records(4 if tid == 5 else 3, args)
        rows = tables.get(str(tid))
    rows, diff = golden.check_table(tid, rows)
    cols = golden.columns(tid)
    text = _csv(rows, cols) if args.format == "csv" else store.canonical_json({"table": tid, "columns": cols, "rows": rows})
    _emit(args, text, manifest)
    if diff:
        sys.stderr.write(f"table {tid}: {len(diff)} difference(s) from golden\n")
        for line in diff:
            sys.stderr.write(f"  {line}\n")
        return EXIT_MISMATCH
    sys.stderr.write(f"table {tid}: matches golden ({len(rows)} rows)\n")
    return EXIT_OK


def query_result(args) -> dict:
    kind = args.kind
    recs = taxonomy.classify(3, jobs=args.jobs) if kind != "heptads" else None
    if kind == "shared-hyperplane":
        pts = _points(args.points or "", 3)
        if tuple(sorted(pts)) not in taxonomy.all_doily_hyperplanes():
            raise UsageError("points are not a hyperplane of any doily")
        sh = taxonomy.doilies_sharing_hyperplane(pts)
        return {
            "hyperplane": _labels(sh.points, 3),
            "class": sh.cls,
            "split": sh.split,
            "triad_patterns": dict(sorted(sh.patterns.items())),
            "doilies": [{"index": i, "type": recs[i].label, "kind": recs[i].kind} for i in sh.doilies],
        }
    if kind == "planar-triad":
        pts = _points(args.points or "", 3)
        if len(pts) != 3:
            raise UsageError("a triad has three observables")
        try:
            pt = taxonomy.doilies_on_planar_triad(pts)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return {
            "triad": _labels(pt.triad, 3),
            "polar_plane": _labels(pt.polar_plane, 3),
            "distinguished": pauli.decode(pt.distinguished, 3),
            "complementary_triads": [_labels(u, 3) for u in pt.complementary],
            "doilies": [{"index": i, "type": recs[i].label} for i in pt.doilies],
        }
    if kind == "tails":
        pts = _points(args.points or "", 3)
        if len(pts) != 1:
            raise UsageError("tails take a single observable")
        try:
            rep = taxonomy.doily_tails(pts[0])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return {
            "point": pauli.decode(rep.point, 3),
            "negative_lines": [_labels(ln, 3) for ln in rep.negative_lines],
            "tail": _labels(rep.tail, 3),
            "doilies": {pauli.decode(q, 3): [{"index": i, "type": recs[i].label} for i in idx]
                        for q, idx in rep.doilies.items()},
            "types": dict(sorted(rep.types.items())),
        }
    if kind == "heptads":
        try:
            return conwell.heptad_report(_quadric(args.quadric))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if kind in ("deep-points", "order-signature"):
        d = _doily_arg(args)
        out = _doily_json(d)
        if kind == "deep-points":
            deep, zero = d.deep_and_zero_points()
            out.update(deep=_labels(deep, 3), zero=_labels(zero, 3))
        else:
            out.update(signature=d.order_signature(), orders=dict(zip(d.labels(), d.orders)))
        return out
    if kind == "doily":
        d = _doily_arg(args)
        out = _doily_json(d)
        out.update(
            negative_lines=d.negative_line_count(),
            hyperplanes=d.hyperplane_census(),
            residual=d.residual_signature(),
        )
        return out
    raise UsageError(f"unknown query {kind}")


def cmd_query(args, manifest) -> int:
    _emit(args, store.canonical_json(query_result(args)), manifest)
    return EXIT_OK


def doily_dot(d: Doily) -> str:
    lines = ["graph doily {", "  node [shape=circle, fontsize=9];"]
    for lab in d.labels():
        lines.append(f'  "{lab}";')
    for k, ln in enumerate(sorted(d.lines)):
        a, b, c = ln.labels(d.n)
        style = "bold" if ln.sign < 0 else "solid"
        lines.append(f"  subgraph line_{k + 1} {{ edge [style={style}]; \"{a}\" -- \"{b}\" -- \"{c}\"; }}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export(args, manifest) -> int:
    what, fmt = args.what, args.format
    if what.startswith("table"):
        tid = int(what[5:])
        if fmt == "dot":
            raise UsageError("tables export as json or csv")
        rows = golden.compute_table(tid)
        cols = golden.columns(tid)
        text = _csv(rows, cols) if fmt == "csv" else store.canonical_json({"table": tid, "columns": cols, "rows": rows})
    elif what == "records":
        if args.n not in (3, 4):
            raise UsageError("records exist for --n 3 and --n 4")
        recs, _ = _records(args.n, args)
        if args.kind != "all":
            recs = [r for r in recs if r["kind"] == args.kind]
        if fmt == "dot":
            raise UsageError("records export as json or csv")
        if fmt == "csv":
            cols = ["index", "type", "kind", "neg_lines", "distribution", "intersection", "points"]
            rows = [{**{c: r[c] for c in cols}, "distribution": " ".join(map(str, r["distribution"])),
                     "points": " ".join(r["points"])} for r in recs]
            text = _csv(rows, cols)
        else:
            text = store.canonical_json({"n": args.n, "kind": args.kind, "records": recs})
    elif what == "doily":
        d = _doily_arg(args)
        if fmt == "csv":
            raise UsageError("a doily exports as json or dot")
        text = doily_dot(d) if fmt == "dot" else store.canonical_json(
            {**_doily_json(d), "lines": [{"points": ln.labels(3), "sign": ln.sign} for ln in sorted(d.lines)]})
    elif what == "heptads":
        quad = _quadric(args.quadric)
        if fmt == "dot":
            hs = conwell.conwell_heptads(quad)
            if not 1 <= args.heptad <= len(hs):
                raise UsageError(f"--heptad must be in 1..{len(hs)}")
            text = conwell.heptad_dot(hs[args.heptad - 1])
        elif fmt == "json":
            text = store.canonical_json(conwell.heptad_report(quad))
        else:
            raise UsageError("heptads export as json or dot")
    else:
        raise UsageError(f"unknown export {what}")
    _emit(args, text, manifest)
    return EXIT_OK


# ---- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polartax", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result here (plus a .manifest.json next to it)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for classification")
    common.add_argument("--cache", help=f"record cache file (default from ${store.CACHE_ENV})")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("space-info", parents=[common], help="census of W(2N-1,2)")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_space_info)

    t = sub.add_parser("table", parents=[common], help="reproduce a table and diff it against golden")
    t.add_argument("id", type=int, choices=golden.TABLE_IDS)
    t.add_argument("--format", choices=("json", "csv"), default="json")
    t.set_defaults(func=cmd_table)

    q = sub.add_parser("query", parents=[common], help="structural queries on three-qubit doilies")
    q.add_argument("kind", choices=("shared-hyperplane", "planar-triad", "tails", "heptads",
                                    "deep-points", "order-signature", "doily"))
    q.add_argument("--points", help="comma-separated observables")
    q.add_argument("--doily", type=int, help="doily index in classification order")
    q.add_argument("--quadric", default="III", help="hyperbolic quadric label (heptads)")
    q.set_defaults(func=cmd_query)

    e = sub.add_parser("export", parents=[common], help="write tables, records, doilies or heptads")
    e.add_argument("what", choices=("table1", "table2", "table3", "table4", "table5",
                                    "records", "doily", "heptads"))
    e.add_argument("--format", choices=("json", "csv", "dot"), default="json")
    e.add_argument("--n", type=int, default=3)
    e.add_argument("--kind", choices=("linear", "quadratic", "all"), default="all")
    e.add_argument("--points")
    e.add_argument("--doily", type=int)
    e.add_argument("--quadric", default="III")
    e.add_argument("--heptad", type=int, default=1, help="heptad number for DOT export")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    params = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    manifest = store.RunManifest(args.command, params)
    try:
        with store.Timer() as tm:
            code = args.func(args, manifest)
    except UsageError as exc:
        sys.stderr.write(f"polartax: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"polartax: cannot write output: {exc}\n")
        return EXIT_USAGE
    manifest.elapsed = tm.elapsed
    if args.out:
        store.write_text(f"{args.out}.manifest.json", store.canonical_json(manifest.to_json()))
    return code


if __name__ == "__main__":
    sys.exit(main())
