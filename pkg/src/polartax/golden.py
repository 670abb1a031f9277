"""Reproduced taxonomy tables and their comparison against stored golden rows."""
from __future__ import annotations

import json
from importlib import resources

from . import taxonomy
from .doily import Doily
from .polar import GeometryError, space

TABLE_IDS = (1, 2, 3, 4, 5)


def load_golden(table_id: int) -> dict:
    if table_id not in TABLE_IDS:
        raise ValueError(f"no table {table_id}")
    text = resources.files("polartax.data").joinpath(f"table{table_id}.json").read_text()
    return json.loads(text)


def load_heptads() -> dict:
    return json.loads(resources.files("polartax.data").joinpath("heptads.json").read_text())


def table1_rows() -> list[dict]:
    d = Doily(space(2).points, 2)
    rows = []
    for t, row in d.veldkamp_summary().items():
        comps = row["compositions"]
        if len(comps) != 1:
            raise GeometryError(f"Veldkamp lines of type {t} mix hyperplane compositions")
        perps, ovoids, grids = next(iter(comps))
        rows.append({"Type": t, "Core": row["core"], "Perps": perps, "Ovoids": ovoids,
                     "Grids": grids, "#": row["count"]})
    return rows


_BUILDERS = {
    1: table1_rows,
    2: taxonomy.classify_triads_w3,
    3: taxonomy.table3_rows,
    4: taxonomy.table4_rows,
    5: taxonomy.table5_rows,
}


def columns(table_id: int) -> list[str]:
    return load_golden(table_id)["columns"]


def compute_table(table_id: int) -> list[dict]:
    if table_id not in _BUILDERS:
        raise ValueError(f"no table {table_id}")
    cols = columns(table_id)
    return [{c: r[c] for c in cols} for r in _BUILDERS[table_id]()]


def diff_rows(computed: list[dict], golden: list[dict]) -> list[str]:
    """Row-level differences; empty when the tables agree exactly."""
    out = []
    if len(computed) != len(golden):
        out.append(f"row count: computed {len(computed)}, golden {len(golden)}")
    for i, (c, g) in enumerate(zip(computed, golden)):
        if c != g:
            bad = sorted(k for k in set(c) | set(g) if c.get(k) != g.get(k))
            detail = ", ".join(f"{k}: {c.get(k)!r} != {g.get(k)!r}" for k in bad)
            out.append(f"row {i + 1} (T={g.get('T', g.get('Type'))}): {detail}")
    for i in range(len(golden), len(computed)):
        out.append(f"extra row {i + 1}: {computed[i]}")
    for i in range(len(computed), len(golden)):
        out.append(f"missing row {i + 1}: {golden[i]}")
    return out


def check_table(table_id: int, rows: list[dict] | None = None) -> tuple[list[dict], list[str]]:
    rows = compute_table(table_id) if rows is None else rows
    return rows, diff_rows(rows, load_golden(table_id)["rows"])
