"""Deterministic JSON persistence, digests and run manifests."""
from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__

CACHE_ENV = "POLARTAX_CACHE_DIR"
CACHE_FORMAT = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def digest(obj) -> str:
    text = obj if isinstance(obj, str) else canonical_json(obj)
    return hashlib.sha256(text.encode()).hexdigest()


def write_text(path: str | os.PathLike, text: str) -> str:
    """Write ``text`` and return its sha256."""
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text)
    return digest(text)


@dataclass
class RunManifest:
    command: str
    parameters: dict
    version: str = __version__
    elapsed: float = 0.0
    outputs: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = round(time.perf_counter() - self.start, 3)


# ---- record cache -----------------------------------------------------------------


def cache_path(n: int, explicit: str | None = None) -> Path | None:
    """Resolve the cache file: explicit path, else ``$POLARTAX_CACHE_DIR``, else none."""
    if explicit:
        return Path(explicit)
    d = os.environ.get(CACHE_ENV)
    if d:
        return Path(d) / f"records-n{n}-v{__version__}.json"
    return None


def records_payload(n: int, records: list[dict], tables: dict | None = None) -> dict:
    return {
        "format": CACHE_FORMAT,
        "version": __version__,
        "n": n,
        "records": records,
        "tables": tables or {},
    }


def save_records(path, n: int, records: list[dict], tables: dict | None = None) -> str:
    return write_text(path, canonical_json(records_payload(n, records, tables)))


def load_records(path, n: int) -> dict | None:
    """Cached payload for rank ``n``, or ``None`` when absent or stale."""
    p = Path(path)
    if not p.exists():
        return None
    try:
        data = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("format") != CACHE_FORMAT or data.get("version") != __version__ or data.get("n") != n:
        return None
    return data
