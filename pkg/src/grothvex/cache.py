"""On-disk cache of Grothendieck polynomials, one JSON file per permutation."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

from .core import Permutation
from .poly import MultiPoly, grothendieck, seed_grothendieck

log = logging.getLogger(__name__)

ENV_VAR = "GROTH_CACHE_DIR"
FORMAT = "grothvex-poly-v1"


def resolve_dir(cache_dir: str | os.PathLike | None) -> Path | None:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(cache_dir) if cache_dir else None


def entry_path(directory: Path, w: Permutation) -> Path:
    key = hashlib.sha256(f"{FORMAT}:{w}".encode()).hexdigest()
    return directory / f"{key}.json"


def load(directory: Path, w: Permutation) -> MultiPoly | None:
    path = entry_path(directory, w)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
        if data.get("format") != FORMAT or data.get("w") != list(w.entries):
            raise ValueError("entry does not match the requested permutation")
        return MultiPoly.from_json(data["poly"])
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("corrupt cache entry %s (%s); recomputing", path.name, exc)
        return None


def store(directory: Path, w: Permutation, poly: MultiPoly):
    directory.mkdir(parents=True, exist_ok=True)
    path = entry_path(directory, w)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps({"format": FORMAT, "w": list(w.entries), "poly": poly.to_json()}))
    tmp.replace(path)


def cached_grothendieck(w: Permutation, cache_dir=None) -> MultiPoly:
    directory = resolve_dir(cache_dir)
    if directory is None:
        return grothendieck(w)
    hit = load(directory, w)
    if hit is not None:
        seed_grothendieck(w, hit)
        return hit
    poly = grothendieck(w)
    store(directory, w, poly)
    return poly


def clear(cache_dir=None) -> int:
    directory = resolve_dir(cache_dir)
    if directory is None or not directory.exists():
        return 0
    removed = 0
    for path in directory.glob("*.json"):
        path.unlink()
        removed += 1
    return removed
