"""On-disk cache of (g(d), h(d)) in shards of 1000 determinants.

A shard file is a small header (magic, format version, shard index, count)
followed by count pairs of little-endian int64. Files are written to a
temporary name and renamed into place, so readers never see partial shards.
"""
from __future__ import annotations

import csv
import os
import struct
import tempfile
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

MAGIC = b"TQGC"
VERSION = 1
SHARD = 1000
_HEADER = struct.Struct("<4sIII")


def shard_of(d: int) -> int:
    return (d - 1) // SHARD


def shard_range(k: int) -> range:
    return range(k * SHARD + 1, (k + 1) * SHARD + 1)


def encode(k: int, rows: np.ndarray) -> bytes:
    rows = np.ascontiguousarray(rows, dtype="<i8")
    return _HEADER.pack(MAGIC, VERSION, k, len(rows)) + rows.tobytes()


def decode(blob: bytes) -> tuple[int, np.ndarray]:
    if len(blob) < _HEADER.size:
        raise ValueError("truncated shard")
    magic, version, k, n = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise ValueError("not a genus cache shard")
    if version != VERSION:
        raise ValueError(f"shard format version {version}, expected {VERSION}")
    body = blob[_HEADER.size:]
    if len(body) != 16 * n:
        raise ValueError("truncated shard")
    return k, np.frombuffer(body, dtype="<i8").reshape(n, 2).copy()


class GenusCache:
    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None
        if self.root:
            self.root.mkdir(parents=True, exist_ok=True)

    def path(self, k: int) -> Path:
        assert self.root is not None
        return self.root / f"gh_{k:06d}.bin"

    def load(self, k: int) -> np.ndarray | None:
        if not self.root:
            return None
        p = self.path(k)
        if not p.exists():
            return None
        try:
            kk, rows = decode(p.read_bytes())
        except ValueError:
            return None
        return rows if kk == k and len(rows) == SHARD else None

    def save(self, k: int, rows: np.ndarray) -> None:
        if not self.root:
            return
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp_")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(encode(k, rows))
            os.replace(tmp, self.path(k))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def shard(self, k: int, compute: Callable[[int], tuple[int, int]]) -> np.ndarray:
        rows = self.load(k)
        if rows is None:
            rows = np.array([compute(d) for d in shard_range(k)], dtype=np.int64)
            self.save(k, rows)
        return rows

    def export_csv(self, out: str | os.PathLike, shards: Iterable[int] | None = None) -> int:
        if not self.root:
            raise ValueError("no cache directory")
        ks = sorted(shards) if shards is not None else sorted(
            int(p.stem.split("_")[1]) for p in self.root.glob("gh_*.bin"))
        n = 0
        with open(out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["d", "g", "h"])
            for k in ks:
                rows = self.load(k)
                if rows is None:
                    continue
                for d, (g, h) in zip(shard_range(k), rows):
                    w.writerow([d, int(g), int(h)])
                    n += 1
        return n
