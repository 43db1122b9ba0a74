"""On-disk cache of subgroup lattices.

Layout (little endian)::

    magic   8 bytes   b"RQLATT\\x00\\x01"
    version u16
    order   u32
    hash    32 bytes  sha256 of the multiplication table
    count   u32
    count x (u32 length, length x u32 sorted element indices)
    digest  32 bytes  sha256 of everything above

Files are named ``<order>-<hash prefix>.lat``.  A file that is truncated,
has a bad digest, a different version or a different table hash is a cache
miss and logs a warning.  Writes go to a temporary file and are renamed into
place, so concurrent writers of the same fingerprint never expose a partial
file.
"""

from __future__ import annotations

import hashlib
import logging
import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from ..group import GroupTable, SubgroupSet
from ..lattice import SubgroupLattice, enumerate_subgroups, lattice_from_subgroups

log = logging.getLogger(__name__)

MAGIC = b"RQLATT\x00\x01"
VERSION = 1
ENV_VAR = "ROQUETTE_CACHE_DIR"
CACHE_MIN_ORDER = 500
_HEADER = struct.Struct("<8sHI32sI")


def resolve_cache_dir(flag: str | os.PathLike | None) -> Path | None:
    """Flag wins over the environment variable; None disables caching."""
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def cache_path(cache_dir: Path, G: GroupTable) -> Path:
    return Path(cache_dir) / f"{G.order}-{G.table_hash[:16]}.lat"


def encode_lattice(L: SubgroupLattice) -> bytes:
    G = L.group
    parts = [_HEADER.pack(MAGIC, VERSION, G.order, bytes.fromhex(G.table_hash), len(L.subgroups))]
    for S in L.subgroups:
        parts.append(struct.pack("<I", S.order))
        parts.append(np.asarray(S.elements, dtype="<u4").tobytes())
    body = b"".join(parts)
    return body + hashlib.sha256(body).digest()


class CacheFormatError(ValueError):
    pass


def decode_lattice(data: bytes, G: GroupTable) -> SubgroupLattice:
    if len(data) < _HEADER.size + 32:
        raise CacheFormatError("file too short")
    body, digest = data[:-32], data[-32:]
    if hashlib.sha256(body).digest() != digest:
        raise CacheFormatError("digest mismatch (corrupt file)")
    magic, version, order, thash, count = _HEADER.unpack_from(body, 0)
    if magic != MAGIC:
        raise CacheFormatError("bad magic")
    if version != VERSION:
        raise CacheFormatError(f"version {version}, expected {VERSION}")
    if order != G.order or thash.hex() != G.table_hash:
        raise CacheFormatError("table hash mismatch")
    off = _HEADER.size
    subs = []
    for _ in range(count):
        (length,) = struct.unpack_from("<I", body, off)
        off += 4
        elems = np.frombuffer(body, dtype="<u4", count=length, offset=off).astype(np.int64)
        off += 4 * length
        if length == 0 or elems[0] != 0 or np.any(np.diff(elems) <= 0) or elems[-1] >= order:
            raise CacheFormatError("malformed subgroup record")
        subs.append(SubgroupSet(G, elems))
    if off != len(body):
        raise CacheFormatError("trailing bytes")
    return lattice_from_subgroups(G, subs)


def cache_store(L: SubgroupLattice, cache_dir: str | os.PathLike) -> Path:
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_path(cache_dir, L.group)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "wb") as fh:
        fh.write(encode_lattice(L))
    os.chmod(tmp, 0o644)
    os.replace(tmp, path)
    return path


def cache_load(G: GroupTable, cache_dir: str | os.PathLike) -> SubgroupLattice | None:
    path = cache_path(Path(cache_dir), G)
    if not path.exists():
        return None
    try:
        return decode_lattice(path.read_bytes(), G)
    except (CacheFormatError, struct.error, ValueError) as exc:
        log.warning("ignoring lattice cache %s: %s", path, exc)
        return None


def load_or_enumerate(G: GroupTable, cache_dir: str | os.PathLike | None = None,
                      min_order: int = CACHE_MIN_ORDER) -> tuple[SubgroupLattice, str]:
    """The lattice of G and where it came from (``cache``, ``enumerated`` or ``stored``).

    Groups smaller than ``min_order`` are always enumerated; enumeration is
    cheaper than disk I/O there.
    """
    cdir = resolve_cache_dir(cache_dir)
    if cdir is None or G.order < min_order:
        return enumerate_subgroups(G), "enumerated"
    L = cache_load(G, cdir)
    if L is not None:
        return L, "cache"
    L = enumerate_subgroups(G)
    cache_store(L, cdir)
    return L, "stored"
