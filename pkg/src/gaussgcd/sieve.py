"""Bulk tables indexed by ideal norm up to a bound X.

Three arrays drive every counting experiment in the package:

  r2[n]                number of lattice points (a, b) with a^2 + b^2 = n
                       (the sum-of-two-squares function; r2[n]/4 ideals)
  moebius_by_norm[n]   M(n) = sum of the ideal Moebius function over the
                       ideals of norm n
  ideal_count_prefix[n]  D(n) = number of nonzero ideals of norm <= n

r2 comes from direct lattice enumeration over canonical representatives,
M(n) from a linear sieve over prime-ideal norms (split p twice at norm p,
the ramified prime once at norm 2, inert p once at norm p^2), and D is the
prefix sum of r2/4.  The builder cross-validates a random sample of entries
against factorization-based recomputation before returning.
"""

from __future__ import annotations

import math
import random
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    CacheFormatError,
    CacheTruncatedError,
    CacheVersionError,
    DomainError,
    ScaleError,
    TableRangeError,
)
from .gaussian import GaussianInt, ideal_moebius, canonical_associate

XMAX_CAP = 10**8  # memory guard: 13 bytes/entry keeps X=1e8 around 1.3 GB

_MAGIC = b"GGLAB1"
_VERSION = 1
_HEADER = struct.Struct("<6sHQ")  # magic, version, xmax


@dataclass(eq=False)
class SieveTables:
    """Immutable-after-build norm tables; safe to share across threads."""

    xmax: int
    r2: np.ndarray  # uint32, index 0 unused
    moebius_by_norm: np.ndarray  # int8, index 0 unused
    ideal_count_prefix: np.ndarray  # uint64, D[0] = 0

    def ideal_count(self, y: int | float) -> int:
        """D(floor(y)): ideals of norm <= y."""
        if y > self.xmax:
            raise TableRangeError(f"y={y} exceeds table bound {self.xmax}")
        if y < 1:
            return 0
        return int(self.ideal_count_prefix[int(y)])

    def circle_sum(self, x: int) -> int:
        """Sum of r2[n] for n <= x: lattice points in the punctured disk of
        radius sqrt(x).  Exact; equals 4*D(x)."""
        if not 1 <= x <= self.xmax:
            raise TableRangeError(f"x={x} outside table range [1, {self.xmax}]")
        return 4 * int(self.ideal_count_prefix[x])

    def log_weighted_sum(self, x: int) -> float:
        """Sum of r2[n]/n for n <= x, compensated to full double precision."""
        if not 1 <= x <= self.xmax:
            raise TableRangeError(f"x={x} outside table range [1, {self.xmax}]")
        terms = self.r2[1 : x + 1] / np.arange(1, x + 1, dtype=np.float64)
        return math.fsum(terms.tolist())

    def save_cache(self, path: str | Path) -> None:
        """Write the fixed-width little-endian cache layout (see load_cache)."""
        x = self.xmax
        blob = b"".join(
            (
                _HEADER.pack(_MAGIC, _VERSION, x),
                self.r2[1 : x + 1].astype("<u4").tobytes(),
                self.moebius_by_norm[1 : x + 1].astype("<i1").tobytes(),
                self.ideal_count_prefix[1 : x + 1].astype("<u8").tobytes(),
            )
        )
        Path(path).write_bytes(blob)


def _rational_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0]


def _build_r2(x: int) -> np.ndarray:
    r2 = np.zeros(x + 1, dtype=np.uint32)
    for a in range(1, math.isqrt(x) + 1):
        b = np.arange(0, math.isqrt(x - a * a) + 1)
        np.add.at(r2, a * a + b * b, 4)  # 4 associates per canonical point
    return r2


def _build_moebius(x: int, primes: np.ndarray) -> np.ndarray:
    # Dirichlet-series product over prime ideals: multiplying the coefficient
    # array by (1 - q^-s) sends M[n] to M[n] - M[n/q] for q | n.
    m = np.zeros(x + 1, dtype=np.int16)
    m[1] = 1

    def apply_prime(q: int) -> None:
        m[q::q] -= m[1 : x // q + 1].copy()

    for p in primes:
        p = int(p)
        if p == 2:
            apply_prime(2)
        elif p % 4 == 1:
            apply_prime(p)
            apply_prime(p)
        elif p * p <= x:
            apply_prime(p * p)
    peak = int(np.abs(m).max())
    if peak > 127:
        raise OverflowError(f"|M| reached {peak}; int8 table layout needs X < ~1e8")
    return m.astype(np.int8)


def _r2_by_scan(n: int) -> int:
    count = 0
    for a in range(1, math.isqrt(n) + 1):
        b2 = n - a * a
        b = math.isqrt(b2)
        if b * b == b2:
            count += 1
    return 4 * count


def _moebius_by_factoring(n: int) -> int:
    total = 0
    for a in range(1, math.isqrt(n) + 1):
        b2 = n - a * a
        b = math.isqrt(b2)
        if b * b == b2:
            total += ideal_moebius(canonical_associate(GaussianInt(a, b)))
    return total


def _self_check(tables: SieveTables, sample_size: int = 24) -> None:
    rng = random.Random(0x5EED ^ tables.xmax)
    candidates = range(1, tables.xmax + 1)
    sample = (
        list(candidates)
        if tables.xmax <= sample_size
        else rng.sample(candidates, sample_size)
    )
    for n in sample:
        want_r2 = _r2_by_scan(n)
        if int(tables.r2[n]) != want_r2:
            raise AssertionError(f"r2[{n}] = {tables.r2[n]}, recomputation {want_r2}")
        want_m = _moebius_by_factoring(n)
        if int(tables.moebius_by_norm[n]) != want_m:
            raise AssertionError(
                f"M({n}) = {tables.moebius_by_norm[n]}, recomputation {want_m}"
            )


def build_tables(x: int, self_check: bool = True) -> SieveTables:
    """Build all norm tables up to x.

    r2 by lattice enumeration (O(x) time and memory), M by sieving over the
    canonical prime-ideal norms derived from rational primes <= x, D as the
    prefix sum of r2/4.  A sampled subset of both r2 and M is re-derived from
    factorization as a build-time cross-check.
    """
    if x < 1:
        raise DomainError("table bound must be >= 1")
    if x > XMAX_CAP:
        raise ScaleError(f"x={x} exceeds the configured table cap {XMAX_CAP}")
    r2 = _build_r2(x)
    moebius = _build_moebius(x, _rational_primes(x))
    prefix = np.zeros(x + 1, dtype=np.uint64)
    prefix[1:] = np.cumsum(r2[1:] // 4, dtype=np.uint64)
    tables = SieveTables(
        xmax=x, r2=r2, moebius_by_norm=moebius, ideal_count_prefix=prefix
    )
    if self_check:
        _self_check(tables)
    return tables


def peek_cache_xmax(path: str | Path) -> int:
    """Read just the header of a cache file and return its xmax."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
    if len(header) < _HEADER.size:
        raise CacheTruncatedError(f"{path}: header incomplete")
    magic, version, xmax = _HEADER.unpack(header)
    if magic != _MAGIC:
        raise CacheFormatError(f"{path}: bad magic bytes {magic!r}")
    if version != _VERSION:
        raise CacheVersionError(f"{path}: version {version}, expected {_VERSION}")
    if xmax < 1:
        raise CacheFormatError(f"{path}: nonsensical xmax {xmax}")
    return int(xmax)


def load_cache(path: str | Path) -> SieveTables:
    """Load tables saved by save_cache, validating the header and size.

    Layout: 16-byte header (magic "GGLAB1", uint16 version, uint64 xmax,
    little-endian) followed by X uint32 r2 entries, X int8 M entries and
    X uint64 D entries for n = 1..X.
    """
    x = peek_cache_xmax(path)
    blob = Path(path).read_bytes()
    body = blob[_HEADER.size :]
    sizes = (4 * x, x, 8 * x)
    if len(body) < sum(sizes):
        raise CacheTruncatedError(
            f"{path}: payload {len(body)} bytes, expected {sum(sizes)}"
        )
    if len(body) > sum(sizes):
        raise CacheFormatError(f"{path}: trailing bytes after payload")
    off = 0
    arrays = []
    for size, dtype in zip(sizes, ("<u4", "<i1", "<u8")):
        arrays.append(np.frombuffer(body[off : off + size], dtype=dtype))
        off += size
    r2 = np.zeros(x + 1, dtype=np.uint32)
    r2[1:] = arrays[0]
    moebius = np.zeros(x + 1, dtype=np.int8)
    moebius[1:] = arrays[1]
    prefix = np.zeros(x + 1, dtype=np.uint64)
    prefix[1:] = arrays[2]
    return SieveTables(
        xmax=x, r2=r2, moebius_by_norm=moebius, ideal_count_prefix=prefix
    )


def tables_equal(a: SieveTables, b: SieveTables) -> bool:
    return (
        a.xmax == b.xmax
        and np.array_equal(a.r2, b.r2)
        and np.array_equal(a.moebius_by_norm, b.moebius_by_norm)
        and np.array_equal(a.ideal_count_prefix, b.ideal_count_prefix)
    )
