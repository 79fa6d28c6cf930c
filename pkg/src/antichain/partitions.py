"""Partitions of n and the part / relprime / rpac census.

``scan`` counts, for a given ``n``:

* ``part``     -- all partitions of ``n``
* ``relprime`` -- partitions whose every part is coprime to ``n - 1``
* ``rpac``     -- relprime partitions whose simplex is antichain

Two engines produce identical rows.  ``"stream"`` walks every partition
from :func:`iter_partitions` and tests it.  ``"pruned"`` (the default)
descends part by part while carrying the AND of the per-part relation
bitmasks; once that AND is zero, or a non-coprime part appears, the
remaining completions are counted from partition-number tables instead of
being visited.  n = 73 takes seconds instead of hours this way.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from itertools import islice, repeat
from math import gcd
from typing import Iterator, Sequence

from .core import Partition, is_antichain, relation_mask
from .errors import ValidationError

log = logging.getLogger(__name__)

TESTED_MAX_N = 73
CHUNK = 4096


@dataclass(frozen=True)
class ScanRow:
    n: int
    part: int
    relprime: int
    rpac: int

    def __add__(self, other: "ScanRow") -> "ScanRow":
        if other.n != self.n:
            raise ValueError("cannot add rows for different n")
        return ScanRow(self.n, self.part + other.part, self.relprime + other.relprime, self.rpac + other.rpac)


def _reverse_lex(n: int) -> Iterator[tuple[int, ...]]:
    # ZS1 (Zoghbi & Stojmenovic); a is reused, so callers copy the prefix
    a = [1] * n
    a[0] = n
    m, h = 1, 1
    yield (n,)
    while a[0] != 1:
        if a[h - 1] == 2:
            m += 1
            a[h - 1] = 1
            h -= 1
        else:
            r = a[h - 1] - 1
            t = m - h + 1
            a[h - 1] = r
            while t >= r:
                h += 1
                a[h - 1] = r
                t -= r
            if t == 0:
                m = h
            else:
                m = h + 1
                if t > 1:
                    h += 1
                    a[h - 1] = t
        yield tuple(a[:m])


def iter_partitions(n: int) -> Iterator[Partition]:
    """Yield every partition of ``n`` once, in reverse lexicographic order."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    for parts in _reverse_lex(n):
        yield Partition(parts)


def is_relprime(lam: Partition) -> bool:
    m = lam.m
    return all(gcd(x, m) == 1 for x in lam.distinct)


# -- stream engine ---------------------------------------------------------------------


def _count_chunk(n: int, chunk: Sequence[tuple[int, ...]]) -> ScanRow:
    part = relprime = rpac = 0
    for parts in chunk:
        lam = Partition(parts)
        part += 1
        if is_relprime(lam):
            relprime += 1
            rpac += is_antichain(lam)
    return ScanRow(n, part, relprime, rpac)


def _scan_stream(n: int, workers: int) -> ScanRow:
    gen = _reverse_lex(n)
    chunks = iter(lambda: list(islice(gen, CHUNK)), [])
    row = ScanRow(n, 0, 0, 0)
    if workers <= 1:
        for chunk in chunks:
            row = row + _count_chunk(n, chunk)
        return row
    with ProcessPoolExecutor(workers) as pool:
        for sub in pool.map(_count_chunk, repeat(n), chunks):
            row = row + sub
    return row


# -- pruned engine ---------------------------------------------------------------------


class _Tables:
    """Counting tables and relation masks for one ``n``."""

    def __init__(self, n: int):
        self.n = n
        m = n - 1
        self.coprime = [False] + [gcd(x, m) == 1 for x in range(1, n + 1)]
        # by_max[b][r]: partitions of r with parts <= b; rel[b][r]: same, parts coprime
        self.by_max = [[1] + [0] * n]
        self.rel = [[1] + [0] * n]
        for b in range(1, n + 1):
            prev, prev_rel = self.by_max[-1], self.rel[-1]
            row, row_rel = prev[:], prev_rel[:]
            for r in range(b, n + 1):
                row[r] += row[r - b]
                if self.coprime[b]:
                    row_rel[r] += row_rel[r - b]
            self.by_max.append(row)
            self.rel.append(row_rel)
        self.masks = [0] + [relation_mask(m, x) for x in range(1, n + 1)] if m >= 3 else None


def _branch(t: _Tables, rem: int, y: int, mask: int, acc: list):
    """Partitions of ``rem`` with largest part exactly ``y``; earlier parts were coprime."""
    P, C = t.by_max, t.rel
    if not t.coprime[y]:
        acc[0] += P[y][rem] - P[y - 1][rem]
        return
    nm = mask & t.masks[y] if t.masks is not None else 0
    if not nm:
        k = C[y][rem] - C[y - 1][rem]
        acc[0] += P[y][rem] - P[y - 1][rem]
        acc[1] += k
        acc[2] += k
        return
    for r in range(rem - y, -1, -y):
        if r == 0:
            acc[0] += 1
            acc[1] += 1
        else:
            for z in range(min(r, y - 1), 0, -1):
                _branch(t, r, z, nm, acc)


def _scan_tops(n: int, tops: Sequence[int]) -> ScanRow:
    """Census restricted to partitions whose largest part lies in ``tops``."""
    t = _Tables(n)
    acc = [0, 0, 0]
    for y in tops:
        _branch(t, n, y, -1, acc)
    return ScanRow(n, *acc)


def _scan_pruned(n: int, workers: int) -> ScanRow:
    tops = list(range(n, 0, -1))
    if workers <= 1:
        return _scan_tops(n, tops)
    groups = [tops[w::workers] for w in range(workers)]
    row = ScanRow(n, 0, 0, 0)
    with ProcessPoolExecutor(workers) as pool:
        for sub in pool.map(_scan_tops, [n] * workers, groups):
            row = row + sub
    return row


def scan(n: int, workers: int = 1, engine: str = "pruned") -> ScanRow:
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if n > TESTED_MAX_N:
        log.warning("n=%d is beyond the tested range 1..%d", n, TESTED_MAX_N)
    workers = max(1, int(workers))
    if engine == "pruned":
        return _scan_pruned(n, workers)
    if engine == "stream":
        return _scan_stream(n, workers)
    raise ValidationError(f"unknown scan engine {engine!r}")


def _decimal6(value: Fraction) -> str:
    return format(Decimal(value.numerator) / Decimal(value.denominator), ".6f")


UNDEFINED = "NA"


def ratios(rows: Sequence[ScanRow]) -> list[tuple[int, str, str]]:
    """``(n, relprime/part, rpac/relprime)`` rendered with six decimals."""
    out = []
    for row in rows:
        rp = _decimal6(Fraction(row.relprime, row.part)) if row.part else UNDEFINED
        ac = _decimal6(Fraction(row.rpac, row.relprime)) if row.relprime else UNDEFINED
        out.append((row.n, rp, ac))
    return out

