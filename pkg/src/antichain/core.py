"""Lattice points and posets of the simplices conv(e_1, ..., e_d, lambda).

For a partition ``lambda`` of ``n`` put ``m = n - 1``.  The fundamental
parallelepiped of the cone over the simplex has exactly ``m`` lattice
points, one for every ``b`` in ``0..m-1``::

    p(b) = (sum_t ceil(b*lambda_t/m) - b, ceil(b*lambda_1/m), ..., ceil(b*lambda_d/m))

and ``i < j`` relate iff ``p(i) + p(j-i) == p(j)``.  Everything here is
integer arithmetic; ``ceil(a/m)`` is spelled ``-(-a // m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import ScaleGuardError, ValidationError

MAX_N = 2**31
BRUTE_FORCE_LIMIT = 500


@dataclass(frozen=True)
class Partition:
    """Positive parts, stored weakly decreasing.

    Parts given in another order are sorted: permuting coordinates of
    ``lambda`` is a lattice isomorphism and leaves every ``p(b)`` intact up
    to the same permutation.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValidationError("a partition needs at least one part")
        if any(p < 1 for p in parts):
            raise ValidationError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))
        if sum(parts) >= MAX_N:
            raise ValidationError(f"n = {sum(parts)} exceeds the supported bound 2**31")

    @classmethod
    def of(cls, values: Iterable[int]) -> "Partition":
        return cls(tuple(values))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse a literal such as ``"8,2"`` or ``"3 3 9"``."""
        tokens = [t for t in text.replace(",", " ").split() if t]
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise ValidationError(f"malformed partition literal: {text!r}") from None
        return cls.of(values)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def d(self) -> int:
        return len(self.parts)

    @property
    def m(self) -> int:
        return self.n - 1

    @property
    def distinct(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.parts), reverse=True))

    def __str__(self):
        return ",".join(map(str, self.parts))


@dataclass(frozen=True)
class FppPoint:
    b: int
    height: int
    coords: tuple[int, ...]

    @property
    def vector(self) -> tuple[int, ...]:
        return (self.height,) + self.coords


@dataclass(frozen=True)
class ResidueTable:
    """Residues ``s[x][i] = i*x mod m`` for each distinct part value ``x``."""

    m: int
    distinct_parts: tuple[int, ...]
    s: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, lam: Partition) -> "ResidueTable":
        m = lam.m
        parts = lam.distinct
        if m == 0:
            return cls(0, parts, tuple(() for _ in parts))
        rows = tuple(tuple(i * x % m for i in range(m)) for x in parts)
        return cls(m, parts, rows)

    @cached_property
    def coprime(self) -> bool:
        return all(gcd(x, self.m) == 1 for x in self.distinct_parts)


@dataclass(frozen=True)
class FppPoset:
    """The poset on ``{1, ..., n-2}``; the zero element is left implicit."""

    n_minus_1: int
    relations: frozenset = field(default_factory=frozenset)
    covers: frozenset = field(default_factory=frozenset)

    @property
    def is_antichain(self) -> bool:
        return not self.relations

    @property
    def elements(self) -> range:
        return range(1, max(self.n_minus_1, 1))

    def minimal(self) -> list[int]:
        tops = {j for _, j in self.relations}
        return [e for e in self.elements if e not in tops]

    def maximal(self) -> list[int]:
        bottoms = {i for i, _ in self.relations}
        return [e for e in self.elements if e not in bottoms]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _require_volume(lam: Partition):
    if lam.n < 2:
        raise ValidationError(f"degenerate simplex: n = {lam.n} < 2 has no parallelepiped points")


def point_of(lam: Partition, b: int) -> FppPoint:
    _require_volume(lam)
    m = lam.m
    if not 0 <= b < m:
        raise ValidationError(f"index b={b} outside 0..{m - 1}")
    coords = tuple(_ceil_div(b * x, m) for x in lam.parts)
    return FppPoint(b, sum(coords) - b, coords)


def enumerate_fpp(lam: Partition) -> list[FppPoint]:
    _require_volume(lam)
    return [point_of(lam, b) for b in range(lam.m)]


def brute_force_fpp(lam: Partition) -> list[FppPoint]:
    """Independent enumeration of the parallelepiped's lattice points.

    Candidates are ``A @ (c_1/v, ..., c_d/v, c_{d+1}/v)`` with ``0 <= c < v``
    where ``A`` has columns ``(1, e_t)`` and ``(1, lambda)``.  A candidate is
    integral iff every coordinate is, so for each last coefficient the
    admissible ``c_t`` are collected coordinate by coordinate and only their
    product is tested for an integral height.  This visits the same test set
    without materialising all ``v**(d+1)`` vectors.
    """
    _require_volume(lam)
    v = lam.m
    if v > BRUTE_FORCE_LIMIT:
        raise ScaleGuardError(f"brute force limited to n-1 <= {BRUTE_FORCE_LIMIT}, got {v}")
    found = []
    for last in range(v):
        # coordinate t: (c_t + last * lambda_t) / v must be an integer
        per_value = {x: [c for c in range(v) if (c + last * x) % v == 0] for x in lam.distinct}
        options = [per_value[x] for x in lam.parts]
        for cs in product(*options):
            total = sum(cs) + last
            if total % v:
                continue
            coords = tuple((c + last * x) // v for c, x in zip(cs, lam.parts))
            found.append(FppPoint(last, total // v, coords))
    found.sort(key=lambda p: p.b)
    return found


def relates_lemma(lam: Partition, i: int, j: int) -> bool:
    if not i < j:
        return False
    pi, pk, pj = point_of(lam, i), point_of(lam, j - i), point_of(lam, j)
    return all(a + b == c for a, b, c in zip(pi.vector, pk.vector, pj.vector))


def _theorem_condition(si: int, sj: int, sk: int) -> bool:
    # sk is the residue at j - i
    return (si > sj > 0) or (si == 0 and sj == sk) or (sj == si > 0 and sk == 0)


def relates_theorem(res: ResidueTable, i: int, j: int) -> bool:
    if not i < j:
        return False
    k = j - i
    return all(_theorem_condition(row[i], row[j], row[k]) for row in res.s)


def relates_coprime(res: ResidueTable, i: int, j: int) -> bool:
    if not res.coprime:
        raise ValidationError("relates_coprime needs every part coprime to n-1; use relates_theorem")
    if not i < j:
        return False
    return all(row[i] > row[j] for row in res.s)


def _ordered_pairs(m: int):
    # j ascending, i ascending within j
    for j in range(2, m):
        for i in range(1, j):
            yield i, j


def is_antichain(lam: Partition) -> bool:
    if lam.m <= 1:
        return True
    res = ResidueTable.build(lam)
    relates = relates_coprime if res.coprime else relates_theorem
    return not any(relates(res, i, j) for i, j in _ordered_pairs(res.m))


def transitive_reduction(relations: set) -> set:
    above: dict[int, set] = {}
    for i, j in relations:
        above.setdefault(i, set()).add(j)
    covers = set()
    for i, j in relations:
        if not any(j in above.get(k, ()) for k in above.get(i, ())):
            covers.add((i, j))
    return covers


def build_poset(lam: Partition) -> FppPoset:
    _require_volume(lam)
    m = lam.m
    res = ResidueTable.build(lam)
    relates = relates_coprime if res.coprime else relates_theorem
    relations = {(i, j) for i, j in _ordered_pairs(m) if relates(res, i, j)}
    return FppPoset(m, frozenset(relations), frozenset(transitive_reduction(relations)))


def check_self_dual(poset: FppPoset) -> bool:
    """Check that ``x -> (n-1) - x`` reverses every relation."""
    m = poset.n_minus_1
    rel = poset.relations
    return all((m - j, m - i) in rel for i, j in rel)


# -- bitmask form, used by the bulk scan ----------------------------------------------


def pair_index(m: int, i: int, j: int) -> int:
    """Bit position of the pair ``(i, j)``; pairs with ``i >= j`` are never set."""
    return i * m + j


def relation_mask(m: int, x: int) -> int:
    """Pairs ``i < j`` of ``{1..m-1}`` that satisfy the per-part condition for ``x``.

    The relation set of a partition is the AND of the masks of its distinct
    parts, so a partition is antichain iff that AND is zero.
    """
    if m < 3:
        return 0
    idx = np.arange(m, dtype=np.int64)
    s = (idx * (x % m)) % m
    si = s[:, None]
    sj = s[None, :]
    sk = s[(idx[None, :] - idx[:, None]) % m]
    cond = ((si > sj) & (sj > 0)) | ((si == 0) & (sj == sk)) | ((sj == si) & (si > 0) & (sk == 0))
    upper = idx[:, None] < idx[None, :]
    cond &= upper
    cond[0, :] = False
    # bit (i*m + j) little-endian
    bits = np.packbits(cond.ravel(), bitorder="little")
    return int.from_bytes(bits.tobytes(), "little")


def relations_from_mask(m: int, mask: int) -> set:
    out = set()
    while mask:
        low = mask & -mask
        pos = low.bit_length() - 1
        out.add(divmod(pos, m))
        mask ^= low
    return out


def full_mask(m: int, parts: Sequence[int]) -> int:
    if m < 3:
        return 0
    mask = -1
    for x in set(parts):
        mask &= relation_mask(m, x)
        if not mask:
            break
    return mask
