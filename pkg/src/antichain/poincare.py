"""Bar-complex dimensions, Betti numbers and Poincare series.

Series are graded by homological degree (``z``) and height (``t``); the
full multidegree is only kept inside :func:`bar_betti_small`.

The algebra spanned by the parallelepiped points multiplies ``e_s * e_u =
e_{s+u}`` when ``s + u`` is again a parallelepiped point and ``0``
otherwise.  After tensoring the normalized bar resolution with the ground
field, degree ``i`` is spanned by words ``d_1 | ... | d_i`` of nonzero
points and the differential merges neighbours::

    d(d_1|...|d_i) = sum_{j=1}^{i-1} (-1)^j  d_1|...|d_j*d_{j+1}|...|d_i

For an antichain simplex every merge vanishes, so Betti numbers equal word
counts and the series is ``1 / (1 - z * sum_s t^height(s))``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .core import Partition, enumerate_fpp, is_antichain
from .errors import ScaleGuardError, ValidationError

MAX_Z = 8
MAX_T = 64
BETTI_MAX_Z = 4
BETTI_MAX_POINTS = 12


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients ``coeffs[i][h]`` of ``z^i t^h`` for ``i <= z_order``, ``h <= t_degree``."""

    z_order: int
    t_degree: int
    coeffs: tuple[tuple[int, ...], ...]

    @classmethod
    def zero(cls, z_order: int, t_degree: int) -> "TruncatedSeries":
        return cls(z_order, t_degree, tuple((0,) * (t_degree + 1) for _ in range(z_order + 1)))

    @classmethod
    def from_terms(cls, terms: dict, z_order: int, t_degree: int) -> "TruncatedSeries":
        """Series from ``{(i, h): c}``; terms beyond the truncation are dropped."""
        rows = [[0] * (t_degree + 1) for _ in range(z_order + 1)]
        for (i, h), c in terms.items():
            if i <= z_order and h <= t_degree:
                rows[i][h] += c
        return cls(z_order, t_degree, tuple(map(tuple, rows)))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, h = key
        return self.coeffs[i][h]

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        zo = min(self.z_order, other.z_order)
        td = min(self.t_degree, other.t_degree)
        rows = [[0] * (td + 1) for _ in range(zo + 1)]
        for i1 in range(zo + 1):
            for h1 in range(td + 1):
                c1 = self.coeffs[i1][h1]
                if not c1:
                    continue
                for i2 in range(zo + 1 - i1):
                    row2 = other.coeffs[i2]
                    out = rows[i1 + i2]
                    for h2 in range(td + 1 - h1):
                        if row2[h2]:
                            out[h1 + h2] += c1 * row2[h2]
        return TruncatedSeries(zo, td, tuple(map(tuple, rows)))

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse of a series with constant term 1."""
        if self.coeffs[0][0] != 1:
            raise ValidationError("only series with constant term 1 are inverted")
        zo, td = self.z_order, self.t_degree
        inv = [[0] * (td + 1) for _ in range(zo + 1)]
        # solve sum_{a+b=(i,h)} self[a] * inv[b] = [i == h == 0] in graded order
        for i in range(zo + 1):
            for h in range(td + 1):
                acc = 1 if i == h == 0 else 0
                for i1 in range(i + 1):
                    for h1 in range(h + 1):
                        if (i1, h1) == (0, 0):
                            continue
                        c = self.coeffs[i1][h1]
                        if c:
                            acc -= c * inv[i - i1][h - h1]
                inv[i][h] = acc
        return TruncatedSeries(zo, td, tuple(map(tuple, inv)))

    def nonzero(self) -> dict:
        return {(i, h): c for i, row in enumerate(self.coeffs) for h, c in enumerate(row) if c}


def _guard(z_order: int, t_degree: int):
    if not 0 <= z_order <= MAX_Z:
        raise ScaleGuardError(f"z_order must be in 0..{MAX_Z}, got {z_order}")
    if not 0 <= t_degree <= MAX_T:
        raise ScaleGuardError(f"t_degree must be in 0..{MAX_T}, got {t_degree}")


def _vectors(points) -> list[tuple[int, ...]]:
    return [p.vector if hasattr(p, "vector") else tuple(p) for p in points]


def _nonzero(vectors) -> list[tuple[int, ...]]:
    return [v for v in vectors if any(v)]


def bar_dimensions(points, z_order: int, t_degree: int) -> TruncatedSeries:
    """Count words of nonzero points by length and total height."""
    _guard(z_order, t_degree)
    heights = [v[0] for v in _nonzero(_vectors(points))]
    rows = [[0] * (t_degree + 1) for _ in range(z_order + 1)]
    rows[0][0] = 1
    for i in range(1, z_order + 1):
        prev, cur = rows[i - 1], rows[i]
        for h in range(t_degree + 1):
            if prev[h]:
                for ht in heights:
                    if h + ht <= t_degree:
                        cur[h + ht] += prev[h]
    return TruncatedSeries(z_order, t_degree, tuple(map(tuple, rows)))


def points_are_antichain(points) -> bool:
    vecs = _nonzero(_vectors(points))
    present = set(vecs)
    return not any(tuple(a + b for a, b in zip(s, u)) in present for s in vecs for u in vecs)


def antichain_series(points, z_order: int, t_degree: int) -> TruncatedSeries:
    """Expand ``(1 - z * sum_{s != 0} t^height(s))^{-1}``."""
    _guard(z_order, t_degree)
    if not points_are_antichain(points):
        raise ValidationError("antichain_series needs an antichain simplex")
    terms: dict = defaultdict(int)
    terms[0, 0] = 1
    for v in _nonzero(_vectors(points)):
        terms[1, v[0]] -= 1
    return TruncatedSeries.from_terms(terms, z_order, t_degree).inverse()


def polynomial_ring_factor(d: int, z_order: int, t_degree: int) -> TruncatedSeries:
    """``(1 + z t)^(d+1)``: one exterior factor per cone generator, all of height 1."""
    one_plus = TruncatedSeries.from_terms({(0, 0): 1, (1, 1): 1}, z_order, t_degree)
    out = TruncatedSeries.from_terms({(0, 0): 1}, z_order, t_degree)
    for _ in range(d + 1):
        out = out * one_plus
    return out


def full_poincare(lam: Partition, z_order: int, t_degree: int) -> TruncatedSeries:
    _guard(z_order, t_degree)
    if not is_antichain(lam):
        raise ValidationError(f"{lam} is not antichain; no closed form")
    fpa = antichain_series(enumerate_fpp(lam), z_order, t_degree)
    return polynomial_ring_factor(lam.d, z_order, t_degree) * fpa


# -- the algebra and its bar complex ------------------------------------------------------


class FpaTable:
    """Basis ``e_s`` indexed by parallelepiped points; product table by index."""

    def __init__(self, points):
        self.points = _vectors(points)
        self.index = {v: k for k, v in enumerate(self.points)}
        if len(self.index) != len(self.points):
            raise ValidationError("duplicate points")
        dim = len(self.points[0]) if self.points else 0
        self.zero = self.index.get((0,) * dim)
        if self.zero is None:
            raise ValidationError("the zero point must be present")

    def product(self, s: int | None, u: int | None) -> int | None:
        """Index of ``e_s * e_u``, or ``None`` for the zero element."""
        if s is None or u is None:
            return None
        total = tuple(a + b for a, b in zip(self.points[s], self.points[u]))
        return self.index.get(total)

    def __len__(self):
        return len(self.points)


def _words(table: FpaTable, max_len: int, max_height: int) -> dict:
    """Words of nonzero points grouped as ``{(length, multidegree): [word, ...]}``."""
    nz = [k for k in range(len(table)) if k != table.zero]
    out: dict = defaultdict(list)
    out[0, table.points[table.zero]].append(())
    frontier = [((), table.points[table.zero])]
    for length in range(1, max_len + 1):
        nxt = []
        for word, deg in frontier:
            for k in nz:
                v = table.points[k]
                if deg[0] + v[0] > max_height:
                    continue
                nd = tuple(a + b for a, b in zip(deg, v))
                w = word + (k,)
                out[length, nd].append(w)
                nxt.append((w, nd))
        frontier = nxt
    return out


def _differential(table: FpaTable, source: list, target: list) -> list[list[int]]:
    """Matrix (rows = target words) of the merge differential."""
    row_of = {w: r for r, w in enumerate(target)}
    mat = [[0] * len(source) for _ in target]
    for c, w in enumerate(source):
        for j in range(1, len(w)):
            merged = table.product(w[j - 1], w[j])
            if merged is None:
                continue
            image = w[: j - 1] + (merged,) + w[j + 1:]
            mat[row_of[image]][c] += (-1) ** j
    return mat


def _rank(mat: list[list[int]]) -> int:
    if not mat or not mat[0]:
        return 0
    rows = [[QQ(x) for x in r] for r in mat]
    return DomainMatrix(rows, (len(rows), len(rows[0])), QQ).rank()


def bar_betti_small(points, table: FpaTable | None, z_order: int, multidegree_bound: int) -> dict:
    """Betti numbers ``{(i, multidegree): beta}`` for ``i <= z_order`` and height <= bound.

    Zero entries are omitted.  Ranks are computed exactly over the rationals.
    """
    table = table or FpaTable(points)
    if not 0 <= z_order <= BETTI_MAX_Z:
        raise ScaleGuardError(f"z_order must be in 0..{BETTI_MAX_Z}")
    if len(table) > BETTI_MAX_POINTS:
        raise ScaleGuardError(f"at most {BETTI_MAX_POINTS} points, got {len(table)}")
    words = _words(table, z_order + 1, multidegree_bound)
    betti = {}
    for (i, deg), basis in words.items():
        if i > z_order:
            continue
        down = _rank(_differential(table, basis, words.get((i - 1, deg), []))) if i >= 2 else 0
        up_src = words.get((i + 1, deg), [])
        up = _rank(_differential(table, up_src, basis)) if up_src else 0
        beta = len(basis) - down - up
        if beta:
            betti[i, deg] = beta
    return betti


def coarsen(betti: dict, z_order: int, t_degree: int) -> TruncatedSeries:
    """Sum multidegree Betti numbers by height."""
    terms: dict = defaultdict(int)
    for (i, deg), beta in betti.items():
        terms[i, deg[0]] += beta
    return TruncatedSeries.from_terms(terms, z_order, t_degree)


def check_differential_squares_to_zero(table: FpaTable, max_len: int, max_height: int) -> bool:
    words = _words(table, max_len, max_height)
    for (i, deg), basis in words.items():
        if i < 3:
            continue
        mid = words.get((i - 1, deg), [])
        low = words.get((i - 2, deg), [])
        a = _differential(table, basis, mid)
        b = _differential(table, mid, low)
        for r in range(len(low)):
            for c in range(len(basis)):
                if sum(b[r][k] * a[k][c] for k in range(len(mid))):
                    return False
    return True


def is_associative(table: FpaTable) -> bool:
    idx = range(len(table))
    return all(
        table.product(table.product(s, u), w) == table.product(s, table.product(u, w))
        for s, u, w in cartesian(idx, idx, idx)
    )


def word_count_oracle(heights: Sequence[int], z_order: int, t_degree: int) -> TruncatedSeries:
    """Direct enumeration of height words; slow, for cross-checks only."""
    terms: dict = defaultdict(int)
    for i in range(z_order + 1):
        for word in cartesian(heights, repeat=i):
            terms[i, sum(word)] += 1
    return TruncatedSeries.from_terms(terms, z_order, t_degree)
