"""Simplices whose Hermite normal form has a single non-trivial column.

The simplex has vertices ``0, e_1, ..., e_{d-1}`` and ``(a_1, ..., a_{d-1}, n)``
in R^d.  A lattice point of the fundamental parallelepiped must have last
coordinate ``b = n * gamma_last``, which pins down everything else, so
there is one point per ``b`` in ``0..n-1``::

    coords = (ceil(b*a_1/n), ..., ceil(b*a_{d-1}/n), b)
    height = ceil(sum_i (ceil(b*a_i/n) - b*a_i/n) + b/n)
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .core import Partition
from .errors import ScaleGuardError, ValidationError

EXHAUST_LIMIT = 10**7


@dataclass(frozen=True)
class OneColumnHnf:
    n: int
    d: int
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if self.n < 1 or self.d < 1:
            raise ValidationError(f"need n >= 1 and d >= 1, got n={self.n}, d={self.d}")
        if len(self.a) != self.d - 1:
            raise ValidationError(f"expected {self.d - 1} column entries, got {len(self.a)}")
        if any(not 0 <= x < self.n for x in self.a):
            raise ValidationError(f"column entries must lie in [0, {self.n}): {self.a}")

    @property
    def positive(self) -> bool:
        """Membership in OCH+(n, d): no zero entry, so not visibly a lattice pyramid."""
        return all(x >= 1 for x in self.a)


@dataclass(frozen=True)
class HnfFppPoint:
    b: int
    height: int
    coords: tuple[int, ...]

    @property
    def vector(self) -> tuple[int, ...]:
        return (self.height,) + self.coords


def _point(h: OneColumnHnf, b: int) -> HnfFppPoint:
    n = h.n
    ups = [-(-b * x // n) for x in h.a]
    # numerator of sum_i frac-complement(b*a_i/n) + b/n, over n
    num = sum(u * n - b * x for u, x in zip(ups, h.a)) + b
    return HnfFppPoint(b, -(-num // n), tuple(ups) + (b,))


def hnf_fpp(h: OneColumnHnf) -> list[HnfFppPoint]:
    return [_point(h, b) for b in range(h.n)]


def hnf_brute_force(h: OneColumnHnf) -> list[HnfFppPoint]:
    """Test-set enumeration over ``A @ (c/n)`` with coordinatewise pruning.

    Columns of ``A`` are ``(1, 0)``, ``(1, e_i)`` and ``(1, a, n)``.
    """
    n = h.n
    if n ** 2 * max(1, len(h.a)) > EXHAUST_LIMIT:
        raise ScaleGuardError("brute force instance too large")
    found = []
    for last in range(n):
        options = [[c for c in range(n) if (c + last * x) % n == 0] for x in h.a]
        for cs in product(*options):
            for c0 in range(n):
                total = c0 + sum(cs) + last
                if total % n:
                    continue
                coords = tuple((c + last * x) // n for c, x in zip(cs, h.a)) + (last,)
                found.append(HnfFppPoint(last, total // n, coords))
    found.sort(key=lambda p: p.b)
    return found


def hnf_relates(h: OneColumnHnf, i: int, j: int) -> bool:
    if not i < j:
        return False
    pi, pk, pj = _point(h, i), _point(h, j - i), _point(h, j)
    return all(x + y == z for x, y, z in zip(pi.vector, pk.vector, pj.vector))


def _point_matrix(h: OneColumnHnf) -> np.ndarray:
    n = h.n
    b = np.arange(n, dtype=np.int64)[:, None]
    a = np.asarray(h.a, dtype=np.int64)[None, :]
    ups = -((-b * a) // n)
    num = (ups * n - b * a).sum(axis=1) + b[:, 0]
    height = -((-num) // n)
    return np.column_stack([height, ups, b[:, 0]])


def hnf_is_antichain(h: OneColumnHnf) -> bool:
    """No ``i < j`` in ``1..n-1`` with ``p(i) + p(j-i) == p(j)``.

    Scans ``j`` upward and tests all ``i < j`` at once, stopping at the first
    ``j`` that has a relation below it.
    """
    if h.n <= 2:
        return True
    pts = _point_matrix(h)
    for j in range(2, h.n):
        i = np.arange(1, j)
        if (pts[i] + pts[j - i] == pts[j]).all(axis=1).any():
            return False
    return True


def convert_lambda(lam) -> OneColumnHnf:
    """One-column form of conv(e_1, ..., e_d, lambda) after translating by -e_1.

    The column is ``(lambda_2, ..., lambda_d, n-1)`` in the order the parts
    are given; a :class:`Partition` lists them in descending order.  Entries
    are reduced mod ``n-1`` (a unimodular shear), which only matters when
    ``n - 1 <= lambda_t``.  Any ordering gives the same antichain verdict.
    """
    parts = tuple(lam.parts) if isinstance(lam, Partition) else tuple(int(x) for x in lam)
    if not parts or any(x < 1 for x in parts):
        raise ValidationError(f"parts must be positive, got {parts}")
    n = sum(parts)
    if n < 2:
        raise ValidationError("need n >= 2")
    m = n - 1
    return OneColumnHnf(m, len(parts), tuple(x % m for x in parts[1:]))


# -- random sampling of OCH+(n, d) ----------------------------------------------------


def draw_och(n: int, d: int, seed: int, index: int) -> OneColumnHnf:
    """Sample ``index`` of the stream for ``seed``; independent of every other index.

    Each sample gets its own generator seeded from ``(seed, index)`` through
    numpy's SeedSequence, so the draw never depends on scheduling.
    """
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed & (2**64 - 1), spawn_key=(index,)))
    a = rng.integers(1, n, size=d - 1)
    return OneColumnHnf(n, d, tuple(int(x) for x in a))


def _count_range(n: int, d: int, seed: int, lo: int, hi: int) -> int:
    return sum(hnf_is_antichain(draw_och(n, d, seed, k)) for k in range(lo, hi))


def sample_och(n: int, d: int, samples: int, seed: int, workers: int = 1) -> tuple[Fraction, int]:
    """Antichain fraction among ``samples`` i.i.d. uniform draws from OCH+(n, d)."""
    if n < 3 or d < 3:
        raise ValidationError(f"sampling needs n >= 3 and d >= 3, got n={n}, d={d}")
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    workers = max(1, int(workers))
    if workers == 1:
        count = _count_range(n, d, seed, 0, samples)
    else:
        cuts = [samples * w // workers for w in range(workers + 1)]
        with ProcessPoolExecutor(workers) as pool:
            count = sum(pool.map(_count_range, [n] * workers, [d] * workers, [seed] * workers, cuts[:-1], cuts[1:]))
    return Fraction(count, samples), count


def exhaust_och(n: int, d: int) -> tuple[int, int]:
    """Exact ``(total, antichain)`` census of OCH+(n, d)."""
    if n < 1 or d < 1:
        raise ValidationError("need n >= 1 and d >= 1")
    total = (n - 1) ** (d - 1)
    if total > EXHAUST_LIMIT:
        raise ScaleGuardError(f"(n-1)^(d-1) = {total} exceeds {EXHAUST_LIMIT}")
    antichain = sum(hnf_is_antichain(OneColumnHnf(n, d, a)) for a in product(range(1, n), repeat=d - 1))
    return total, antichain


def random_cells(count: int, seed: int, lo: int = 3, hi: int = 20) -> list[tuple[int, int]]:
    """``count`` distinct ``(n, d)`` cells from ``{lo..hi}^2``, drawn without replacement."""
    grid = [(n, d) for n in range(lo, hi + 1) for d in range(lo, hi + 1)]
    if count > len(grid):
        raise ValidationError(f"only {len(grid)} cells available")
    return sorted(random.Random(seed).sample(grid, count))


def sweep(cells: Sequence[tuple[int, int]], seed: int, samples: int | None = None, workers: int = 1) -> list[dict]:
    """One ``(n/d, f(n, d))`` record per cell; ``samples`` defaults to ``n**3``."""
    out = []
    for n, d in cells:
        k = samples if samples is not None else n**3
        frac, count = sample_och(n, d, k, seed, workers)
        out.append({"n": n, "d": d, "n_over_d": float(Fraction(n, d)), "samples": k,
                    "antichain": count, "fraction": float(frac)})
    return out
