"""Closed-form posets for partitions with one or two distinct part values.

* ``(n-2, 2)``: two layers, upper element ``h + j`` covering ``j..h`` with
  ``h = floor((n-1)/2)``.
* ``(x,)*v``: ``i = r*v + p`` identifies the poset with a grid minus two
  corners, ``(r, p) < (r', p')`` iff ``p > p'`` and ``r' > r``.
* ``(x,)*(u*a+v) + (a*x,)*(v-u-1)``: every ``i`` is written as
  ``(n/x)*r + (v-1)*p + q``; both residues become linear in ``(r, p, q)``
  and a relation is three strict integer inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .core import FppPoset, Partition, transitive_reduction
from .errors import ValidationError


def poset_n22(n: int) -> FppPoset:
    if n < 4:
        raise ValidationError(f"poset_n22 needs n >= 4, got {n}")
    h = (n - 1) // 2
    covers = {(i, h + j) for j in range(1, n - 1 - h) for i in range(j, h + 1)}
    # two layers: relations are exactly the covers
    return FppPoset(n - 1, frozenset(covers), frozenset(covers))


# -- one distinct part -----------------------------------------------------------------


@dataclass(frozen=True)
class GridPoset:
    x: int
    v: int
    elements: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self):
        if self.x < 1 or self.v < 1 or self.x * self.v < 2:
            raise ValidationError(f"need x, v >= 1 and x*v >= 2, got x={self.x}, v={self.v}")
        corners = {(0, 0), (self.x - 1, self.v - 1)}
        els = tuple((r, p) for r in range(self.x) for p in range(self.v) if (r, p) not in corners)
        object.__setattr__(self, "elements", els)

    @staticmethod
    def below(a: tuple[int, int], b: tuple[int, int]) -> bool:
        return a[0] < b[0] and a[1] > b[1]

    def relations(self) -> set:
        return {(a, b) for a in self.elements for b in self.elements if self.below(a, b)}

    def index(self, rp: tuple[int, int]) -> int:
        """Position of ``(r, p)`` among the parallelepiped points, ``r*v + p``."""
        return rp[0] * self.v + rp[1]

    def as_fpp_poset(self) -> FppPoset:
        rel = {(self.index(a), self.index(b)) for a, b in self.relations()}
        return FppPoset(self.x * self.v - 1, frozenset(rel), frozenset(transitive_reduction(rel)))


def grid_poset(x: int, v: int) -> GridPoset:
    return GridPoset(x, v)


def grid_swap_iso(x: int, v: int) -> dict:
    """Order isomorphism grid(x, v) -> grid(v, x), ``(r, p) -> (v-1-p, x-1-r)``.

    Raises ``AssertionError`` if the map fails to be an isomorphism.
    """
    src, dst = GridPoset(x, v), GridPoset(v, x)
    phi = {(r, p): (v - 1 - p, x - 1 - r) for r, p in src.elements}
    assert sorted(phi.values()) == sorted(dst.elements), "phi is not a bijection"
    image = {(phi[a], phi[b]) for a, b in src.relations()}
    assert image == dst.relations(), "phi does not carry relations onto relations"
    return phi


# -- two distinct parts, one dividing the other ------------------------------------------


@dataclass(frozen=True)
class TwoPartConfig:
    """``lambda = (x,)*(u*a + v) + (a*x,)*(v - u - 1)`` with ``3 <= a <= x``."""

    x: int
    a: int
    u: int
    v: int
    n: int = field(init=False)
    r: tuple[int, ...] = field(init=False, repr=False)
    p: tuple[int, ...] = field(init=False, repr=False)
    q: tuple[int, ...] = field(init=False, repr=False)
    f_values: tuple[int, ...] = field(init=False, repr=False)
    k_class: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        x, a, u, v = self.x, self.a, self.u, self.v
        if not 3 <= a <= x:
            raise ValidationError(f"need 3 <= a <= x, got a={a}, x={x}")
        if not 0 <= u <= a - 3:
            raise ValidationError(f"need 0 <= u <= a-3, got u={u}")
        if not (u + 2 <= v <= a - 1 and v <= Fraction(a * (x - 1), x)):
            raise ValidationError(f"need u+2 <= v <= min(a-1, a(x-1)/x), got v={v}")
        n = x * ((a + 1) * (v - 1) + 1)
        set_ = object.__setattr__
        set_(self, "n", n)
        block = n // x
        rs, ps, qs, fs, ks = [], [], [], [], []
        for i in range(n - 1):
            ri, rest = divmod(i, block)
            pi, qi = divmod(rest, v - 1)
            f = a * ri - (x * v - 1) * pi + x * a * qi
            rs.append(ri)
            ps.append(pi)
            qs.append(qi)
            fs.append(f)
            ks.append(-(f // (n - 1)))
        set_(self, "r", tuple(rs))
        set_(self, "p", tuple(ps))
        set_(self, "q", tuple(qs))
        set_(self, "f_values", tuple(fs))
        set_(self, "k_class", tuple(ks))

    @property
    def m(self) -> int:
        return self.n - 1

    @property
    def coprime(self) -> bool:
        return gcd(self.m, self.x) == 1 and gcd(self.m, self.a) == 1

    def partition(self) -> Partition:
        small = self.u * self.a + self.v
        big = self.v - self.u - 1
        return Partition((self.a * self.x,) * big + (self.x,) * small)

    def _check(self, i: int):
        if not 0 <= i <= self.n - 2:
            raise ValidationError(f"index {i} outside 0..{self.n - 2}")


def two_part_decompose(cfg: TwoPartConfig, i: int) -> tuple[int, int, int]:
    cfg._check(i)
    return cfg.r[i], cfg.p[i], cfg.q[i]


def two_part_s1(cfg: TwoPartConfig, i: int) -> int:
    """Residue of ``i*x`` mod ``n-1`` rebuilt from the decomposition."""
    r, p, q = two_part_decompose(cfg, i)
    return r + cfg.x * ((cfg.v - 1) * p + q)


def two_part_f(cfg: TwoPartConfig, i: int) -> int:
    cfg._check(i)
    return cfg.f_values[i]


def two_part_class(cfg: TwoPartConfig, i: int) -> int:
    cfg._check(i)
    return cfg.k_class[i]


def two_part_s2(cfg: TwoPartConfig, i: int) -> int:
    """Residue of ``i*a*x`` mod ``n-1``: ``f(i) + k*(n-1)``."""
    return two_part_f(cfg, i) + two_part_class(cfg, i) * cfg.m


def two_part_relates(cfg: TwoPartConfig, i: int, j: int) -> bool:
    if not cfg.coprime:
        raise ValidationError("relation test needs gcd(n-1, x) = gcd(n-1, a) = 1")
    if not (1 <= i <= cfg.n - 2 and 1 <= j <= cfg.n - 2):
        raise ValidationError("indices must lie in 1..n-2")
    ell = cfg.k_class[j] - cfg.k_class[i]
    dp = cfg.p[j] - cfg.p[i]
    dq = cfg.q[j] - cfg.q[i]
    dr = cfg.r[j] - cfg.r[i]
    x, a, v = cfg.x, cfg.a, cfg.v
    return ((x * v - 1) * dp - a * x * dq - a * dr > ell * cfg.m
            and (1 - v) * dp - dq > 0
            and dr > 0)


def two_part_poset(cfg: TwoPartConfig) -> FppPoset:
    rel = {(i, j) for j in range(1, cfg.n - 1) for i in range(1, j) if two_part_relates(cfg, i, j)}
    return FppPoset(cfg.m, frozenset(rel), frozenset(transitive_reduction(rel)))


def two_part_v2_checks(cfg: TwoPartConfig) -> bool:
    """For ``v = 2``: ``r_i + r_{n-1-i} = x-1``, ``p_i + p_{n-1-i} = a+1`` and classes sum to 2.

    The identities are only claimed for coprime configs; others may return False.
    """
    if cfg.v != 2:
        raise ValidationError(f"the symmetry identities need v = 2, got v={cfg.v}")
    m = cfg.m
    for i in range(1, m):
        k = m - i
        if cfg.r[i] + cfg.r[k] != cfg.x - 1:
            return False
        if cfg.p[i] + cfg.p[k] != cfg.a + 1:
            return False
        if cfg.k_class[i] + cfg.k_class[k] != 2:
            return False
    return True


def valid_configs(max_n: int):
    """Every ``(x, a, u, v)`` satisfying the setup bounds with ``n <= max_n``."""
    x = 3
    while 5 * x <= max_n:  # smallest n for a given x is x*(a+2) at a=3, v=2
        for a in range(3, x + 1):
            for u in range(0, a - 2):
                for v in range(u + 2, a):
                    try:
                        cfg = TwoPartConfig(x, a, u, v)
                    except ValidationError:
                        continue
                    if cfg.n <= max_n:
                        yield cfg
        x += 1
