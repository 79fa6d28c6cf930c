"""Fundamental parallelepiped posets of lattice simplices with a unimodular facet."""

from .core import (
    FppPoint,
    FppPoset,
    Partition,
    ResidueTable,
    brute_force_fpp,
    build_poset,
    check_self_dual,
    enumerate_fpp,
    is_antichain,
    point_of,
    relates_coprime,
    relates_lemma,
    relates_theorem,
)
from .errors import ScaleGuardError, ValidationError
from .partitions import ScanRow, is_relprime, iter_partitions, ratios, scan

__version__ = "0.1.0"
