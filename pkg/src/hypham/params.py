"""Derived threshold constants for a uniformity/overlap pair (k, l).

All rational quantities are exact ``Fraction``s; floating approximations
appear only in CSV/plot output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from .errors import ContractViolation


@dataclass(frozen=True)
class ThresholdParams:
    """Constants governing cover/connect thresholds for Hamilton l-cycles in k-graphs.

    ctmod = floor(k/(k-l)) * (k-l) is the block size behind the tiling
    threshold dcover = 1 - 1/ctmod; ceilkl = ceil(k/(k-l)) drives the
    connecting threshold dconnect = 1 - 1/ceilkl.  The edge weights are
    w = (k-1, ctmod-1, ..., ctmod-1) with total W = (k-1)*ctmod, and
    t_abs = (2k-1)(k-l) + l is the absorbing tuple length.
    """

    k: int
    l: int
    ctmod: int
    ceilkl: int
    dcover: Fraction
    dconnect: Fraction
    weights: tuple[int, ...]
    W: int
    t_abs: int
    connect_len: int = field(default=0)

    def __post_init__(self):
        assert self.ctmod >= self.ceilkl
        assert self.W == sum(self.weights)
        assert self.dcover >= self.dconnect


def threshold_params(k: int, l: int) -> ThresholdParams:
    """All derived constants for (k, l); requires k >= 3 and 1 <= l <= k-1."""
    if k < 3:
        raise ContractViolation(f"k must be >= 3, got {k}")
    if not 1 <= l <= k - 1:
        raise ContractViolation(f"l must satisfy 1 <= l <= k-1, got l={l}, k={k}")
    d = k - l
    ctmod = floor(k / d) * d
    ceilkl = ceil(k / d)
    weights = (k - 1,) + (ctmod - 1,) * (k - 1)
    return ThresholdParams(
        k=k,
        l=l,
        ctmod=ctmod,
        ceilkl=ceilkl,
        dcover=1 - Fraction(1, ctmod),
        dconnect=1 - Fraction(1, ceilkl),
        weights=weights,
        W=(k - 1) * ctmod,
        t_abs=(2 * k - 1) * d + l,
        connect_len=ceilkl,
    )
