"""Deformation dimensions, parity signs, and the arrow combinatorics behind them.

Coordinates follow the single diagram convention of the partitions module:
cells are (rho, sigma) with rho the column index and sigma the row index.
Arrows are materialized, not just counted, so tests can check the tail/head
placement rules directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dtseries import SurfaceData
from .partitions import Partition


@dataclass(frozen=True)
class EulerData:
    chiOS: int
    chiOB: int
    h0_NBT: int
    h0_NBS: int


@dataclass(frozen=True)
class CombCurveDescriptor:
    """Discrete data of a section thickened by fibers: the surface numbers plus
    the partitions at smooth-fiber and nodal-fiber points (all nonempty)."""

    surf: SurfaceData
    smooth_fibers: tuple
    nodal_fibers: tuple

    def __post_init__(self):
        object.__setattr__(self, "smooth_fibers", tuple(self.smooth_fibers))
        object.__setattr__(self, "nodal_fibers", tuple(self.nodal_fibers))
        for lam in self.smooth_fibers + self.nodal_fibers:
            if not isinstance(lam, Partition) or not lam:
                raise ValueError("fiber partitions must be nonempty Partitions")

    def degree(self):
        return sum(lam.size() for lam in self.smooth_fibers + self.nodal_fibers)

    def all_fibers(self):
        return self.smooth_fibers + self.nodal_fibers


def euler_data(surf):
    """Holomorphic Euler characteristics and section normal-bundle sections.

    Requires eS > 0 and divisible by 12 (so chi(O_S) = eS/12 is an integer)
    and even eB (so chi(O_B) = eB/2 is one too).
    """
    if surf.eS <= 0 or surf.eS % 12:
        raise ValueError("eS must be a positive multiple of 12, got %d" % surf.eS)
    if surf.eB % 2:
        raise ValueError("eB must be even, got %d" % surf.eB)
    chi_os = surf.eS // 12
    chi_ob = surf.eB // 2
    return EulerData(chiOS=chi_os, chiOB=chi_ob, h0_NBT=chi_os - chi_ob, h0_NBS=0)


def chi_OC(desc):
    """chi of the structure sheaf of the thickened comb: chi(O_B) minus the
    first parts of all fiber partitions."""
    ed = euler_data(desc.surf)
    return ed.chiOB - sum(lam.first_part() for lam in desc.all_fibers())


def tangent_dim(desc):
    """Dimension of the tangent space at the comb curve: h0(N_{B/T}) plus
    2|lam| - lam_1 per fiber (smooth or nodal alike)."""
    ed = euler_data(desc.surf)
    return ed.h0_NBT + sum(
        2 * lam.size() - lam.first_part() for lam in desc.all_fibers()
    )


def behrend_sign(desc):
    """(-1)^(chi(O_S) - chi(O_C)); equals (-1)^tangent_dim by smoothness."""
    ed = euler_data(desc.surf)
    return -1 if (ed.chiOS - chi_OC(desc)) % 2 else 1


@dataclass(frozen=True)
class HaimanArrow:
    """A tangent-basis arrow from a cell outside the diagram to one inside."""

    tail: tuple
    head: tuple
    kind: str  # "southeast" or "northwest"


def haiman_basis_2d(lam):
    """The 2|lam| tangent-basis arrows of the point-configuration at lam.

    For each cell (a, b): a southeast arrow from just above the top of column
    a to the rightmost cell of row b, and a northwest arrow from just right of
    row b to the top cell of column a.
    """
    if not lam:
        raise ValueError("the empty partition has no arrow basis")
    arrows = []
    for a, b in lam.cells():
        col_top = lam.column_height(a)
        row_end = lam.parts[b]
        arrows.append(HaimanArrow(tail=(a, col_top), head=(row_end - 1, b), kind="southeast"))
        arrows.append(HaimanArrow(tail=(row_end, b), head=(a, col_top - 1), kind="northwest"))
    return arrows


def vl_tangent_basis(lam):
    """Arrows spanning the tangent space of the fixed-intersection stratum.

    Drops exactly the lam_1 southeast arrows whose head is the end of the
    bottom row, at (lam_1 - 1, 0); 2|lam| - lam_1 arrows remain.
    """
    l1 = lam.first_part()
    return [
        ar
        for ar in haiman_basis_2d(lam)
        if not (ar.kind == "southeast" and ar.head == (l1 - 1, 0))
    ]


def comb_fiber_arrow_classes(lam):
    """Number of arrow classes a thickened fiber contributes: 2|lam| - lam_1."""
    if not lam:
        raise ValueError("fiber partitions are nonempty")
    return 2 * lam.size() - lam.first_part()
