"""Ring instances, routings, and exact load computation.

Conventions (used throughout the package):

  * Nodes are numbered 1..n clockwise; every demand is stored with
    endpoints i < j.
  * Edge k = {k, k+1} for k = 1..n-1, edge n = {n, 1}.  Load vectors are
    tuples indexed 0..n-1 in this edge order.
  * The clockwise path of demand (i, j) runs i, i+1, ..., j and covers
    edges i..j-1; the counterclockwise path covers the complement.
  * All quantities are scaled integers on the 1/28 grid (see scaled.py).

All types are immutable; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    IndexMismatch,
    NegativeDemand,
    NodeOutOfRange,
    SplitExceedsDemand,
)
from .scaled import Scaled

CW = "cw"
CCW = "ccw"

#: Edge loads, one scaled value per edge in edge order.
LoadVector = tuple[Scaled, ...]


@dataclass(frozen=True)
class Demand:
    i: int
    j: int
    d: Scaled  # scaled demand value, >= 0


@dataclass(frozen=True)
class RingInstance:
    n: int
    demands: tuple[Demand, ...]

    @property
    def max_demand(self) -> Scaled:
        """D, the maximum demand value (0 for an empty demand list)."""
        return max((dem.d for dem in self.demands), default=0)


@dataclass(frozen=True)
class SplitRouting:
    """Clockwise amount per demand; the counterclockwise remainder is d - cw."""

    cw: tuple[Scaled, ...]


@dataclass(frozen=True)
class UnsplitRouting:
    """Direction flag per demand, each CW or CCW."""

    dirs: tuple[str, ...]

    def __post_init__(self) -> None:
        for flag in self.dirs:
            if flag not in (CW, CCW):
                raise ValueError(f"direction must be {CW!r} or {CCW!r}, got {flag!r}")


def validate_instance(inst: RingInstance, split: SplitRouting | None = None) -> None:
    """Check all structural invariants; raises the first violation found."""
    if inst.n < 3:
        raise NodeOutOfRange(f"ring must have at least 3 nodes, got n={inst.n}")
    for pos, dem in enumerate(inst.demands):
        if not (1 <= dem.i < dem.j <= inst.n):
            raise NodeOutOfRange(
                f"demand #{pos} endpoints ({dem.i},{dem.j}) violate 1 <= i < j <= {inst.n}"
            )
        if dem.d < 0:
            raise NegativeDemand(f"demand #{pos} has negative value")
    if split is not None:
        if len(split.cw) != len(inst.demands):
            raise IndexMismatch(
                f"split has {len(split.cw)} entries for {len(inst.demands)} demands"
            )
        for pos, (dem, cw) in enumerate(zip(inst.demands, split.cw)):
            if not (0 <= cw <= dem.d):
                raise SplitExceedsDemand(
                    f"demand #{pos}: clockwise amount outside [0, d]"
                )


def validate_routing(inst: RingInstance, routing: UnsplitRouting) -> None:
    if len(routing.dirs) != len(inst.demands):
        raise IndexMismatch(
            f"routing has {len(routing.dirs)} entries for {len(inst.demands)} demands"
        )


def cw_edges(n: int, i: int, j: int) -> range:
    """Edge indices (1-based) of the clockwise path i -> j."""
    return range(i, j)


def ccw_edge_set(n: int, i: int, j: int) -> frozenset[int]:
    """Edge indices (1-based) of the counterclockwise path i -> j."""
    return frozenset(range(1, i)) | frozenset(range(j, n + 1))


def _add_path(loads: list[Scaled], n: int, i: int, j: int, amount: Scaled, clockwise: bool) -> None:
    if amount == 0:
        return
    if clockwise:
        for k in range(i, j):
            loads[k - 1] += amount
    else:
        for k in range(1, i):
            loads[k - 1] += amount
        for k in range(j, n + 1):
            loads[k - 1] += amount


def edge_loads(inst: RingInstance, routing: SplitRouting | UnsplitRouting) -> LoadVector:
    """Per-edge loads induced by a split or unsplittable routing."""
    loads: list[Scaled] = [0] * inst.n
    if isinstance(routing, SplitRouting):
        validate_instance(inst, routing)
        for dem, cw in zip(inst.demands, routing.cw):
            _add_path(loads, inst.n, dem.i, dem.j, cw, clockwise=True)
            _add_path(loads, inst.n, dem.i, dem.j, dem.d - cw, clockwise=False)
    else:
        validate_instance(inst)
        validate_routing(inst, routing)
        for dem, flag in zip(inst.demands, routing.dirs):
            _add_path(loads, inst.n, dem.i, dem.j, dem.d, clockwise=flag == CW)
    return tuple(loads)


def additive_increase(
    inst: RingInstance, split: SplitRouting, unsplit: UnsplitRouting
) -> Scaled:
    """Maximum over edges of (load under unsplit) - (load under split)."""
    before = edge_loads(inst, split)
    after = edge_loads(inst, unsplit)
    return max(a - b for a, b in zip(after, before))


def split_as_unsplit(inst: RingInstance, split: SplitRouting) -> UnsplitRouting:
    """Read an already-unsplittable split routing as direction flags.

    Every cw amount must be 0 or d; zero-value demands count as clockwise.
    """
    validate_instance(inst, split)
    dirs = []
    for pos, (dem, cw) in enumerate(zip(inst.demands, split.cw)):
        if cw == dem.d:
            dirs.append(CW)
        elif cw == 0:
            dirs.append(CCW)
        else:
            raise SplitExceedsDemand(f"demand #{pos} is genuinely split")
    return UnsplitRouting(tuple(dirs))
