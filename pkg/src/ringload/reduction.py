"""Reduction of an instance plus split routing to canonical crossing form.

Crossing form: a ring of 2m nodes carrying m demands, demand k connecting
nodes k and k+m, every pair of demands crossing, and every demand strictly
split (u_k clockwise, v_k counterclockwise, both positive).  The reduction

  1. uncrosses parallel demand pairs (rerouting flow so that one of the
     two becomes unsplittable, never increasing any edge load),
  2. freezes every unsplittably routed demand into per-edge base loads,
  3. contracts nodes that are no endpoint of a remaining demand (their two
     incident edges carry equal remaining load), and
  4. relabels nodes so demand k connects k and k+m.

The CrossingInstance remembers enough of this (backmap, fixed directions,
demand relabeling, the post-uncrossing split) to lift any crossing-form
solution back to the original ring.  Lifted solutions increase an original
edge exactly as much as the crossing-form solution increases the mapped
reduced edge, measured against the post-uncrossing split; against the
routing originally given the increase can only be smaller, since
uncrossing never raises a load.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LengthMismatch, NotParallel
from .model import (
    CCW,
    CW,
    Demand,
    RingInstance,
    SplitRouting,
    UnsplitRouting,
    ccw_edge_set,
    edge_loads,
    validate_instance,
)
from .scaled import Scaled


@dataclass(frozen=True)
class CrossingInstance:
    """Canonical reduced form; may also be built standalone (no origin).

    pairs[k] = (u_k, v_k), both positive scaled values, d_k = u_k + v_k <= D.
    D is the maximum demand of the *original* instance.  For reduced
    instances, backmap maps each original edge (0-based) to its reduced
    edge (0-based, -1 when m = 0) plus the base load contributed by fixed
    demands; fixed records (original demand index, direction); demand_map
    lists the original demand index behind each crossing demand; uncrossed
    is the original-ring split after uncrossing.
    """

    pairs: tuple[tuple[Scaled, Scaled], ...]
    D: Scaled
    origin: RingInstance | None = None
    uncrossed: SplitRouting | None = None
    backmap: tuple[tuple[int, Scaled], ...] | None = None
    fixed: tuple[tuple[int, str], ...] | None = None
    demand_map: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        for k, (u, v) in enumerate(self.pairs):
            if u <= 0 or v <= 0:
                raise ValueError(f"crossing demand #{k}: u and v must be positive")
            if u + v > self.D:
                raise ValueError(f"crossing demand #{k}: d exceeds D")
        if self.D < 0:
            raise ValueError("D must be nonnegative")

    @property
    def m(self) -> int:
        return len(self.pairs)

    def demand_value(self, k: int) -> Scaled:
        u, v = self.pairs[k]
        return u + v

    def to_ring(self) -> tuple[RingInstance, SplitRouting]:
        """The crossing instance as a plain ring instance with its split."""
        if self.m < 2:
            raise ValueError("a ring needs at least 3 nodes; m must be >= 2")
        demands = tuple(
            Demand(k + 1, k + 1 + self.m, u + v) for k, (u, v) in enumerate(self.pairs)
        )
        return RingInstance(2 * self.m, demands), SplitRouting(
            tuple(u for u, _ in self.pairs)
        )


def standalone_crossing(pairs: tuple[tuple[Scaled, Scaled], ...], D: Scaled | None = None) -> CrossingInstance:
    """A crossing instance that is its own original (D defaults to max d)."""
    if D is None:
        D = max((u + v for u, v in pairs), default=0)
    return CrossingInstance(pairs=tuple(pairs), D=D)


def demands_cross(n: int, first: tuple[int, int], second: tuple[int, int]) -> bool:
    """True iff the two demands cross (no edge-disjoint path pair exists).

    Demands sharing an endpoint are parallel: disjoint paths always exist.
    """
    i, j = first
    k, l = second
    if {i, j} & {k, l}:
        return False
    inside_k = i < k < j
    inside_l = i < l < j
    return inside_k != inside_l


def _arcs(inst: RingInstance, dem: Demand) -> tuple[frozenset[int], frozenset[int]]:
    cw = frozenset(range(dem.i, dem.j))
    return cw, ccw_edge_set(inst.n, dem.i, dem.j)


def uncross_pair(
    inst: RingInstance, split: SplitRouting, a: int, b: int
) -> SplitRouting:
    """Reroute a parallel pair so at least one demand becomes unsplittable.

    Flow min{x_b1, x_b2} moves from the non-disjoint path pair onto the
    edge-disjoint pair; no edge load increases.  A no-op when either
    demand is already unsplittable.
    """
    validate_instance(inst, split)
    dem_a, dem_b = inst.demands[a], inst.demands[b]
    if demands_cross(inst.n, (dem_a.i, dem_a.j), (dem_b.i, dem_b.j)):
        raise NotParallel(f"demands #{a} and #{b} cross")
    cw_a, cw_b = split.cw[a], split.cw[b]
    if cw_a in (0, dem_a.d) or cw_b in (0, dem_b.d):
        return split

    arcs_a = _arcs(inst, dem_a)
    arcs_b = _arcs(inst, dem_b)
    # Disjoint path pair; a's clockwise arc is tried first for determinism.
    for a_clockwise, path_a in ((True, arcs_a[0]), (False, arcs_a[1])):
        for b_clockwise, path_b in ((True, arcs_b[0]), (False, arcs_b[1])):
            if not (path_a & path_b):
                flow_off_a = dem_a.d - cw_a if a_clockwise else cw_a
                flow_off_b = dem_b.d - cw_b if b_clockwise else cw_b
                shift = min(flow_off_a, flow_off_b)
                new_cw = list(split.cw)
                new_cw[a] = cw_a + shift if a_clockwise else cw_a - shift
                new_cw[b] = cw_b + shift if b_clockwise else cw_b - shift
                return SplitRouting(tuple(new_cw))
    raise NotParallel(f"demands #{a} and #{b} admit no edge-disjoint paths")


def _uncross_all(inst: RingInstance, split: SplitRouting) -> SplitRouting:
    # Lexicographic pair scan, restarted after every change.
    while True:
        changed = False
        for a in range(len(inst.demands)):
            if split.cw[a] in (0, inst.demands[a].d):
                continue
            for b in range(a + 1, len(inst.demands)):
                if split.cw[b] in (0, inst.demands[b].d):
                    continue
                dem_a, dem_b = inst.demands[a], inst.demands[b]
                if demands_cross(inst.n, (dem_a.i, dem_a.j), (dem_b.i, dem_b.j)):
                    continue
                split = uncross_pair(inst, split, a, b)
                changed = True
                break
            if changed:
                break
        if not changed:
            return split


def reduce_to_crossing(
    inst: RingInstance, split: SplitRouting
) -> tuple[CrossingInstance, SplitRouting]:
    """Reduce to crossing form; returns the instance and its split (u_k)."""
    validate_instance(inst, split)
    uncrossed = _uncross_all(inst, split)

    fixed: list[tuple[int, str]] = []
    remaining: list[int] = []
    base = [0] * inst.n
    for idx, dem in enumerate(inst.demands):
        cw = uncrossed.cw[idx]
        if cw == dem.d:
            fixed.append((idx, CW))
            for k in range(dem.i, dem.j):
                base[k - 1] += dem.d
        elif cw == 0:
            fixed.append((idx, CCW))
            for k in ccw_edge_set(inst.n, dem.i, dem.j):
                base[k - 1] += dem.d
        else:
            remaining.append(idx)

    loads = edge_loads(inst, uncrossed)
    m = len(remaining)
    if m == 0:
        cross = CrossingInstance(
            pairs=(),
            D=inst.max_demand,
            origin=inst,
            uncrossed=uncrossed,
            backmap=tuple((-1, load) for load in loads),
            fixed=tuple(fixed),
            demand_map=(),
        )
        return cross, SplitRouting(())

    endpoints: dict[int, int] = {}
    for idx in remaining:
        dem = inst.demands[idx]
        for node in (dem.i, dem.j):
            assert node not in endpoints, "crossing demands cannot share endpoints"
            endpoints[node] = idx
    nodes = sorted(endpoints)  # reduced ring nodes in clockwise order

    # Relabel: first-seen endpoint order assigns crossing indices; since
    # demands are stored i < j and the walk starts at the smallest
    # endpoint, the first-seen endpoint is always i, so cw stays cw.
    demand_map: list[int] = []
    position: dict[int, int] = {}
    for pos, node in enumerate(nodes):
        idx = endpoints[node]
        if idx not in position:
            position[idx] = pos
            demand_map.append(idx)
    for pos, node in enumerate(nodes):
        idx = endpoints[node]
        if node != inst.demands[idx].i:
            assert pos == position[idx] + m, "demands do not interleave"

    pairs = tuple(
        (uncrossed.cw[idx], inst.demands[idx].d - uncrossed.cw[idx])
        for idx in demand_map
    )

    # Original edge e lies between consecutive reduced nodes; walk once.
    backmap: list[tuple[int, Scaled]] = []
    reduced_edge = 2 * m - 1  # edges before nodes[0] belong to the wrap edge
    next_pos = 0
    for k in range(1, inst.n + 1):
        if next_pos < len(nodes) and k == nodes[next_pos]:
            reduced_edge = next_pos
            next_pos += 1
        backmap.append((reduced_edge, base[k - 1]))

    cross = CrossingInstance(
        pairs=pairs,
        D=inst.max_demand,
        origin=inst,
        uncrossed=uncrossed,
        backmap=tuple(backmap),
        fixed=tuple(fixed),
        demand_map=tuple(demand_map),
    )

    # Contraction legality and exact load preservation.
    reduced_loads = _crossing_split_loads(pairs)
    for k in range(inst.n):
        edge, base_load = cross.backmap[k]
        assert loads[k] == base_load + reduced_loads[edge]

    return cross, SplitRouting(tuple(u for u, _ in pairs))


def _crossing_split_loads(pairs: tuple[tuple[Scaled, Scaled], ...]) -> list[Scaled]:
    """Split-routing loads on the 2m reduced edges (edge p = {p+1, p+2})."""
    m = len(pairs)
    loads = [0] * (2 * m)
    for k, (u, v) in enumerate(pairs):
        for p in range(2 * m):
            # demand k runs clockwise over edges k..k+m-1 (0-based)
            loads[p] += u if (p - k) % (2 * m) < m else v
    return loads


def lift_solution(cross: CrossingInstance, z: UnsplitRouting) -> UnsplitRouting:
    """Translate a crossing-form solution back to the original instance."""
    if len(z.dirs) != cross.m:
        raise LengthMismatch(f"z has {len(z.dirs)} entries for m={cross.m}")
    if cross.origin is None:
        return z
    assert cross.fixed is not None and cross.demand_map is not None
    dirs: list[str | None] = [None] * len(cross.origin.demands)
    for idx, direction in cross.fixed:
        dirs[idx] = direction
    for k, idx in enumerate(cross.demand_map):
        dirs[idx] = z.dirs[k]
    assert all(flag is not None for flag in dirs)
    return UnsplitRouting(tuple(dirs))  # type: ignore[arg-type]
