"""Built-in instances, the equalizing extension, optimality certificates,
and random instance generation.

The built-ins are the six reference instances used throughout:

  fig1  ring of 4, two crossing demands of value 2, split half/half.
  fig2  ring of 16, eight crossing demands, D = 10, max edge load 37.
  fig5  ring of 24, twelve crossing demands, D = 100; the classical
        lower-bound instance (min increase at least 101).
  fig6  ring of 16, eight crossing demands, D = 10; min increase 11.
  fig7  fig2 plus one demand per deficient edge, routed along that edge,
        equalizing all loads at 37 (an optimum split routing).
  fig8  ring of 16 with 18 demands (8 diameters, 4 neighbor pairs, 6 at
        distance two); optimum split load 39, optimum unsplittable 50.

Each built-in re-runs a transcription self-check on first construction:
a wrong digit anywhere breaks the recorded loads, the certificate, or
the enumeration result, so the data cannot drift silently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import InfeasibleParams, UnknownName
from .exact import brute_force_min_increase
from .model import (
    Demand,
    RingInstance,
    SplitRouting,
    edge_loads,
    validate_instance,
)
from .reduction import CrossingInstance, standalone_crossing
from .scaled import Scaled, from_int

# Crossing-form transcriptions as (v_k, u_k) pairs in ring order; u_k is
# the clockwise amount of demand k, which connects nodes k and k+m.
_FIG2_VU = ((3, 3), (4, 6), (4, 4), (6, 4), (3, 3), (6, 4), (3, 1), (6, 4))
_FIG5_VU = (
    (71, 23), (25, 75), (71, 21), (23, 77), (75, 21), (76, 24),
    (21, 73), (75, 25), (21, 71), (73, 27), (25, 71), (33, 67),
)
_FIG6_VU = ((2, 2), (3, 7), (7, 1), (3, 7), (2, 2), (4, 6), (4, 4), (6, 4))

# fig8 demands as (i, j, d, cw); the 8 diameters carry the fig6 split
# rotated 11 node positions, the 10 short demands ride their short arcs.
_FIG8_DEMANDS = (
    (1, 9, 10, 6), (2, 10, 8, 4), (3, 11, 10, 4), (4, 12, 4, 2),
    (5, 13, 10, 3), (6, 14, 8, 7), (7, 15, 10, 3), (8, 16, 4, 2),
    (5, 6, 10, 10), (6, 7, 4, 4), (13, 14, 4, 4), (14, 15, 10, 10),
    (1, 3, 4, 4), (3, 5, 6, 6), (7, 9, 8, 8), (9, 11, 10, 10),
    (11, 13, 8, 8), (1, 15, 6, 0),
)

BUILTIN_NAMES = ("fig1", "fig2", "fig5", "fig6", "fig7", "fig8")


def _from_crossing_pairs(vu_pairs) -> tuple[RingInstance, SplitRouting]:
    m = len(vu_pairs)
    demands = tuple(
        Demand(k + 1, k + 1 + m, from_int(v + u)) for k, (v, u) in enumerate(vu_pairs)
    )
    split = SplitRouting(tuple(from_int(u) for _, u in vu_pairs))
    return RingInstance(2 * m, demands), split


@dataclass(frozen=True)
class ExtensionResult:
    instance: RingInstance
    split: SplitRouting
    added: tuple[Demand, ...]
    all_within_max_demand: bool


def equalize_extension(inst: RingInstance, split: SplitRouting) -> ExtensionResult:
    """Add one demand per deficient edge, routed along it, to level all loads.

    For each edge e with load below the maximum M, a demand of value
    M - load(e) between e's endpoints is appended, routed entirely along
    e.  The result reports whether every added value stays within the
    original maximum demand D (it does not for fig5).
    """
    validate_instance(inst, split)
    loads = edge_loads(inst, split)
    peak = max(loads)
    D = inst.max_demand
    demands = list(inst.demands)
    cw = list(split.cw)
    added = []
    for k in range(1, inst.n + 1):
        deficit = peak - loads[k - 1]
        if deficit == 0:
            continue
        if k < inst.n:
            dem = Demand(k, k + 1, deficit)
            cw.append(deficit)  # single clockwise edge
        else:
            dem = Demand(1, inst.n, deficit)
            cw.append(0)  # edge {n, 1} is the counterclockwise arc of (1, n)
        demands.append(dem)
        added.append(dem)
    result = ExtensionResult(
        RingInstance(inst.n, tuple(demands)),
        SplitRouting(tuple(cw)),
        tuple(added),
        all(dem.d <= D for dem in added),
    )
    assert len(set(edge_loads(result.instance, result.split))) == 1
    return result


def certify_split_optimal(inst: RingInstance, split: SplitRouting) -> Scaled | None:
    """The common load M = L* if the split routing is provably optimum.

    Certificate: every demand uses only direction(s) of minimum path
    length (ties allow both), and all edge loads are equal.  Then the
    average edge load is minimum and equals the maximum, so no routing
    does better.  None means no claim either way.
    """
    validate_instance(inst, split)
    for dem, cw in zip(inst.demands, split.cw):
        if dem.d == 0:
            continue
        len_cw = dem.j - dem.i
        len_ccw = inst.n - len_cw
        if len_cw < len_ccw and cw != dem.d:
            return None
        if len_ccw < len_cw and cw != 0:
            return None
    loads = edge_loads(inst, split)
    if len(set(loads)) != 1:
        return None
    return loads[0]


def _check(condition: bool, name: str, what: str) -> None:
    if not condition:
        raise AssertionError(f"{name} transcription self-check failed: {what}")


@lru_cache(maxsize=None)
def _builtin_checked(name: str) -> tuple[RingInstance, SplitRouting]:
    if name == "fig1":
        inst = RingInstance(4, (Demand(1, 3, from_int(2)), Demand(2, 4, from_int(2))))
        split = SplitRouting((from_int(1), from_int(1)))
        _check(set(edge_loads(inst, split)) == {from_int(2)}, name, "loads uniform 2")
        return inst, split
    if name == "fig2":
        inst, split = _from_crossing_pairs(_FIG2_VU)
        loads = edge_loads(inst, split)
        peak = from_int(37)
        at = tuple(k + 1 for k, load in enumerate(loads) if load == peak)
        _check(max(loads) == peak and at == (2, 3), name, "max load 37 at edges {2,3},{3,4}")
        return inst, split
    if name == "fig5":
        inst, split = _from_crossing_pairs(_FIG5_VU)
        _check(sum(u for _, u in _FIG5_VU) == 575, name, "sum of u odd (575)")
        _check(all((u + v) % 2 == 0 for v, u in _FIG5_VU), name, "u+v even")
        return inst, split
    if name == "fig6":
        inst, split = _from_crossing_pairs(_FIG6_VU)
        _, increase = brute_force_min_increase(inst, split)
        _check(increase == from_int(11), name, "minimum increase 11 over 256 routings")
        return inst, split
    if name == "fig7":
        base_inst, base_split = _builtin_checked("fig2")
        ext = equalize_extension(base_inst, base_split)
        _check(
            set(edge_loads(ext.instance, ext.split)) == {from_int(37)},
            name,
            "loads uniform 37",
        )
        _check(ext.all_within_max_demand, name, "added demands within D")
        return ext.instance, ext.split
    if name == "fig8":
        demands = tuple(Demand(i, j, from_int(d)) for i, j, d, _ in _FIG8_DEMANDS)
        inst = RingInstance(16, demands)
        split = SplitRouting(tuple(from_int(cw) for *_, cw in _FIG8_DEMANDS))
        _check(
            certify_split_optimal(inst, split) == from_int(39),
            name,
            "optimum split load 39",
        )
        return inst, split
    raise UnknownName(f"no built-in instance named {name!r}")


def builtin(name: str) -> tuple[RingInstance, SplitRouting]:
    """A built-in reference instance with its split routing, self-checked."""
    if name not in BUILTIN_NAMES:
        raise UnknownName(f"no built-in instance named {name!r}")
    return _builtin_checked(name)


def random_crossing(m: int, D: int, seed: int, structured: bool = False) -> CrossingInstance:
    """Deterministic random crossing instance.

    Unstructured: integer pairs with u, v >= 1, u + v <= D and max d = D.
    Structured: the lower-bound family — u + v even, every other demand
    pinned to D, and an odd clockwise total.
    """
    if m < 1 or D < 2:
        raise InfeasibleParams("need m >= 1 and D >= 2")
    rng = random.Random(seed)
    if structured:
        pairs = structured_member(m, D, rng)
    else:
        pairs = []
        for _ in range(m):
            d = rng.randint(2, D)
            u = rng.randint(1, d - 1)
            pairs.append((u, d - u))
        pin = rng.randrange(m)
        u = rng.randint(1, D - 1)
        pairs[pin] = (u, D - u)
    return standalone_crossing(
        tuple((from_int(u), from_int(v)) for u, v in pairs), from_int(D)
    )


def structured_member(m: int, D: int, rng: random.Random) -> list[tuple[int, int]]:
    """One member of the structured family, uniform choices per position.

    Positions 1, 3, 5, ... (0-based) carry the mandatory value-D demands;
    the clockwise total is nudged by one where possible to make it odd.
    """
    if m % 2 or D % 2:
        raise InfeasibleParams("structured family needs even m and even D")
    pairs = []
    for pos in range(m):
        if pos % 2:
            u = rng.randint(1, D - 1)
            pairs.append((u, D - u))
        else:
            d = 2 * rng.randint(1, D // 2)
            u = rng.randint(1, d - 1)
            pairs.append((u, d - u))
    if sum(u for u, _ in pairs) % 2 == 0:
        for pos, (u, v) in enumerate(pairs):
            if u + 1 <= u + v - 1:
                pairs[pos] = (u + 1, v - 1)
                break
            if u - 1 >= 1:
                pairs[pos] = (u - 1, v + 1)
                break
        else:
            raise InfeasibleParams("cannot reach an odd clockwise total")
    return pairs
