"""Approximation algorithms with certified additive bounds.

Three routes from a crossing instance to an unsplittable solution:

  * ssw_three_halves: single forward greedy walk from D/2; the classical
    3/2 * D guarantee.
  * medium_demand_solve: if some demand d_i lies in [delta*D, (1-delta)*D],
    rotate it last, build a backward greedy walk for the remaining demands
    ending at (D + d_i)/2 - v_i, and extend by whichever final step keeps
    the start/end pair balanced; guarantee (3/2 - delta/2) * D.
  * small_big_solve: for instances whose demands all lie in
    [0, 2D/7] u [5D/7, D], combine up to three greedy walks (forward from
    5D/14, backward to 3D/7, forward from 11D/14) directly or through a
    crossover at a D/7-closeness witness; guarantee 19/14 * D.

solve_19_14 dispatches: any demand in [2D/7, 5D/7] goes the medium route
with the largest available margin, otherwise the small/big route; the
resulting bound never exceeds 19/14 * D.

Every report carries the exact performance and the a-priori bound; the
bound is rechecked against the exact value, and a failure raises
InternalGuaranteeViolation (a bug, never an input problem).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InternalGuaranteeViolation,
    MediumDemandPresent,
    NotMedium,
    StepMismatch,
)
from .model import CCW, CW, UnsplitRouting
from .patterns import (
    Pattern,
    crossover,
    find_close,
    greedy_points,
    performance,
)
from .reduction import CrossingInstance, standalone_crossing
from .scaled import Scaled, exact_div, halve


@dataclass(frozen=True)
class SolveReport:
    z: UnsplitRouting
    perf: Scaled
    bound: Scaled
    branch: str
    pattern: Pattern

    def as_dict(self) -> dict:
        """JSON-ready form; all numeric values are exact rational strings."""
        from .scaled import rational_str

        return {
            "branch": self.branch,
            "dirs": list(self.z.dirs),
            "performance": rational_str(self.perf),
            "bound": rational_str(self.bound),
        }


def solution_from_pattern(pattern: Pattern) -> UnsplitRouting:
    """Read direction flags off the pattern's steps."""
    dirs = []
    for k, (u, v) in enumerate(pattern.owner.pairs):
        step = pattern.points[k + 1] - pattern.points[k]
        if step == v:
            dirs.append(CW)
        elif step == -u:
            dirs.append(CCW)
        else:
            raise StepMismatch(f"step #{k} matches neither +v nor -u")
    return UnsplitRouting(tuple(dirs))


def pattern_from_solution(
    cross: CrossingInstance, z: UnsplitRouting, x: Scaled = 0
) -> Pattern:
    """Prefix sums of the solution's steps, started at x."""
    if len(z.dirs) != cross.m:
        raise StepMismatch(f"z has {len(z.dirs)} entries for m={cross.m}")
    points = [x]
    for (u, v), flag in zip(cross.pairs, z.dirs):
        points.append(points[-1] + (v if flag == CW else -u))
    return Pattern(cross, tuple(points))


def _report(pattern: Pattern, bound: Scaled, branch: str) -> SolveReport:
    perf = performance(pattern)
    if perf > bound:
        raise InternalGuaranteeViolation(
            f"branch {branch}: performance {perf} exceeds certified bound {bound}"
        )
    return SolveReport(solution_from_pattern(pattern), perf, bound, branch, pattern)


def ssw_three_halves(cross: CrossingInstance) -> SolveReport:
    """Forward greedy from D/2; additive performance at most 3/2 * D."""
    pattern = Pattern(cross, greedy_points(cross, halve(cross.D), forward=True))
    return _report(pattern, 3 * halve(cross.D), "ssw")


def _rotated(pairs, r):
    """Node rotation by r: pairs shift right; wrapped entries swap u and v."""
    m = len(pairs)
    out = []
    for j in range(m):
        u, v = pairs[(j - r) % m]
        out.append((v, u) if j < r else (u, v))
    return tuple(out)


def medium_demand_solve(
    cross: CrossingInstance, i: int, delta_d: Scaled
) -> SolveReport:
    """Medium-demand route; delta_d is delta * D (scaled).

    Requires d_i in [delta_d, D - delta_d]; certified bound
    (3/2 - delta/2) * D = 3D/2 - delta_d/2.
    """
    D = cross.D
    if not 0 <= i < cross.m:
        raise NotMedium(f"no demand #{i}")
    if delta_d < 0:
        raise NotMedium("the margin delta * D must be nonnegative")
    d_i = cross.demand_value(i)
    if not delta_d <= d_i <= D - delta_d:
        raise NotMedium(f"demand #{i} value outside [delta*D, (1-delta)*D]")

    r = (cross.m - 1 - i) % cross.m
    pairs = _rotated(cross.pairs, r)
    u_m, v_m = pairs[-1]
    rest = standalone_crossing(pairs[:-1], D)

    target = halve(D + d_i) - v_m  # in [0, D] since d_i <= D and v_m <= d_i
    prefix = greedy_points(rest, target, forward=False)
    x = prefix[0]
    if 2 * x <= D:
        points = prefix + (target + v_m,)
    else:
        points = prefix + (target - u_m,)
    rotated_pattern = Pattern(standalone_crossing(pairs, D), points)
    bound = 3 * halve(D) - halve(delta_d)

    # Undo the rotation: new position j held old demand (j - r) % m, with
    # clockwise and counterclockwise swapped on the r wrapped positions.
    z_rot = solution_from_pattern(rotated_pattern)
    dirs: list[str] = [CW] * cross.m
    for j, flag in enumerate(z_rot.dirs):
        if j < r:
            flag = CW if flag == CCW else CCW
        dirs[(j - r) % cross.m] = flag
    z = UnsplitRouting(tuple(dirs))
    pattern = pattern_from_solution(cross, z, x=0)
    perf = performance(pattern)
    assert perf == performance(rotated_pattern), "rotation must preserve performance"
    if perf > bound:
        raise InternalGuaranteeViolation(
            f"medium branch: performance {perf} exceeds bound {bound}"
        )
    return SolveReport(z, perf, bound, "medium", pattern)


def _small_big_bounds(D: Scaled) -> tuple[Scaled, Scaled]:
    """Demand classes for delta = 2/7: small <= 2D/7, big >= 5D/7."""
    small = exact_div(2 * D, 7)
    return small, D - small


def small_big_solve(cross: CrossingInstance) -> SolveReport:
    """The 19/14 * D route for instances with small and big demands only."""
    D = cross.D
    small, big = _small_big_bounds(D)
    for k in range(cross.m):
        if small < cross.demand_value(k) < big:
            raise MediumDemandPresent(f"demand #{k} is of medium size")

    bound = exact_div(19 * D, 14)
    eps = exact_div(2 * D, 14)  # D/7-closeness enables the crossover

    pattern_a = Pattern(cross, greedy_points(cross, exact_div(5 * D, 14)))
    if pattern_a.end >= exact_div(4 * D, 14):
        return _report(pattern_a, bound, "smallbig-a")

    pattern_b = Pattern(cross, greedy_points(cross, exact_div(6 * D, 14), forward=False))
    witness_ab = find_close(pattern_a, pattern_b, eps)
    if witness_ab is not None:
        return _report(crossover(pattern_a, pattern_b, witness_ab), bound, "smallbig-crossAB")
    if pattern_b.start > exact_div(3 * D, 14):
        return _report(pattern_b, bound, "smallbig-b")

    pattern_c = Pattern(cross, greedy_points(cross, exact_div(11 * D, 14)))
    if pattern_c.end <= exact_div(8 * D, 14):
        return _report(pattern_c, bound, "smallbig-c")

    # Start order is b, a, c; end order a, b, c: not a cyclic shift, so a
    # D/7-close pair exists, and (a, b) was ruled out above.
    witness_ca = find_close(pattern_c, pattern_a, eps)
    if witness_ca is not None:
        return _report(crossover(pattern_c, pattern_a, witness_ca), bound, "smallbig-ca")
    witness_cb = find_close(pattern_c, pattern_b, eps)
    if witness_cb is not None:
        return _report(crossover(pattern_c, pattern_b, witness_cb), bound, "smallbig-cb")
    raise InternalGuaranteeViolation("no close pair among the three greedy walks")


def solve_19_14(cross: CrossingInstance) -> SolveReport:
    """Dispatcher: medium route when possible, small/big route otherwise."""
    D = cross.D
    small, big = _small_big_bounds(D)
    best, best_margin = None, -1
    for k in range(cross.m):
        margin = min(cross.demand_value(k), D - cross.demand_value(k))
        if margin > best_margin:
            best, best_margin = k, margin
    if best is not None and small <= cross.demand_value(best) <= big:
        return medium_demand_solve(cross, best, best_margin)
    return small_big_solve(cross)
