"""Patterns: prefix-sum walks encoding unsplittable solutions.

A pattern is the sequence p(0..m) with steps p(k) - p(k-1) in {v_k, -u_k};
it encodes an unsplittable solution up to vertical shift.  With start x,
end y and strip [a, b] = [min p, max p], the additive performance of the
encoded solution is exactly

    max{2b - x - y, x + y - 2a}  =  (b - a) + |y - (a + b - x)|.

Greedy constructions keep all points inside [0, D] and, where both steps
stay inside, take the one nearer to D/2, breaking ties toward +v_k.  Their
start (forward) or end (backward) point must keep a margin of D/14 from
the strip boundary; that margin (a quarter of the small/big demand split
at 2/7) is what the closeness guarantees of the small/big analysis rely
on.  Construction helpers used internally accept any point in [0, D].
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EndOutOfRange,
    InvalidWitness,
    OddEpsilon,
    OwnerMismatch,
    StartOutOfRange,
)
from .reduction import CrossingInstance
from .scaled import Scaled, exact_div, halve


@dataclass(frozen=True)
class Pattern:
    owner: CrossingInstance
    points: tuple[Scaled, ...]

    def __post_init__(self) -> None:
        if len(self.points) != self.owner.m + 1:
            raise ValueError(f"pattern needs m+1 = {self.owner.m + 1} points")
        for k, (u, v) in enumerate(self.owner.pairs):
            step = self.points[k + 1] - self.points[k]
            if step != v and step != -u:
                raise ValueError(f"step #{k} is {step}, admissible: {v} or {-u}")

    @property
    def start(self) -> Scaled:
        return self.points[0]

    @property
    def end(self) -> Scaled:
        return self.points[-1]

    @property
    def strip(self) -> tuple[Scaled, Scaled]:
        return min(self.points), max(self.points)

    @property
    def width(self) -> Scaled:
        lo, hi = self.strip
        return hi - lo

    def shifted(self, offset: Scaled) -> "Pattern":
        return Pattern(self.owner, tuple(p + offset for p in self.points))


@dataclass(frozen=True)
class ClosenessWitness:
    index: int
    eps_prime: Scaled  # p1(index) - p2(index)


def performance(pattern: Pattern) -> Scaled:
    """max{2b - x - y, x + y - 2a}; shift-invariant, 0 for empty patterns."""
    lo, hi = pattern.strip
    x, y = pattern.start, pattern.end
    return max(2 * hi - x - y, x + y - 2 * lo)


def margin_interval(D: Scaled) -> tuple[Scaled, Scaled]:
    """Admissible greedy start/end points: [D/14, 13D/14]."""
    lo = exact_div(D, 14)
    return lo, D - lo


def _nearer_to_mid(candidates: list[Scaled], mid2: Scaled) -> Scaled:
    # mid2 = 2 * (D/2) = D; compare |2c - D|.  Ties keep list order.
    best = candidates[0]
    for cand in candidates[1:]:
        if abs(2 * cand - mid2) < abs(2 * best - mid2):
            best = cand
    return best


def greedy_points(
    cross: CrossingInstance, point: Scaled, forward: bool = True
) -> tuple[Scaled, ...]:
    """Greedy walk inside [0, D] from any admissible point in [0, D].

    Forward: point = p(0), steps k = 1..m.  Backward: point = p(m),
    steps k = m..1 with p(k-1) = p(k) - z_k.  Ties prefer z_k = +v_k.
    """
    D = cross.D
    if not 0 <= point <= D:
        raise ValueError("greedy walks live on [0, D]")
    points = [point]
    order = range(cross.m) if forward else range(cross.m - 1, -1, -1)
    for k in order:
        u, v = cross.pairs[k]
        here = points[-1]
        if forward:
            preferred, other = here + v, here - u
        else:
            preferred, other = here - v, here + u
        candidates = [c for c in (preferred, other) if 0 <= c <= D]
        assert candidates, "d_k <= D guarantees a feasible step"
        points.append(_nearer_to_mid(candidates, D))
    if not forward:
        points.reverse()
    return tuple(points)


def forward_greedy(cross: CrossingInstance, x: Scaled) -> Pattern:
    lo, hi = margin_interval(cross.D)
    if not lo <= x <= hi:
        raise StartOutOfRange(f"start must lie in [D/14, 13D/14] = [{lo}, {hi}]")
    return Pattern(cross, greedy_points(cross, x, forward=True))


def backward_greedy(cross: CrossingInstance, y: Scaled) -> Pattern:
    lo, hi = margin_interval(cross.D)
    if not lo <= y <= hi:
        raise EndOutOfRange(f"end must lie in [D/14, 13D/14] = [{lo}, {hi}]")
    return Pattern(cross, greedy_points(cross, y, forward=False))


def find_close(p1: Pattern, p2: Pattern, eps: Scaled) -> ClosenessWitness | None:
    """Smallest index where the patterns differ by at most eps, else None."""
    if p1.owner != p2.owner:
        raise OwnerMismatch("patterns belong to different instances")
    for k, (a, b) in enumerate(zip(p1.points, p2.points)):
        if abs(a - b) <= eps:
            return ClosenessWitness(k, a - b)
    return None


def crossover(p1: Pattern, p2: Pattern, witness: ClosenessWitness) -> Pattern:
    """Splice p1's steps up to the witness with p2's steps after it.

    The result starts at x1 - eps'/2, ends at y2 + eps'/2, and lives on a
    sub-strip of [min(a1,a2) - |eps'|/2, max(b1,b2) + |eps'|/2]; its
    start plus end equals p1.start + p2.end exactly.
    """
    if p1.owner != p2.owner:
        raise OwnerMismatch("patterns belong to different instances")
    k = witness.index
    if not 0 <= k <= p1.owner.m:
        raise InvalidWitness(f"witness index {k} out of range")
    if p1.points[k] - p2.points[k] != witness.eps_prime:
        raise InvalidWitness("witness does not match the pattern gap")
    if witness.eps_prime % 2:
        raise OddEpsilon("half of an odd gap is not on the 1/28 grid")
    shift = halve(witness.eps_prime)
    points = tuple(p - shift for p in p1.points[: k + 1]) + tuple(
        p + shift for p in p2.points[k + 1 :]
    )
    return Pattern(p1.owner, points)


def dump_pattern(pattern: Pattern) -> str:
    """Plain-text (k, p(k)) table for fixture comparison."""
    from .scaled import rational_str

    lines = ["k\tp(k)"]
    for k, point in enumerate(pattern.points):
        lines.append(f"{k}\t{rational_str(point)}")
    return "\n".join(lines)
