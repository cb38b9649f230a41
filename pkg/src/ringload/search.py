"""Exhaustive lower-bound search over the structured instance family.

Family members are integer (u, v) sequences with u_k + v_k even, every
demand at an odd 0-based position pinned to value D, and an odd clockwise
total.  Members are counted by a mixed-radix index: free positions range
over all even values 2..D with any admissible split ((D/2)^2 choices),
pinned positions over the D-1 splits of D.

Two members describe the same instance when a ring symmetry maps one to
the other.  The symmetries acting on sequences are generated by

  * node rotation (shift the sequence one step; the wrapped entry swaps
    u and v, because its stored endpoint moves past the ring seam),
  * reflection (reverse the sequence), and
  * the half-turn, which is rotation by m nodes and swaps u and v
    everywhere.

Only alignment-preserving group elements (value-D demands stay at odd
positions) are used for canonicalization; the canonical form is the
lexicographically smallest aligned image.  A shard (index, count) covers
a contiguous slice of the mixed-radix index space, evaluates exactly the
canonical members inside it, and reports those whose minimum possible
increase reaches the threshold; the union over all shards is exhaustive
and duplicate-free.

Screening is exact: a member is discarded once a routing with increase
at most threshold - 1 exists (one DP feasibility check); survivors get a
full minimum-increase computation.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import InfeasibleParams
from .exact import _dp_masks, dp_min_increase
from .reduction import standalone_crossing
from .scaled import Scaled, from_int, unscale

Pairs = tuple[tuple[int, int], ...]  # plain-integer (u, v) sequences


def _rotate(pairs: Pairs, shift: int) -> Pairs:
    """Node rotation by `shift`; wrapped entries swap u and v."""
    m = len(pairs)
    shift %= m
    out = []
    for j in range(m):
        u, v = pairs[(j - shift) % m]
        out.append((v, u) if j < shift else (u, v))
    return tuple(out)


def _reflect(pairs: Pairs) -> Pairs:
    return tuple(reversed(pairs))


def _swap(pairs: Pairs) -> Pairs:
    return tuple((v, u) for u, v in pairs)


def _aligned(pairs: Pairs, D: int) -> bool:
    return all(u + v == D for u, v in pairs[1::2])


def symmetry_orbit(pairs: Pairs) -> set[Pairs]:
    """All images under ring rotations, reflection, and the half-turn."""
    images = set()
    for base in (pairs, _reflect(pairs)):
        for shift in range(len(pairs)):
            rotated = _rotate(base, shift)
            images.add(rotated)
            images.add(_swap(rotated))
    return images


@dataclass(frozen=True)
class CanonicalForm:
    pairs: Pairs

    @classmethod
    def of(cls, pairs: Pairs, D: int) -> "CanonicalForm":
        if not _aligned(pairs, D):
            raise InfeasibleParams("sequence has no value-D demand at odd positions")
        best = min(image for image in symmetry_orbit(pairs) if _aligned(image, D))
        return cls(best)


def _is_canonical(pairs: Pairs, D: int) -> bool:
    for image in symmetry_orbit(pairs):
        if _aligned(image, D) and image < pairs:
            return False
    return True


@dataclass(frozen=True)
class StructuredFamily:
    m: int
    D: int

    def __post_init__(self) -> None:
        if self.m < 2 or self.m % 2 or self.D < 2 or self.D % 2:
            raise InfeasibleParams(
                "structured family needs even m >= 2 and even D >= 2"
            )

    @property
    def free_choices(self) -> int:
        return (self.D // 2) ** 2

    @property
    def pinned_choices(self) -> int:
        return self.D - 1

    @property
    def size(self) -> int:
        return (self.free_choices * self.pinned_choices) ** (self.m // 2)

    def decode(self, index: int) -> Pairs:
        pairs = []
        for pos in range(self.m):
            if pos % 2:
                index, code = divmod(index, self.pinned_choices)
                pairs.append((code + 1, self.D - code - 1))
            else:
                index, code = divmod(index, self.free_choices)
                pairs.append(self._free_pair(code))
        return tuple(pairs)

    def _free_pair(self, code: int) -> tuple[int, int]:
        # pairs ordered by d = 2, 4, ..., D then u = 1..d-1; the block for
        # d = 2h starts at (h-1)^2 since 1 + 3 + ... + (2h-3) = (h-1)^2.
        h = 1
        while h * h <= code:
            h += 1
        u = code - (h - 1) * (h - 1) + 1
        return (u, 2 * h - u)

    def encode(self, pairs: Pairs) -> int:
        index = 0
        for pos in range(self.m - 1, -1, -1):
            u, v = pairs[pos]
            if pos % 2:
                if u + v != self.D:
                    raise InfeasibleParams("pinned position must carry value D")
                index = index * self.pinned_choices + (u - 1)
            else:
                d = u + v
                if d % 2 or not 1 <= u < d or d > self.D:
                    raise InfeasibleParams("free position out of range")
                code = (d // 2 - 1) ** 2 + (u - 1)
                index = index * self.free_choices + code
        return index


@dataclass(frozen=True)
class SearchHit:
    form: CanonicalForm
    min_increase: Scaled


def shard_range(total: int, shard: tuple[int, int]) -> tuple[int, int]:
    index, count = shard
    if not (count >= 1 and 0 <= index < count):
        raise InfeasibleParams(f"shard {index}/{count} is not valid")
    return total * index // count, total * (index + 1) // count


def search_lower_bound(
    m: int,
    D: int,
    threshold: Scaled,
    shard: tuple[int, int] = (0, 1),
    checkpoint: Path | None = None,
    checkpoint_step: int = 1 << 20,
) -> list[SearchHit]:
    """Canonical family members in the shard with min increase >= threshold.

    A checkpoint file, when given, receives the last finished index (one
    plain integer per appended line) every checkpoint_step indices; a
    restart resumes after the recorded index.
    """
    family = StructuredFamily(m, D)
    threshold_int = unscale(threshold)
    start, stop = shard_range(family.size, shard)
    if checkpoint is not None and checkpoint.exists():
        lines = checkpoint.read_text().split()
        if lines:
            start = max(start, int(lines[-1]) + 1)

    hits = []
    for index in range(start, stop):
        pairs = family.decode(index)
        if sum(u for u, _ in pairs) % 2 and _is_canonical(pairs, D):
            if _passes_threshold(pairs, D, threshold_int):
                cross = standalone_crossing(
                    tuple((from_int(u), from_int(v)) for u, v in pairs), from_int(D)
                )
                _, value = dp_min_increase(cross)
                if value >= threshold:
                    hits.append(SearchHit(CanonicalForm(pairs), value))
        if checkpoint is not None and (index + 1 - start) % checkpoint_step == 0:
            with checkpoint.open("a") as handle:
                handle.write(f"{index}\n")
    if checkpoint is not None:
        with checkpoint.open("a") as handle:
            handle.write(f"{stop - 1}\n")
    return hits


def _passes_threshold(pairs: Pairs, D: int, threshold_int: int) -> bool:
    """Exact screen: no routing achieves increase threshold - 1 or less."""
    if threshold_int <= 0:
        return True
    t = threshold_int - 1
    parity = sum(v for _, v in pairs) & 1
    for y in range(-t, t + 1):
        if (y & 1) != parity:
            continue
        if _dp_masks(pairs, t, y) is not None:
            return False
    return True


def _run_shard(args: tuple[int, int, Scaled, int, int]) -> list[SearchHit]:
    m, D, threshold, index, count = args
    return search_lower_bound(m, D, threshold, shard=(index, count))


def search_parallel(
    m: int, D: int, threshold: Scaled, shards: int, jobs: int
) -> list[SearchHit]:
    """Run all shards on a local process pool and merge the results."""
    tasks = [(m, D, threshold, index, shards) for index in range(shards)]
    if jobs <= 1:
        results = [_run_shard(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_shard, tasks))
    merged: list[SearchHit] = []
    seen = set()
    for chunk in results:
        for hit in chunk:
            if hit.form.pairs not in seen:
                seen.add(hit.form.pairs)
                merged.append(hit)
    return merged
