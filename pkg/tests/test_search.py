"""Structured-family search: canonicalization, sharding, thresholds."""

import random

import pytest

from ringload.errors import InfeasibleParams
from ringload.exact import dp_min_increase
from ringload.instances import _FIG2_VU, _FIG6_VU
from ringload.reduction import standalone_crossing
from ringload.scaled import from_int
from ringload.search import (
    CanonicalForm,
    StructuredFamily,
    search_lower_bound,
    search_parallel,
    shard_range,
    symmetry_orbit,
)


def dp_of(pairs, D):
    cross = standalone_crossing(
        tuple((from_int(u), from_int(v)) for u, v in pairs), from_int(D)
    )
    return dp_min_increase(cross)[1]


def test_symmetry_images_preserve_min_increase():
    rng = random.Random(81)
    for _ in range(10):
        family = StructuredFamily(rng.choice([2, 4, 6]), rng.choice([4, 6, 8]))
        pairs = family.decode(rng.randrange(family.size))
        reference = dp_of(pairs, family.D)
        for image in symmetry_orbit(pairs):
            assert dp_of(image, family.D) == reference


def test_canonicalization_is_idempotent_and_orbit_constant():
    rng = random.Random(82)
    for _ in range(40):
        family = StructuredFamily(rng.choice([2, 4]), rng.choice([4, 6]))
        pairs = family.decode(rng.randrange(family.size))
        canonical = CanonicalForm.of(pairs, family.D)
        assert CanonicalForm.of(canonical.pairs, family.D) == canonical
        for image in symmetry_orbit(pairs):
            if all(u + v == family.D for u, v in image[1::2]):
                assert CanonicalForm.of(image, family.D) == canonical


def test_family_size_and_codec():
    family = StructuredFamily(8, 10)
    assert family.size == 25**4 * 9**4  # more than one billion members
    rng = random.Random(83)
    for _ in range(500):
        index = rng.randrange(family.size)
        pairs = family.decode(index)
        assert family.encode(pairs) == index
        assert all(u + v == 10 for u, v in pairs[1::2])
        assert all(2 <= u + v <= 10 and (u + v) % 2 == 0 for u, v in pairs[0::2])


def test_family_rejects_bad_parameters():
    for m, D in ((3, 10), (8, 9), (0, 10), (2, 0)):
        with pytest.raises(InfeasibleParams):
            StructuredFamily(m, D)


def test_shard_range_partitions():
    total = StructuredFamily(4, 6).size
    pieces = [shard_range(total, (i, 7)) for i in range(7)]
    assert pieces[0][0] == 0 and pieces[-1][1] == total
    for (_, stop), (start, _) in zip(pieces, pieces[1:]):
        assert stop == start
    with pytest.raises(InfeasibleParams):
        shard_range(total, (7, 7))


def test_sharding_is_exhaustive_and_disjoint():
    # Tiny family: a single full pass equals the union of four shards.
    threshold = from_int(1)
    full = search_lower_bound(2, 4, threshold)
    parts = [search_lower_bound(2, 4, threshold, shard=(i, 4)) for i in range(4)]
    merged = [hit for part in parts for hit in part]
    assert sorted(hit.form.pairs for hit in merged) == sorted(
        hit.form.pairs for hit in full
    )
    assert len({hit.form.pairs for hit in merged}) == len(merged)


def test_threshold_above_universal_bound_is_empty():
    # 3/2 * D bounds every minimum increase, so 3D/2 + 1 finds nothing.
    assert search_lower_bound(2, 4, from_int(7)) == []
    assert search_lower_bound(4, 4, from_int(7), shard=(1, 3)) == []


def test_search_finds_fig6_in_its_slice():
    family = StructuredFamily(8, 10)
    fig6 = CanonicalForm.of(tuple((u, v) for v, u in _FIG6_VU), 10)
    index = family.encode(fig6.pairs)
    count = 40000  # slices of ~64k indices
    shard = next(
        i for i in range(count) if shard_range(family.size, (i, count))[0] <= index
        and index < shard_range(family.size, (i, count))[1]
    )
    hits = search_lower_bound(8, 10, from_int(11), shard=(shard, count))
    assert any(hit.form == fig6 and hit.min_increase == from_int(11) for hit in hits)


def test_fig2_and_fig6_canonical_forms_hit_threshold_11():
    for vu in (_FIG2_VU, _FIG6_VU):
        pairs = tuple((u, v) for v, u in vu)
        assert dp_of(pairs, 10) == from_int(11)
        canonical = CanonicalForm.of(pairs, 10)
        assert dp_of(canonical.pairs, 10) == from_int(11)


def test_checkpoint_resume(tmp_path):
    checkpoint = tmp_path / "shard-0-of-1.txt"
    threshold = from_int(1)
    full = search_lower_bound(2, 4, threshold)
    first = search_lower_bound(2, 4, threshold, checkpoint=checkpoint, checkpoint_step=5)
    assert [hit.form for hit in first] == [hit.form for hit in full]
    assert checkpoint.read_text().split()[-1] == str(StructuredFamily(2, 4).size - 1)
    # A finished checkpoint makes the rerun a no-op.
    assert search_lower_bound(2, 4, threshold, checkpoint=checkpoint) == []


def test_parallel_search_matches_serial():
    threshold = from_int(1)
    serial = search_lower_bound(2, 4, threshold)
    parallel = search_parallel(2, 4, threshold, shards=5, jobs=2)
    assert sorted(h.form.pairs for h in serial) == sorted(h.form.pairs for h in parallel)
