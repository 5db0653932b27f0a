from __future__ import annotations

import pytest

from cardlab.atoms import build_universe, project, sector
from cardlab.errors import SizeBudgetExceeded, UnknownElement
from cardlab.orders import enumerate_small_doubly_ordered

from conftest import atom_by_key, base_atom


def test_chain2_strata_counts(chain2):
    u = build_universe(chain2, 1, 2)
    assert u.stratum_size(0) == 4
    assert u.stratum_size(1) == 6  # two lift children over the p-base atoms


def test_split2_strata_counts(split2):
    u = build_universe(split2, 1, 2)
    assert u.stratum_size(0) == 4
    assert u.stratum_size(1) == 8  # each p-base atom spreads into two q-atoms


def test_depth_zero_universe(singleton):
    u = build_universe(singleton, 0, 1)
    assert u.size == 1
    assert [a.level for a in u.atoms] == [0]


def test_sector_sizes(chain2, split2):
    u = build_universe(chain2, 1, 2)
    assert len(sector(u, "p")) == 2
    assert len(sector(u, "q")) == 4
    v = build_universe(split2, 1, 2)
    assert len(sector(v, "q")) == 6
    with pytest.raises(UnknownElement):
        sector(u, "z")


def test_sectors_partition_universe(two_element_universes):
    for u in two_element_universes:
        ids = []
        for p in u.order.carrier:
            ids.extend(u.atom_id(a) for a in sector(u, p))
        assert sorted(ids) == list(range(u.size))


def test_depth_zero_sector_is_base_family(split2):
    u = build_universe(split2, 0, 3)
    assert [a.index for a in sector(u, "p")] == [0, 1, 2]
    assert all(a.level == 0 for a in u.atoms)


def test_projections(chain2):
    u = build_universe(chain2, 1, 2)
    b = base_atom(u, "p", 1)
    assert project(b, 0) == 0
    assert project(b, 1) == "p"
    assert project(b, 2) is None
    assert project(b, 3) == 1
    child = atom_by_key(u, 1, "q", b, 0)
    assert project(child, 2) == b
    with pytest.raises(ValueError):
        project(b, 4)


def test_parent_levels_chain_to_zero(two_element_universes):
    for u in two_element_universes:
        for a in u.atoms:
            if a.parent is None:
                assert a.level == 0
            else:
                assert a.level == a.parent.level + 1
            walk, steps = a, 0
            while walk.parent is not None:
                walk = walk.parent
                steps += 1
            assert walk.level == 0 and steps == a.level


def test_shape_exclusivity(two_element_universes):
    # no atom satisfies both the lift and the spread parent condition
    for u in two_element_universes:
        d = u.order
        for i in range(u.size):
            pid = u.parent_id(i)
            if pid < 0:
                continue
            strictly = d.le(u.element_of(pid), u.element_of(i)) and \
                u.element_of(pid) != u.element_of(i)
            spread = not d.le(u.element_of(pid), u.element_of(i)) and \
                d.lestar(u.element_of(pid), u.element_of(i))
            assert strictly != spread
            assert u.is_lift_atom(i) == strictly
            if strictly:
                assert u.index_of(i) == 0


def test_monotone_truncation():
    for d in enumerate_small_doubly_ordered(2):
        small = build_universe(d, 1, 2)
        deeper = build_universe(d, 2, 2)
        wider = build_universe(d, 1, 3)
        # depth growth appends strata: ids are a prefix
        assert deeper.atoms[: small.size] == small.atoms
        # index growth keeps every atom, not necessarily as a prefix
        wide_keys = {(a.level, a.element, a.parent, a.index) for a in wider.atoms}
        for a in small.atoms:
            assert (a.level, a.element, a.parent, a.index) in wide_keys


def test_interning_is_deterministic(split2):
    u1 = build_universe(split2, 2, 3)
    u2 = build_universe(split2, 2, 3)
    assert u1.atoms == u2.atoms
    assert [u1.atom_id(a) for a in u1.atoms] == [u2.atom_id(a) for a in u2.atoms]


def test_strata_are_nested_prefixes(split2):
    u = build_universe(split2, 2, 3)
    strata = u.strata
    assert len(strata) == 3
    for lower, upper in zip(strata, strata[1:]):
        assert upper[: len(lower)] == lower
    assert len(set(strata[-1])) == u.size
    assert all(a.level <= n for n, part in enumerate(strata) for a in part)


def test_ids_are_key_lexicographic(two_element_universes):
    for u in two_element_universes:
        keys = [
            (u.level_of(i), u.element_of(i), u.parent_id(i), u.index_of(i))
            for i in range(u.size)
        ]
        assert keys == sorted(keys)


def test_size_cap(split2):
    with pytest.raises(SizeBudgetExceeded):
        build_universe(split2, 2, 3, size_cap=10)


def test_bad_parameters(split2):
    with pytest.raises(ValueError):
        build_universe(split2, -1, 2)
    with pytest.raises(ValueError):
        build_universe(split2, 1, 0)
