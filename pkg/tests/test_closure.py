from __future__ import annotations

from itertools import combinations

import pytest

from cardlab.atoms import build_universe
from cardlab.closure import (
    closure,
    closure_shape_le,
    closure_shape_lestar,
    is_closed,
    nonzero_index_part,
)

from conftest import atom_by_key, base_atom
from oracles import naive_closure_ids


def test_empty_and_full_sets_are_closed(chain2):
    u = build_universe(chain2, 1, 2)
    assert is_closed(u, [])
    assert is_closed(u, u.atoms)


def test_lone_child_is_not_closed(chain2):
    u = build_universe(chain2, 1, 2)
    child = atom_by_key(u, 1, "q", base_atom(u, "p", 0), 0)
    assert not is_closed(u, [child])


def test_closure_of_empty_base_is_empty(chain2):
    u = build_universe(chain2, 1, 2)
    assert closure(u, []).members == frozenset()


def test_closure_adds_parent_and_child(chain2):
    u = build_universe(chain2, 1, 2)
    b = base_atom(u, "p", 0)
    child = atom_by_key(u, 1, "q", b, 0)
    cs = closure(u, [child])
    assert cs.members == {child, b}
    assert cs.x_part == {child}  # re-added as the lift child of its parent
    assert cs.y_part == {child, b}
    assert closure(u, [b]).members == {b, child}


def test_closure_decomposition_invariants(two_element_universes):
    for u in two_element_universes:
        for a in u.atoms:
            cs = closure(u, [a])
            assert cs.members == cs.x_part | cs.y_part
            assert cs.base <= cs.y_part
            assert all(m.index == 0 for m in cs.x_part)
            assert is_closed(u, cs.members)


def test_closure_idempotent_and_monotone(two_element_universes):
    for u in two_element_universes:
        atoms = u.atoms
        for a in atoms:
            m = closure(u, [a]).members
            assert closure(u, m).members == m
        for a, b in combinations(atoms[: min(len(atoms), 8)], 2):
            small = closure(u, [a]).members
            big = closure(u, [a, b]).members
            assert small <= big


def test_closure_finite_additivity(two_element_universes):
    for u in two_element_universes:
        singles = {a: closure(u, [a]).members for a in u.atoms}
        for a in u.atoms:
            for b in u.atoms:
                assert closure(u, [a, b]).members == singles[a] | singles[b]


def test_closure_matches_naive_saturation_oracle(two_element_universes):
    for u in two_element_universes:
        for a in u.atoms:
            got = {u.atom_id(m) for m in closure(u, [a]).members}
            assert got == naive_closure_ids(u, [u.atom_id(a)])
        for a, b in combinations(u.atoms[:10], 2):
            ids = [u.atom_id(a), u.atom_id(b)]
            got = {u.atom_id(m) for m in closure(u, [a, b]).members}
            assert got == naive_closure_ids(u, ids)


def test_closure_is_least_among_closed_supersets(split2):
    u = build_universe(split2, 2, 3)
    for a in u.atoms[:12]:
        members = closure(u, [a]).members
        # every closed superset of the base contains the closure
        for b in u.atoms[:12]:
            candidate = closure(u, [a, b]).members
            assert is_closed(u, candidate) and members <= candidate


def test_nonzero_index_part(split2):
    u = build_universe(split2, 1, 2)
    assert nonzero_index_part(u, []) == frozenset()
    spread = atom_by_key(u, 1, "q", base_atom(u, "p", 0), 1)
    assert nonzero_index_part(u, [spread]) == {spread}
    zeros = [base_atom(u, "p", 0), base_atom(u, "q", 0)]
    assert nonzero_index_part(u, zeros) == frozenset()


def test_nonzero_index_bound(two_element_universes):
    for u in two_element_universes:
        for a in u.atoms:
            part = nonzero_index_part(u, [a])
            assert len(part) <= a.level + 1
            assert part <= closure(u, [a]).y_part


def test_shape_lestar(split2, chain2):
    v = build_universe(split2, 1, 2)
    assert closure_shape_lestar(v, base_atom(v, "q", 0), "q")
    spread = atom_by_key(v, 1, "q", base_atom(v, "p", 0), 0)
    assert closure_shape_lestar(v, spread, "q")
    u = build_universe(chain2, 1, 2)
    assert closure_shape_lestar(u, base_atom(u, "q", 1), "q")
    with pytest.raises(ValueError):
        closure_shape_lestar(u, base_atom(u, "p", 0), "q")


def test_shape_le(chain2, split2, singleton):
    u = build_universe(chain2, 1, 2)
    assert closure_shape_le(u, base_atom(u, "p", 0))
    v = build_universe(split2, 1, 2)
    assert closure_shape_le(v, base_atom(v, "p", 0))
    s = build_universe(singleton, 1, 2)
    assert closure_shape_le(s, base_atom(s, "p", 0))
    with pytest.raises(ValueError):
        closure_shape_le(u, atom_by_key(u, 1, "q", base_atom(u, "p", 0), 0))


def test_shape_checks_hold_everywhere(two_element_universes):
    # both checks are theorem analogues: they must never raise on real data
    for u in two_element_universes:
        for a in u.atoms:
            closure_shape_lestar(u, a, a.element)
            if a.level == 0:
                closure_shape_le(u, a)
