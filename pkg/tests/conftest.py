from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cardlab.atoms import build_universe
from cardlab.orders import OrderSpec, enumerate_small_doubly_ordered, validate_order

REFL2 = frozenset({("p", "p"), ("q", "q")})


@pytest.fixture(scope="session")
def chain2():
    """Two-element chain with lestar equal to le (lift atoms only)."""
    return validate_order(OrderSpec.of(["p", "q"], REFL2 | {("p", "q")}, REFL2 | {("p", "q")}))


@pytest.fixture(scope="session")
def split2():
    """Two incomparable elements with one lestar edge (spread atoms only)."""
    return validate_order(OrderSpec.of(["p", "q"], REFL2, REFL2 | {("p", "q")}))


@pytest.fixture(scope="session")
def singleton():
    return validate_order(OrderSpec.of(["p"], {("p", "p")}, {("p", "p")}))


@pytest.fixture(scope="session")
def two_element_structures():
    return list(enumerate_small_doubly_ordered(2))


@pytest.fixture(scope="session")
def two_element_universes(two_element_structures):
    """T(2, 3) over every 2-element doubly ordered set."""
    return [build_universe(d, 2, 3) for d in two_element_structures]


def base_atom(u, element, k):
    return u.atoms[u.lookup(0, element, -1, k)]


def atom_by_key(u, level, element, parent, k):
    pid = -1 if parent is None else u.atom_id(parent)
    i = u.lookup(level, element, pid, k)
    assert i is not None, (level, element, parent, k)
    return u.atoms[i]
