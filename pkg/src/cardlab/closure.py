"""Closed atom sets and the closure operator.

A set of atoms is closed when it contains the lift child of each member (for
every element strictly above the member's, within the depth truncation) and
the parent of each non-base member.  The closure of a base B is the least
closed superset of B, computed by running two chains to their joint fixpoint:
an ancestor chain (repeated parent descent from B) and a lift chain
(saturation with lift children of everything collected so far).

The decomposition is kept on the result because two facts about it are load
bearing downstream: every atom of the lift chain has index 0, and the
ancestor chain from a finite base is finite with at most level+1 atoms per
base atom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .atoms import Atom, Universe
from .errors import ShapeViolation, UnknownElement


@dataclass(frozen=True)
class ClosureSet:
    """Closure of ``base`` with its lift-chain / ancestor-chain decomposition."""

    universe: Universe
    base: frozenset[Atom]
    members: frozenset[Atom]
    x_part: frozenset[Atom]
    y_part: frozenset[Atom]


def _lift_children(u: Universe, i: int) -> tuple[int, ...]:
    return tuple(c for c in u.children_of(i) if u.is_lift_atom(c))


def closure_ids(u: Universe, base_ids: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Run both chains to the fixpoint; returns (lift ids, ancestor ids)."""
    y = set(base_ids)
    x: set[int] = set()
    while True:
        new_y = y | {u.parent_id(i) for i in y if u.parent_id(i) >= 0}
        new_x = x.copy()
        for i in x | y:
            new_x.update(_lift_children(u, i))
        if new_x == x and new_y == y:
            return frozenset(x), frozenset(y)
        x, y = new_x, new_y


def atom_closure_ids(u: Universe, i: int) -> frozenset[int]:
    """Cached member ids of the closure of the single atom i."""
    cached = u._atom_closure_cache.get(i)
    if cached is None:
        x, y = closure_ids(u, (i,))
        cached = x | y
        u._atom_closure_cache[i] = cached
    return cached


def member_ids(u: Universe, base_ids: Iterable[int]) -> frozenset[int]:
    """Closure member ids via per-atom caching and finite additivity."""
    out: set[int] = set()
    for i in base_ids:
        out |= atom_closure_ids(u, i)
    return frozenset(out)


def closure(u: Universe, b: Iterable[Atom]) -> ClosureSet:
    """Least closed superset of b, with its chain decomposition."""
    base = frozenset(b)
    base_ids = [u.atom_id(a) for a in base]
    x, y = closure_ids(u, base_ids)
    return ClosureSet(
        universe=u,
        base=base,
        members=frozenset(u.atoms[i] for i in x | y),
        x_part=frozenset(u.atoms[i] for i in x),
        y_part=frozenset(u.atoms[i] for i in y),
    )


def is_closed(u: Universe, c: Iterable[Atom]) -> bool:
    """Check both closure conditions directly (lift children within depth, parents)."""
    ids = {u.atom_id(a) for a in c}
    for i in ids:
        pid = u.parent_id(i)
        if pid >= 0 and pid not in ids:
            return False
        for child in _lift_children(u, i):
            if child not in ids:
                return False
    return True


def nonzero_index_part(u: Universe, b: Iterable[Atom]) -> frozenset[Atom]:
    """Members of the closure of b whose index is nonzero.

    Always a subset of the ancestor chain, of size at most the sum of
    level+1 over the base atoms.
    """
    cs = closure(u, b)
    return frozenset(a for a in cs.members if a.index != 0)


def closure_shape_lestar(u: Universe, b: Atom, q: str) -> bool:
    """Assert: every closure member of {b} is above level 0 or lestar-below q.

    Holds for every b in the sector of q; a violation signals a bug in the
    closure machinery, not a user error.
    """
    if q not in u.order.carrier:
        raise UnknownElement(q)
    if b.element != q:
        raise ValueError(f"atom {b!r} is not in the sector of {q!r}")
    for i in sorted(atom_closure_ids(u, u.atom_id(b))):
        if u.level_of(i) == 0 and not u.order.lestar(u.element_of(i), q):
            raise ShapeViolation(u.atoms[i])
    return True


def closure_shape_le(u: Universe, c: Atom) -> bool:
    """Assert: every closure member of a base atom c is le-above c's element."""
    if c.level != 0:
        raise ValueError(f"atom {c!r} is not a base atom")
    p = c.element
    for i in sorted(atom_closure_ids(u, u.atom_id(c))):
        if not u.order.le(p, u.element_of(i)):
            raise ShapeViolation(u.atoms[i])
    return True
