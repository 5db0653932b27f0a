"""Truncated atom hierarchies over a doubly ordered set.

Atoms are quadruples (level, element, parent, index).  Level-0 atoms have no
parent and exist for every element and every index below the budget K.  A
level n+1 atom sits above a level-n parent in one of two shapes:

* lift atoms: the parent's element is strictly le-below the atom's element,
  and the index is pinned to 0 (one lift per parent/element pair) -- these
  carry injections between sectors;
* spread atoms: the parent's element is lestar-below but not le-below the
  atom's element, with one atom per index below K -- these carry surjections
  back onto the parent's sector.

The truncation T(N, K) keeps levels up to N and indices below K.  Atoms are
interned with dense integer ids assigned in (level, element, parent id, index)
lexicographic order, so strata are id prefixes and permutations can live in
flat arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeBudgetExceeded, UnknownAtom, UnknownElement
from .orders import DoublyOrderedSet, strict_less

DEFAULT_SIZE_CAP = 10**6


@dataclass(frozen=True)
class Atom:
    level: int
    element: str
    parent: "Atom | None"
    index: int

    def path(self) -> str:
        """Stable human-readable address: element@level[parent-path]#index."""
        inner = "" if self.parent is None else self.parent.path()
        return f"{self.element}@{self.level}[{inner}]#{self.index}"

    def __repr__(self) -> str:
        return f"Atom({self.path()})"


def project(a: Atom, i: int):
    """Quadruple projection: 0 level, 1 element, 2 parent (None for base), 3 index."""
    if i == 0:
        return a.level
    if i == 1:
        return a.element
    if i == 2:
        return a.parent
    if i == 3:
        return a.index
    raise ValueError(f"projection index must be 0..3, got {i}")


class Universe:
    """The interned truncation T(depth, index_budget) over a doubly ordered set.

    Immutable after construction; all lookups are safe to share across
    threads.  Atom ids are dense, deterministic, and level-major, so the
    stratum of level n is exactly the ids below ``stratum_size(n)``.
    """

    def __init__(self, order: DoublyOrderedSet, depth: int, index_budget: int,
                 size_cap: int = DEFAULT_SIZE_CAP):
        if depth < 0:
            raise ValueError("depth must be >= 0")
        if index_budget < 1:
            raise ValueError("index budget must be >= 1")
        self.order = order
        self.depth = depth
        self.index_budget = index_budget

        levels: list[int] = []
        elements: list[str] = []
        parent_ids: list[int] = []
        indices: list[int] = []
        key_to_id: dict[tuple[int, str, int, int], int] = {}
        stratum_sizes: list[int] = []

        def add(level: int, element: str, parent_id: int, index: int) -> None:
            if len(levels) >= size_cap:
                raise SizeBudgetExceeded(size_cap)
            key_to_id[(level, element, parent_id, index)] = len(levels)
            levels.append(level)
            elements.append(element)
            parent_ids.append(parent_id)
            indices.append(index)

        for element in order.carrier:
            for k in range(index_budget):
                add(0, element, -1, k)
        stratum_sizes.append(len(levels))

        for level in range(1, depth + 1):
            lo = stratum_sizes[-2] if len(stratum_sizes) >= 2 else 0
            hi = stratum_sizes[-1]
            for element in order.carrier:
                for pid in range(lo, hi):
                    parent_elem = elements[pid]
                    if strict_less(order, parent_elem, element):
                        add(level, element, pid, 0)
                    elif not order.le(parent_elem, element) and order.lestar(parent_elem, element):
                        for k in range(index_budget):
                            add(level, element, pid, k)
            stratum_sizes.append(len(levels))

        self._levels = tuple(levels)
        self._elements = tuple(elements)
        self._parent_ids = tuple(parent_ids)
        self._indices = tuple(indices)
        self._key_to_id = key_to_id
        self._stratum_sizes = tuple(stratum_sizes)

        children: list[list[int]] = [[] for _ in range(len(levels))]
        lift_like: list[bool] = [False] * len(levels)
        for i, pid in enumerate(parent_ids):
            if pid >= 0:
                children[pid].append(i)
                lift_like[i] = indices[i] == 0 and strict_less(
                    order, elements[pid], elements[i]
                )
        self._children = tuple(tuple(c) for c in children)
        self._is_lift_atom = tuple(lift_like)

        sector_ids: dict[str, list[int]] = {e: [] for e in order.carrier}
        for i, e in enumerate(elements):
            sector_ids[e].append(i)
        self._sector_ids = {e: tuple(ids) for e, ids in sector_ids.items()}

        root_elem: list[str] = [""] * len(levels)
        for i in range(len(levels)):
            root_elem[i] = elements[i] if parent_ids[i] < 0 else root_elem[parent_ids[i]]
        self._root_element = tuple(root_elem)

        atoms: list[Atom] = []
        for i in range(len(levels)):
            parent = None if parent_ids[i] < 0 else atoms[parent_ids[i]]
            atoms.append(Atom(self._levels[i], elements[i], parent, indices[i]))
        self.atoms = tuple(atoms)
        self._id_of = {a: i for i, a in enumerate(atoms)}

        # single-atom closure cache, filled lazily by the closure module
        self._atom_closure_cache: dict[int, frozenset[int]] = {}

    # -- basic lookups -----------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.atoms)

    def stratum_size(self, n: int) -> int:
        return self._stratum_sizes[n]

    def stratum(self, n: int) -> tuple[Atom, ...]:
        """The cumulative stratum of level n (an id prefix)."""
        return self.atoms[: self._stratum_sizes[n]]

    @property
    def strata(self) -> tuple[tuple[Atom, ...], ...]:
        return tuple(self.stratum(n) for n in range(self.depth + 1))

    def atom_id(self, a: Atom) -> int:
        try:
            return self._id_of[a]
        except KeyError:
            raise UnknownAtom(a.path()) from None

    def lookup(self, level: int, element: str, parent_id: int, index: int) -> int | None:
        return self._key_to_id.get((level, element, parent_id, index))

    def level_of(self, i: int) -> int:
        return self._levels[i]

    def element_of(self, i: int) -> str:
        return self._elements[i]

    def parent_id(self, i: int) -> int:
        return self._parent_ids[i]

    def index_of(self, i: int) -> int:
        return self._indices[i]

    def children_of(self, i: int) -> tuple[int, ...]:
        return self._children[i]

    def is_lift_atom(self, i: int) -> bool:
        """True for the pinned-index atoms whose parent element is strictly below."""
        return self._is_lift_atom[i]

    def root_element(self, i: int) -> str:
        """Element of the level-0 ancestor of atom i."""
        return self._root_element[i]

    def family_ids(self, i: int) -> tuple[int, ...]:
        """Ids of the atoms sharing atom i's (level, element, parent) family."""
        level = self._levels[i]
        element = self._elements[i]
        pid = self._parent_ids[i]
        out = []
        for k in range(self.index_budget):
            j = self._key_to_id.get((level, element, pid, k))
            if j is not None:
                out.append(j)
        return tuple(out)


def build_universe(d: DoublyOrderedSet, depth: int, index_budget: int,
                   size_cap: int = DEFAULT_SIZE_CAP) -> Universe:
    """Build the truncation T(depth, index_budget) over d."""
    return Universe(d, depth, index_budget, size_cap)


def sector(u: Universe, p: str) -> tuple[Atom, ...]:
    """All atoms whose element is p, in id order.  Sectors partition the universe."""
    if p not in u._sector_ids:
        raise UnknownElement(p)
    return tuple(u.atoms[i] for i in u._sector_ids[p])


def sector_ids(u: Universe, p: str) -> tuple[int, ...]:
    if p not in u._sector_ids:
        raise UnknownElement(p)
    return u._sector_ids[p]
