"""Structure-preserving permutations of a truncated universe.

A permutation belongs to the truncated group when it is a bijection mapping
each stratum onto itself, preserves every atom's element, and commutes with
the parent projection.  Such maps are stored as dense id arrays; composition
and membership checks are single linear scans.

The constructive operations mirror the supporting arguments of the embedding
result: extending a stratum permutation upward level by level (keeping
indices fixed), swapping two same-family atoms and propagating the swap
through descendants, and building a member that fixes a prescribed closure
pointwise while moving a prescribed atom outside it.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .atoms import Atom, Universe
from .closure import closure_ids, member_ids
from .errors import (
    InClosure,
    IndexBudgetExhausted,
    IndexOutOfRange,
    NotAFamily,
    NotAMember,
    UniverseMismatch,
)


class Permutation:
    """Immutable member of the truncated group, as a dense id array."""

    __slots__ = ("universe", "mapping")

    def __init__(self, universe: Universe, mapping: Sequence[int]):
        self.universe = universe
        self.mapping = tuple(mapping)

    def apply(self, a: Atom) -> Atom:
        u = self.universe
        return u.atoms[self.mapping[u.atom_id(a)]]

    def __call__(self, a: Atom) -> Atom:
        return self.apply(a)

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.mapping))

    def moved_ids(self) -> tuple[int, ...]:
        return tuple(i for i, img in enumerate(self.mapping) if img != i)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles over moved ids, each starting at its least id."""
        seen: set[int] = set()
        out: list[tuple[int, ...]] = []
        for i, img in enumerate(self.mapping):
            if i in seen or img == i:
                continue
            cycle = [i]
            j = img
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.mapping[j]
            out.append(tuple(cycle))
        return tuple(out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Permutation)
            and other.universe is self.universe
            and other.mapping == self.mapping
        )

    def __hash__(self) -> int:
        return hash((id(self.universe), self.mapping))

    def __repr__(self) -> str:
        moved = self.moved_ids()
        return f"Permutation(moved={len(moved)} of {len(self.mapping)})"


def identity(u: Universe) -> Permutation:
    return Permutation(u, range(u.size))


def membership_diagnostic(u: Universe, mapping: Sequence[int]) -> str | None:
    """None if the map is a truncated-group member, else the first violation."""
    n = u.size
    if len(mapping) != n:
        return f"map covers {len(mapping)} atoms, universe has {n}"
    seen = [False] * n
    for i, img in enumerate(mapping):
        if not 0 <= img < n:
            return f"image of {u.atoms[i]!r} is out of range"
        if seen[img]:
            return f"two atoms share the image {u.atoms[img]!r}"
        seen[img] = True
        if u.level_of(img) != u.level_of(i):
            return f"{u.atoms[i]!r} leaves its stratum"
        if u.element_of(img) != u.element_of(i):
            return f"{u.atoms[i]!r} changes element"
        pid = u.parent_id(i)
        if pid >= 0 and u.parent_id(img) != mapping[pid]:
            return f"{u.atoms[i]!r} breaks parent equivariance"
    return None


def is_member(u: Universe, f: Permutation | Sequence[int]) -> bool:
    """Decide membership in the truncated group (all strata at once)."""
    mapping = f.mapping if isinstance(f, Permutation) else f
    if isinstance(f, Permutation) and f.universe is not u:
        return False
    return membership_diagnostic(u, mapping) is None


def compose(f: Permutation, g: Permutation) -> Permutation:
    """The permutation applying g first, then f."""
    if f.universe is not g.universe:
        raise UniverseMismatch("compose requires permutations of the same universe")
    gm = g.mapping
    fm = f.mapping
    return Permutation(f.universe, [fm[gm[i]] for i in range(len(gm))])


def inverse(f: Permutation) -> Permutation:
    out = [0] * len(f.mapping)
    for i, img in enumerate(f.mapping):
        out[img] = i
    return Permutation(f.universe, out)


def _propagate(u: Universe, mapping: list[int], seeds: Iterable[int]) -> None:
    # push an already-consistent move of `seeds` upward through descendants;
    # children are keyed by (level, element, image-of-parent, index)
    queue = list(seeds)
    pos = 0
    while pos < len(queue):
        i = queue[pos]
        pos += 1
        for child in u.children_of(i):
            img = u.lookup(
                u.level_of(child),
                u.element_of(child),
                mapping[i],
                u.index_of(child),
            )
            assert img is not None, "image family is missing a matching atom"
            mapping[child] = img
            queue.append(child)


def index_transposition(u: Universe, family: tuple[int, str, Atom | None],
                        k: int, l: int) -> Permutation:
    """Swap the two atoms of a family at indices k and l, equivariantly.

    The family is (level, element, parent); it must be a base family or a
    spread family, the only shapes with more than one index.  Descendants of
    the swapped atoms move with them; every other atom at or below their
    level is fixed.
    """
    level, element, parent = family
    if element not in u.order.carrier:
        raise NotAFamily(f"unknown element {element!r}")
    if level == 0:
        if parent is not None:
            raise NotAFamily("base families have no parent")
        pid = -1
    else:
        if parent is None:
            raise NotAFamily(f"level-{level} families need a parent")
        pid = u.atom_id(parent)
        if u.level_of(pid) != level - 1:
            raise NotAFamily("parent level must be one below the family level")
        parent_elem = u.element_of(pid)
        if u.order.le(parent_elem, element) or not u.order.lestar(parent_elem, element):
            raise NotAFamily(
                f"({level}, {element!r}, {parent.path()}) is not a spread family"
            )
    if k == l:
        raise IndexOutOfRange(l, u.index_budget)
    ids = []
    for idx in (k, l):
        i = u.lookup(level, element, pid, idx)
        if i is None:
            raise IndexOutOfRange(idx, u.index_budget)
        ids.append(i)
    mapping = list(range(u.size))
    a, b = ids
    mapping[a], mapping[b] = b, a
    _propagate(u, mapping, (a, b))
    return Permutation(u, mapping)


def equivariant_extension(u: Universe, g: Mapping[Atom, Atom], m: int,
                          fixed_closed: Iterable[Atom] | None = None) -> Permutation:
    """Extend a stratum-m group member to the whole universe, indices fixed.

    Level n+1 atoms go to the same-index atom above the image of their
    parent.  When a closed set is supplied whose stratum-m part g fixes
    pointwise, the extension fixes the whole set pointwise; this contract is
    asserted.
    """
    if not 0 <= m <= u.depth:
        raise NotAMember(f"stratum {m} is outside this universe")
    size_m = u.stratum_size(m)
    mapping = list(range(u.size))
    assigned = [False] * size_m
    for a, img in g.items():
        i = u.atom_id(a)
        if i >= size_m:
            raise NotAMember(f"{a!r} lies above stratum {m}")
        mapping[i] = u.atom_id(img)
        assigned[i] = True
    if not all(assigned):
        missing = assigned.index(False)
        raise NotAMember(f"map is not total on stratum {m}: {u.atoms[missing]!r} unassigned")

    # validate the stratum part before extending
    seen = [False] * size_m
    for i in range(size_m):
        img = mapping[i]
        if img >= size_m or seen[img]:
            raise NotAMember(f"stratum map is not a stratum bijection at {u.atoms[i]!r}")
        seen[img] = True
        if u.level_of(img) != u.level_of(i):
            raise NotAMember(f"{u.atoms[i]!r} leaves its stratum")
        if u.element_of(img) != u.element_of(i):
            raise NotAMember(f"{u.atoms[i]!r} changes element")
        pid = u.parent_id(i)
        if pid >= 0 and u.parent_id(img) != mapping[pid]:
            raise NotAMember(f"{u.atoms[i]!r} breaks parent equivariance")

    for i in range(size_m, u.size):
        img = u.lookup(u.level_of(i), u.element_of(i), mapping[u.parent_id(i)], u.index_of(i))
        assert img is not None, "image family is missing a matching atom"
        mapping[i] = img

    if fixed_closed is not None:
        fixed_ids = {u.atom_id(a) for a in fixed_closed}
        for i in fixed_ids:
            if i < size_m and mapping[i] != i:
                raise ValueError(f"map moves {u.atoms[i]!r} from the supplied closed set")
        for i in fixed_ids:
            assert mapping[i] == i, "extension moved a member of the closed set"
    return Permutation(u, mapping)


def _fresh_sibling(u: Universe, target: int, blocked_members: frozenset[int]) -> int:
    """Least-index family sibling of `target` outside `blocked_members`.

    Raises IndexBudgetExhausted with a K suggestion when the family offers
    no such sibling.
    """
    family = u.family_ids(target)
    for j in family:
        if j != target and j not in blocked_members:
            return j
    excluded = frozenset(
        {u.index_of(target)} | {u.index_of(j) for j in family if j in blocked_members}
    )
    raise IndexBudgetExhausted(excluded, suggested_k=len(excluded) + 1)


def _mover_from_ids(u: Universe, fixed: frozenset[int], c_id: int) -> Permutation:
    target = c_id
    while u.is_lift_atom(target):
        parent = u.parent_id(target)
        assert parent not in fixed, "lift atom outside a closure with its parent inside"
        target = parent
    sibling = _fresh_sibling(u, target, fixed)
    mapping = list(range(u.size))
    mapping[target], mapping[sibling] = sibling, target
    _propagate(u, mapping, (target, sibling))
    return Permutation(u, mapping)


def mover(u: Universe, b: Iterable[Atom], c: Atom) -> Permutation:
    """A member fixing the closure of b pointwise while moving c.

    Base and spread atoms are swapped with a fresh same-family sibling; lift
    atoms move because their parent does (recursing on the unique parent).
    Deterministic: the least admissible sibling index is always chosen.
    """
    base_ids = [u.atom_id(a) for a in b]
    x, y = closure_ids(u, base_ids)
    fixed = x | y
    c_id = u.atom_id(c)
    if c_id in fixed:
        raise InClosure(c.path())
    return _mover_from_ids(u, fixed, c_id)


def fixing_generators(u: Universe, b: Iterable[Atom]) -> list[Permutation]:
    """Family transpositions generating a subgroup that fixes closure(b) pointwise.

    For each base or spread family, the members outside the closure are
    swapped pairwise along their sorted index order; each transposition is
    extended equivariantly.  Every generator fixes the closure pointwise, and
    for small bases the common fixed points recover the closure exactly.
    """
    base_ids = [u.atom_id(a) for a in b]
    x, y = closure_ids(u, base_ids)
    fixed = x | y
    gens: list[Permutation] = []
    seen_families: set[tuple[int, str, int]] = set()
    for i in range(u.size):
        if u.is_lift_atom(i):
            continue
        key = (u.level_of(i), u.element_of(i), u.parent_id(i))
        if key in seen_families:
            continue
        seen_families.add(key)
        free = [j for j in u.family_ids(i) if j not in fixed]
        for a, c in zip(free, free[1:]):
            mapping = list(range(u.size))
            mapping[a], mapping[c] = c, a
            _propagate(u, mapping, (a, c))
            gens.append(Permutation(u, mapping))
    return gens


class UnionFind:
    """Array union-find with path compression, used for orbit accumulation."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            if rj < ri:
                ri, rj = rj, ri
            self.parent[rj] = ri


def orbits(u: Universe, gens: Iterable[Permutation]) -> tuple[tuple[Atom, ...], ...]:
    """Partition of the atoms into orbits of the generated subgroup.

    Returned orbits are sorted by least member id, members in id order;
    singleton orbits are exactly the common fixed points of the generators.
    """
    uf = UnionFind(u.size)
    for g in gens:
        if g.universe is not u:
            raise UniverseMismatch("orbit generators must share the universe")
        for i, img in enumerate(g.mapping):
            uf.union(i, img)
    buckets: dict[int, list[int]] = {}
    for i in range(u.size):
        buckets.setdefault(uf.find(i), []).append(i)
    parts = sorted(buckets.values(), key=lambda ids: ids[0])
    return tuple(tuple(u.atoms[i] for i in ids) for ids in parts)


def embed_permutation(f: Permutation, bigger: Universe) -> Permutation:
    """Canonically extend a member into a deeper or wider truncation.

    Atoms present in both universes map structurally; new atoms keep their
    index and follow their parent's image (new base atoms stay put).  The
    result is a member of the bigger universe's group whenever f is one of
    the smaller's.
    """
    small = f.universe
    if bigger.order != small.order:
        raise UniverseMismatch("universes are over different doubly ordered sets")
    if bigger.depth < small.depth or bigger.index_budget < small.index_budget:
        raise UniverseMismatch("target truncation must be at least as large")

    # structural correspondence: small id -> bigger id, level by level
    corr = [0] * small.size
    for i in range(small.size):
        pid = small.parent_id(i)
        big_parent = -1 if pid < 0 else corr[pid]
        j = bigger.lookup(small.level_of(i), small.element_of(i), big_parent, small.index_of(i))
        assert j is not None, "bigger universe is missing a corresponding atom"
        corr[i] = j
    back = {j: i for i, j in enumerate(corr)}

    mapping = list(range(bigger.size))
    for j in range(bigger.size):
        i = back.get(j)
        if i is not None:
            mapping[j] = corr[f.mapping[i]]
        elif bigger.parent_id(j) >= 0:
            img = bigger.lookup(
                bigger.level_of(j),
                bigger.element_of(j),
                mapping[bigger.parent_id(j)],
                bigger.index_of(j),
            )
            assert img is not None
            mapping[j] = img
    return Permutation(bigger, mapping)
