"""Finite doubly ordered sets: validation, strict comparison, enumeration.

A doubly ordered set is a carrier with a partial order ``le`` and a preorder
``lestar`` containing it.  Relations are kept as dense boolean matrices over
the lexicographically sorted carrier; every axiom is checked by an explicit
pair or triple scan so failures name the offending tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    BudgetExceeded,
    InvalidSpec,
    NotAntisymmetric,
    NotContained,
    NotReflexive,
    NotTransitive,
    UnknownElement,
)

Pair = tuple[str, str]


@dataclass(frozen=True)
class OrderSpec:
    """Raw, unvalidated encoding of a carrier with two relations."""

    elements: tuple[str, ...]
    le_pairs: frozenset[Pair]
    lestar_pairs: frozenset[Pair]

    @classmethod
    def of(cls, elements: Iterable[str], le_pairs: Iterable[Pair],
           lestar_pairs: Iterable[Pair]) -> "OrderSpec":
        return cls(
            tuple(elements),
            frozenset((a, b) for a, b in le_pairs),
            frozenset((a, b) for a, b in lestar_pairs),
        )


@dataclass(frozen=True)
class DoublyOrderedSet:
    """Validated carrier plus le/lestar matrices (le partial order, lestar preorder)."""

    carrier: tuple[str, ...]
    le_matrix: tuple[tuple[bool, ...], ...]
    lestar_matrix: tuple[tuple[bool, ...], ...]

    def index(self, p: str) -> int:
        try:
            return self.carrier.index(p)
        except ValueError:
            raise UnknownElement(p) from None

    def le(self, p: str, q: str) -> bool:
        return self.le_matrix[self.index(p)][self.index(q)]

    def lestar(self, p: str, q: str) -> bool:
        return self.lestar_matrix[self.index(p)][self.index(q)]

    def le_pairs(self) -> frozenset[Pair]:
        return _matrix_pairs(self.carrier, self.le_matrix)

    def lestar_pairs(self) -> frozenset[Pair]:
        return _matrix_pairs(self.carrier, self.lestar_matrix)


def _matrix_pairs(carrier, matrix) -> frozenset[Pair]:
    return frozenset(
        (carrier[i], carrier[j])
        for i in range(len(carrier))
        for j in range(len(carrier))
        if matrix[i][j]
    )


def _build_matrix(carrier: tuple[str, ...], pairs: frozenset[Pair]):
    pos = {e: i for i, e in enumerate(carrier)}
    size = len(carrier)
    rows = [[False] * size for _ in range(size)]
    for a, b in pairs:
        rows[pos[a]][pos[b]] = True
    return tuple(tuple(r) for r in rows)


def validate_order(spec: OrderSpec) -> DoublyOrderedSet:
    """Check every axiom of a doubly ordered set by exhaustive scans.

    Raises NotReflexive / NotAntisymmetric / NotTransitive / NotContained
    naming the first violating tuple (in lexicographic scan order), or
    InvalidSpec / UnknownElement for structural problems.
    """
    if len(set(spec.elements)) != len(spec.elements):
        raise InvalidSpec("duplicate element identifiers")
    known = set(spec.elements)
    for pairs in (spec.le_pairs, spec.lestar_pairs):
        for a, b in pairs:
            if a not in known:
                raise UnknownElement(a)
            if b not in known:
                raise UnknownElement(b)

    carrier = tuple(sorted(spec.elements))
    le = _build_matrix(carrier, spec.le_pairs)
    lestar = _build_matrix(carrier, spec.lestar_pairs)
    size = len(carrier)

    for name, rel in (("le", le), ("lestar", lestar)):
        for i in range(size):
            if not rel[i][i]:
                raise NotReflexive(name, carrier[i])
    for i in range(size):
        for j in range(size):
            if i != j and le[i][j] and le[j][i]:
                raise NotAntisymmetric(carrier[i], carrier[j])
    for name, rel in (("le", le), ("lestar", lestar)):
        for i in range(size):
            for j in range(size):
                if not rel[i][j]:
                    continue
                for k in range(size):
                    if rel[j][k] and not rel[i][k]:
                        raise NotTransitive(name, carrier[i], carrier[j], carrier[k])
    for i in range(size):
        for j in range(size):
            if le[i][j] and not lestar[i][j]:
                raise NotContained(carrier[i], carrier[j])

    return DoublyOrderedSet(carrier, le, lestar)


def strict_less(d: DoublyOrderedSet, p: str, q: str) -> bool:
    """True iff p is le-below q and p != q (the strict part of le)."""
    return p != q and d.le(p, q)


def _closure_pairs(elements: tuple[str, ...], pairs: frozenset[Pair]) -> frozenset[Pair]:
    # reflexive-transitive closure by iterated squaring of the pair set
    closed = set(pairs)
    closed.update((e, e) for e in elements)
    while True:
        extra = {
            (a, d)
            for (a, b) in closed
            for (c, d) in closed
            if b == c and (a, d) not in closed
        }
        if not extra:
            return frozenset(closed)
        closed.update(extra)


def complete_relations(spec: OrderSpec) -> OrderSpec:
    """Reflexive-transitively close both relations; lestar absorbs closed le.

    The result always passes the reflexivity, transitivity and containment
    checks of validate_order; antisymmetry failures still surface there.
    """
    if len(set(spec.elements)) != len(spec.elements):
        raise InvalidSpec("duplicate element identifiers")
    known = set(spec.elements)
    for pairs in (spec.le_pairs, spec.lestar_pairs):
        for a, b in pairs:
            if a not in known:
                raise UnknownElement(a)
            if b not in known:
                raise UnknownElement(b)
    le = _closure_pairs(spec.elements, spec.le_pairs)
    lestar = _closure_pairs(spec.elements, spec.lestar_pairs | spec.le_pairs)
    return OrderSpec(spec.elements, le, lestar)


ENUMERATION_BUDGET = 3


def enumerate_small_doubly_ordered(n: int) -> Iterator[DoublyOrderedSet]:
    """Yield every labeled doubly ordered set on the carrier e1..en.

    Streams every labeled partial order paired with every labeled preorder
    containing it, in a fixed deterministic order, without duplicates.
    Guarded to n <= 3; the structure count grows too fast beyond that.
    """
    if n > ENUMERATION_BUDGET:
        raise BudgetExceeded(f"enumeration is capped at n<={ENUMERATION_BUDGET}, got {n}")
    elements = tuple(f"e{i + 1}" for i in range(n))
    diagonal = frozenset((e, e) for e in elements)
    off_diag = sorted((a, b) for a in elements for b in elements if a != b)
    m = len(off_diag)

    def pairs_of(mask: int) -> frozenset[Pair]:
        return diagonal | frozenset(off_diag[i] for i in range(m) if mask >> i & 1)

    def transitive(rel: frozenset[Pair]) -> bool:
        return all(
            (a, d) in rel
            for (a, b) in rel
            for (c, d) in rel
            if b == c
        )

    def antisymmetric(rel: frozenset[Pair]) -> bool:
        return all(not (a != b and (b, a) in rel) for (a, b) in rel)

    for le_mask in range(1 << m):
        le = pairs_of(le_mask)
        if not (antisymmetric(le) and transitive(le)):
            continue
        for lestar_mask in range(1 << m):
            if lestar_mask & le_mask != le_mask:
                continue
            lestar = pairs_of(lestar_mask)
            if not transitive(lestar):
                continue
            yield validate_order(OrderSpec(elements, le, lestar))
