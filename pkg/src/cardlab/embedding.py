"""Evidence for cardinal comparisons between sectors.

For each ordered pair of elements the truncation supports four kinds of
evidence, mirroring the two directions of the embedding result:

* an injection witness from one sector into another (lift children),
* a partial surjection witness (parent projection of spread atoms),
* a refutation of surjective comparison (a fresh base atom that no group
  member fixing a tested support plus any preimage candidate can pin down),
* a refutation of injective comparison (same fresh atom, with a two-branch
  case split over the candidate image).

Refutations are certificates: for every atom of the target sector they store
a concrete group member that fixes the declared atoms pointwise while moving
the declared one.  They are replayed by an independent checker in
``cardlab.verify``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sized

from .atoms import Atom, Universe, sector_ids
from .closure import atom_closure_ids, closure_ids, closure_shape_le, closure_shape_lestar
from .errors import (
    IndexBudgetExhausted,
    NotStrictlyLess,
    PreconditionViolated,
)
from .groups import Permutation, _mover_from_ids
from .orders import DoublyOrderedSet, strict_less

DEFAULT_EXHAUSTIVE_CAP = 48
DEFAULT_SAMPLE_SIZE = 12


# -- finite-cardinal oracle --------------------------------------------------

def finite_le(x: Sized, y: Sized) -> bool:
    """True iff an injection from x into y exists (finite sets: size check)."""
    return len(x) <= len(y)


def finite_lestar(x: Sized, y: Sized) -> bool:
    """True iff a partial surjection from y onto x exists.

    The empty map covers an empty x from any y; otherwise a pigeonhole
    argument reduces existence to the size comparison.
    """
    return len(x) == 0 or len(x) <= len(y)


# -- witnesses ----------------------------------------------------------------

@dataclass(frozen=True)
class WitnessMap:
    """A finite injection or partial surjection between sector strata."""

    kind: str  # "injection" | "partial-surjection"
    source: str
    target: str
    pairs: tuple[tuple[Atom, Atom], ...]
    domain_note: str
    total_level: int | None = None    # injections: stratum the map is total on
    onto_level: int | None = None     # partial surjections: covered stratum


def injection_witness(u: Universe, p: str, q: str) -> WitnessMap:
    """Map each atom of sector p below the top stratum to its lift child in q.

    For p = q the identity on the whole sector is returned.  Injectivity is
    re-checked by a uniqueness scan over the images.
    """
    u.order.index(p), u.order.index(q)
    if p == q:
        ids = sector_ids(u, p)
        pairs = tuple((u.atoms[i], u.atoms[i]) for i in ids)
        return WitnessMap(
            kind="injection",
            source=p,
            target=q,
            pairs=pairs,
            domain_note=f"identity, total on the {p}-sector through level {u.depth}",
            total_level=u.depth,
        )
    if not strict_less(u.order, p, q):
        raise NotStrictlyLess(p, q)
    pairs = []
    for i in sector_ids(u, p):
        if u.level_of(i) >= u.depth:
            continue
        child = u.lookup(u.level_of(i) + 1, q, i, 0)
        assert child is not None, "strictly related sectors must provide lift children"
        pairs.append((u.atoms[i], u.atoms[child]))
    images = {u.atom_id(img) for _, img in pairs}
    assert len(images) == len(pairs), "lift images collided; injectivity scan failed"
    if u.depth > 0:
        note = (f"total on the {p}-sector through level {u.depth - 1}, "
                f"images in the {q}-sector")
        total_level = u.depth - 1
    else:
        note = f"empty map; the {p}-sector has no atoms below level 0"
        total_level = None
    return WitnessMap(
        kind="injection",
        source=p,
        target=q,
        pairs=tuple(pairs),
        domain_note=note,
        total_level=total_level,
    )


def surjection_witness(u: Universe, p: str, q: str) -> WitnessMap:
    """Project the spread atoms of sector q onto their parents.

    Defined when p is lestar-below but not le-below q.  The image covers
    every atom of sector p below the top stratum (each has spread children
    tagged q); coverage is re-checked by a scan.
    """
    u.order.index(p), u.order.index(q)
    if u.order.le(p, q) or not u.order.lestar(p, q):
        raise PreconditionViolated(
            f"surjection witnesses need {p!r} lestar-below but not le-below {q!r}"
        )
    pairs = []
    for i in sector_ids(u, q):
        pid = u.parent_id(i)
        if pid < 0 or u.is_lift_atom(i):
            continue
        pairs.append((u.atoms[i], u.atoms[pid]))
    covered = {u.atom_id(img) for _, img in pairs}
    expected = {
        i for i in sector_ids(u, p) if u.level_of(i) < u.depth
    }
    assert expected <= covered, "spread projection failed to cover the source sector"
    if u.depth > 0:
        note = (f"parent projection of the spread atoms of the {q}-sector, "
                f"onto the {p}-sector through level {u.depth - 1}")
        onto_level = u.depth - 1
    else:
        note = "empty projection; no spread atoms exist at depth 0"
        onto_level = None
    return WitnessMap(
        kind="partial-surjection",
        source=q,
        target=p,
        pairs=tuple(pairs),
        domain_note=note,
        onto_level=onto_level,
    )


def lestar_witness_from_le(w: WitnessMap) -> WitnessMap:
    """Invert an injection witness into a partial surjection witness."""
    if w.kind != "injection":
        raise PreconditionViolated("only injection witnesses can be inverted")
    return WitnessMap(
        kind="partial-surjection",
        source=w.target,
        target=w.source,
        pairs=tuple((img, src) for src, img in w.pairs),
        domain_note=f"inverse of an injection witness; onto the {w.source}-sector "
                    + (f"through level {w.total_level}" if w.total_level is not None
                       else "(empty)"),
        onto_level=w.total_level,
    )


# -- refutation certificates ---------------------------------------------------

@dataclass(frozen=True)
class MoveEvidence:
    """One certificate entry: a member fixing the stated atoms, moving one atom."""

    atom: Atom                 # the target-sector atom this entry answers for
    branch: str | None         # no-injection: "A" (move fresh) / "B" (move atom)
    permutation: Permutation


@dataclass(frozen=True)
class RefutationCertificate:
    """Machine-checkable refusal of a sector comparison for one tested support."""

    kind: str  # "no-injection" | "no-surjection"
    p: str
    q: str
    support: tuple[Atom, ...]
    fresh_witness: Atom
    evidence: tuple[MoveEvidence, ...]


def _fresh_base_atom(u: Universe, p: str, support_members: frozenset[int]) -> int:
    """Least-index base atom of sector p outside the support's closure."""
    for k in range(u.index_budget):
        i = u.lookup(0, p, -1, k)
        if i not in support_members:
            return i
    blocked = frozenset(
        u.index_of(i) for i in support_members
        if u.level_of(i) == 0 and u.element_of(i) == p
    )
    raise IndexBudgetExhausted(blocked, suggested_k=len(blocked) + 2)


def _support_ids(u: Universe, support: Iterable[Atom]) -> list[int]:
    return sorted(u.atom_id(a) for a in support)


def refute_surjection(u: Universe, p: str, q: str,
                      support: Iterable[Atom]) -> RefutationCertificate:
    """Certify that no map with the tested support surjects sector q onto sector p.

    Picks a fresh base atom c of sector p outside the support's closure; for
    every b in sector q, the closure of {b} stays lestar-tied to q at level 0,
    so c escapes it, and a mover fixing both closures while moving c exists.
    """
    u.order.index(p), u.order.index(q)
    if u.order.lestar(p, q):
        raise PreconditionViolated(
            f"cannot refute: {p!r} is lestar-below {q!r}"
        )
    sup_ids = _support_ids(u, support)
    sx, sy = closure_ids(u, sup_ids)
    sup_members = sx | sy
    c_id = _fresh_base_atom(u, p, sup_members)
    evidence = []
    for b in sector_ids(u, q):
        closure_shape_lestar(u, u.atoms[b], q)
        fixed = sup_members | atom_closure_ids(u, b)
        assert c_id not in fixed, "fresh atom fell inside a tested closure"
        pi = _mover_from_ids(u, fixed, c_id)
        evidence.append(MoveEvidence(atom=u.atoms[b], branch=None, permutation=pi))
    return RefutationCertificate(
        kind="no-surjection",
        p=p,
        q=q,
        support=tuple(u.atoms[i] for i in sup_ids),
        fresh_witness=u.atoms[c_id],
        evidence=tuple(evidence),
    )


def refute_injection(u: Universe, p: str, q: str,
                     support: Iterable[Atom]) -> RefutationCertificate:
    """Certify that no map with the tested support injects sector p into sector q.

    Case split per candidate image b: either the fresh atom c escapes the
    closure of {b} and a mover fixes support+b while moving c (branch A), or
    c sits in that closure, in which case b escapes the closure of {c} (whose
    members are all le-above p) and a mover fixes support+c while moving b
    (branch B).
    """
    u.order.index(p), u.order.index(q)
    if u.order.le(p, q):
        raise PreconditionViolated(f"cannot refute: {p!r} is le-below {q!r}")
    sup_ids = _support_ids(u, support)
    sx, sy = closure_ids(u, sup_ids)
    sup_members = sx | sy
    c_id = _fresh_base_atom(u, p, sup_members)
    evidence = []
    for b in sector_ids(u, q):
        b_members = atom_closure_ids(u, b)
        if c_id not in b_members:
            fixed = sup_members | b_members
            pi = _mover_from_ids(u, fixed, c_id)
            evidence.append(MoveEvidence(atom=u.atoms[b], branch="A", permutation=pi))
        else:
            closure_shape_le(u, u.atoms[c_id])
            fixed = sup_members | atom_closure_ids(u, c_id)
            assert b not in fixed, "image candidate fell inside the fresh atom's closure"
            pi = _mover_from_ids(u, fixed, b)
            evidence.append(MoveEvidence(atom=u.atoms[b], branch="B", permutation=pi))
    return RefutationCertificate(
        kind="no-injection",
        p=p,
        q=q,
        support=tuple(u.atoms[i] for i in sup_ids),
        fresh_witness=u.atoms[c_id],
        evidence=tuple(evidence),
    )


# -- the report ----------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    """One verdict of the comparison matrix, with its evidence."""

    relation: str  # "le" | "lestar"
    source: str
    target: str
    positive: bool
    witness: WitnessMap | None = None
    certificates: tuple[RefutationCertificate, ...] = ()
    supports_note: str = ""


@dataclass(frozen=True)
class EmbeddingReport:
    """Both verdict matrices over a truncation, every cell carrying evidence."""

    universe: Universe
    support_budget: int
    seed: int
    le_cells: tuple[Cell, ...]
    lestar_cells: tuple[Cell, ...]

    @property
    def order(self) -> DoublyOrderedSet:
        return self.universe.order

    def cell(self, relation: str, p: str, q: str) -> Cell:
        cells = self.le_cells if relation == "le" else self.lestar_cells
        for c in cells:
            if c.source == p and c.target == q:
                return c
        raise KeyError((relation, p, q))

    def matrices_match_input(self) -> bool:
        d = self.order
        return all(
            c.positive == (d.le(c.source, c.target) if c.relation == "le"
                           else d.lestar(c.source, c.target))
            for c in self.le_cells + self.lestar_cells
        )


def _admissible_support_ids(u: Universe, p: str) -> list[int]:
    """Single-atom supports the truncation can certify against fresh p-atoms.

    An atom whose level-0 ancestor sits in sector p pins base indices of that
    sector inside its closure; at desk-scale budgets such supports provably
    exhaust the index budget, so they are excluded from sampling.
    """
    return [i for i in range(u.size) if u.root_element(i) != p]


def _sample_supports(u: Universe, p: str, support_budget: int, rng: random.Random,
                     exhaustive_cap: int, sample_size: int) -> tuple[list[list[int]], str]:
    supports: list[list[int]] = [[]]
    if support_budget < 1:
        return supports, "empty support only"
    admissible = _admissible_support_ids(u, p)
    if u.size <= exhaustive_cap:
        supports.extend([i] for i in admissible)
        note = f"exhaustive over {len(admissible)} admissible atoms"
    else:
        chosen = sorted(rng.sample(admissible, min(sample_size, len(admissible))))
        supports.extend([i] for i in chosen)
        note = f"seeded sample of {len(chosen)} of {len(admissible)} admissible atoms"
    for size in range(2, support_budget + 1):
        if len(admissible) < size:
            break
        for _ in range(min(sample_size, len(admissible))):
            supports.append(sorted(rng.sample(admissible, size)))
        note += f"; plus seeded size-{size} samples"
    return supports, note


def embedding_report(u: Universe, support_budget: int = 1, seed: int = 0,
                     exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
                     sample_size: int = DEFAULT_SAMPLE_SIZE) -> EmbeddingReport:
    """Evaluate both matrices over all ordered element pairs.

    Positive cells carry witnesses; negative cells carry one refutation
    certificate per tested support (the empty support plus admissible
    single atoms, exhaustively when the universe is small, otherwise a
    seeded deterministic sample).
    """
    d = u.order
    rng = random.Random(seed)
    le_cells: list[Cell] = []
    lestar_cells: list[Cell] = []
    try:
        for p in d.carrier:
            for q in d.carrier:
                if d.le(p, q):
                    w = injection_witness(u, p, q)
                    le_cells.append(Cell("le", p, q, True, witness=w))
                    lestar_cells.append(
                        Cell("lestar", p, q, True, witness=lestar_witness_from_le(w))
                    )
                    continue
                supports, note = _sample_supports(
                    u, p, support_budget, rng, exhaustive_cap, sample_size
                )
                certs = tuple(
                    refute_injection(u, p, q, [u.atoms[i] for i in ids])
                    for ids in supports
                )
                le_cells.append(
                    Cell("le", p, q, False, certificates=certs, supports_note=note)
                )
                if d.lestar(p, q):
                    lestar_cells.append(
                        Cell("lestar", p, q, True, witness=surjection_witness(u, p, q))
                    )
                else:
                    certs = tuple(
                        refute_surjection(u, p, q, [u.atoms[i] for i in ids])
                        for ids in supports
                    )
                    lestar_cells.append(
                        Cell("lestar", p, q, False, certificates=certs, supports_note=note)
                    )
    except IndexBudgetExhausted as e:
        # a full run needs room for each support atom's family index plus a
        # fresh witness and a fresh swap partner
        raise IndexBudgetExhausted(
            e.excluded, max(e.suggested_k, support_budget + 2)
        ) from e
    return EmbeddingReport(
        universe=u,
        support_budget=support_budget,
        seed=seed,
        le_cells=tuple(le_cells),
        lestar_cells=tuple(lestar_cells),
    )
