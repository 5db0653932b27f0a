"""Independent replay checks for witnesses, certificates, and reports.

This module deliberately shares no code with the evidence constructors: it
re-derives every claim from the stored data and the universe's raw tables.
Each check returns a list of human-readable problems; an empty list means the
evidence replays cleanly.
"""

from __future__ import annotations

from .atoms import Universe
from .embedding import Cell, EmbeddingReport, RefutationCertificate, WitnessMap


def check_group_member(u: Universe, mapping: tuple[int, ...]) -> list[str]:
    """Re-derive group membership from raw atom tables (no constructor code)."""
    problems = []
    n = u.size
    if len(mapping) != n:
        return [f"permutation covers {len(mapping)} atoms, universe has {n}"]
    hit = [False] * n
    for i, img in enumerate(mapping):
        if not 0 <= img < n or hit[img]:
            problems.append(f"not a bijection at {u.atoms[i].path()}")
            return problems
        hit[img] = True
        if u.level_of(img) != u.level_of(i):
            problems.append(f"stratum broken at {u.atoms[i].path()}")
        if u.element_of(img) != u.element_of(i):
            problems.append(f"element broken at {u.atoms[i].path()}")
        pid = u.parent_id(i)
        if pid >= 0 and u.parent_id(img) != mapping[pid]:
            problems.append(f"parent equivariance broken at {u.atoms[i].path()}")
        if problems:
            return problems
    return problems


def verify_witness(u: Universe, w: WitnessMap) -> list[str]:
    """Replay a witness map: sector typing, injectivity or coverage, oracle sizes."""
    problems = []
    pair_ids = [(u.atom_id(a), u.atom_id(b)) for a, b in w.pairs]
    if w.kind == "injection":
        for src, img in pair_ids:
            if u.element_of(src) != w.source:
                problems.append(f"domain atom {u.atoms[src].path()} outside sector {w.source}")
            if u.element_of(img) != w.target:
                problems.append(f"image atom {u.atoms[img].path()} outside sector {w.target}")
        images = [img for _, img in pair_ids]
        if len(set(images)) != len(images):
            problems.append("images are not pairwise distinct")
        if w.total_level is not None:
            expected = {
                i for i in range(u.stratum_size(w.total_level))
                if u.element_of(i) == w.source
            }
            if {src for src, _ in pair_ids} != expected:
                problems.append(
                    f"domain is not total on the {w.source}-sector at level {w.total_level}"
                )
        if len({src for src, _ in pair_ids}) > len(set(images)):
            problems.append("size oracle rejects the injection")
    elif w.kind == "partial-surjection":
        for src, img in pair_ids:
            if u.element_of(src) != w.source:
                problems.append(f"domain atom {u.atoms[src].path()} outside sector {w.source}")
        if w.onto_level is not None:
            covered = {img for _, img in pair_ids}
            expected = {
                i for i in range(u.stratum_size(w.onto_level))
                if u.element_of(i) == w.target
            }
            if not expected <= covered:
                missing = sorted(expected - covered)[:3]
                shown = ", ".join(u.atoms[i].path() for i in missing)
                problems.append(f"declared codomain not covered (missing {shown})")
    else:
        problems.append(f"unknown witness kind {w.kind!r}")
    return problems


def verify_certificate(u: Universe, cert: RefutationCertificate) -> list[str]:
    """Replay a refutation: per target-sector atom, a member fixing the
    declared atoms pointwise and moving the declared atom."""
    problems = []
    if cert.kind not in ("no-injection", "no-surjection"):
        return [f"unknown certificate kind {cert.kind!r}"]
    target_sector = [i for i in range(u.size) if u.element_of(i) == cert.q]
    answered = {u.atom_id(e.atom) for e in cert.evidence}
    if set(target_sector) != answered:
        problems.append(f"evidence does not answer every atom of sector {cert.q}")
    support_ids = [u.atom_id(a) for a in cert.support]
    c_id = u.atom_id(cert.fresh_witness)
    if u.level_of(c_id) != 0 or u.element_of(c_id) != cert.p:
        problems.append("fresh witness is not a base atom of the refuted sector")
    for e in cert.evidence:
        b_id = u.atom_id(e.atom)
        label = e.atom.path()
        mapping = e.permutation.mapping
        member_problems = check_group_member(u, mapping)
        if member_problems:
            problems.append(f"[{label}] " + member_problems[0])
            continue
        if cert.kind == "no-surjection" or e.branch == "A":
            must_fix = support_ids + [b_id]
            must_move = c_id
        elif e.branch == "B":
            must_fix = support_ids + [c_id]
            must_move = b_id
        else:
            problems.append(f"[{label}] missing branch tag")
            continue
        for i in must_fix:
            if mapping[i] != i:
                problems.append(f"[{label}] declared fixed atom {u.atoms[i].path()} moves")
        if mapping[must_move] == must_move:
            problems.append(f"[{label}] declared moved atom {u.atoms[must_move].path()} is fixed")
    return problems


def verify_cell(u: Universe, cell: Cell) -> list[str]:
    problems = []
    d = u.order
    related = d.le(cell.source, cell.target) if cell.relation == "le" \
        else d.lestar(cell.source, cell.target)
    if cell.positive != related:
        problems.append(
            f"{cell.relation}({cell.source}, {cell.target}) verdict "
            f"contradicts the input relation"
        )
    if cell.positive:
        if cell.witness is None:
            problems.append("positive cell without a witness")
        else:
            problems.extend(verify_witness(u, cell.witness))
    else:
        if not cell.certificates:
            problems.append("negative cell without certificates")
        for cert in cell.certificates:
            expected_kind = "no-injection" if cell.relation == "le" else "no-surjection"
            if cert.kind != expected_kind or cert.p != cell.source or cert.q != cell.target:
                problems.append("certificate does not match its cell")
            problems.extend(verify_certificate(u, cert))
    return problems


def verify_report(report: EmbeddingReport) -> list[str]:
    """Replay every cell and re-check both matrices against the input order."""
    u = report.universe
    problems = []
    for cell in report.le_cells + report.lestar_cells:
        for problem in verify_cell(u, cell):
            problems.append(
                f"{cell.relation}({cell.source}, {cell.target}): {problem}"
            )
    d = report.order
    for p in d.carrier:
        for q in d.carrier:
            if d.le(p, q) and not report.cell("lestar", p, q).positive:
                problems.append(f"monotone consistency broken at ({p}, {q})")
    return problems
