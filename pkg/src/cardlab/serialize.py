"""Bit-stable serialization of orders, witnesses, certificates, and reports.

All documents are JSON with lexicographically sorted keys, two-space
indentation, UTF-8, and a trailing LF; identical inputs always produce
byte-identical documents.  Atoms travel as path strings of the form
``element@level[parent-path]#index`` (empty brackets for base atoms), and
permutations travel in disjoint-cycle form over atom paths, each cycle
rotated to start at its least atom and cycles sorted by that atom.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .atoms import Atom, Universe
from .embedding import (
    Cell,
    EmbeddingReport,
    MoveEvidence,
    RefutationCertificate,
    WitnessMap,
)
from .errors import ParseError, UnknownAtom
from .groups import Permutation
from .orders import OrderSpec

REPORT_FORMAT = "cardlab.report/1"

_IDENTIFIER_RE = re.compile(r"^[^\s@\[\]#(),]+$")


def check_identifier(name: str) -> str:
    """Reject element names that would collide with the atom path syntax."""
    if not _IDENTIFIER_RE.match(name):
        raise ParseError(
            f"element identifier {name!r} contains whitespace or a reserved "
            "character (one of @ [ ] # ( ) ,)"
        )
    return name


def canonical_json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def compact_json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


# -- order specs ---------------------------------------------------------------

def order_spec_doc(spec: OrderSpec) -> dict:
    for e in spec.elements:
        check_identifier(e)
    return {
        "elements": list(spec.elements),
        "le": [list(p) for p in sorted(spec.le_pairs)],
        "lestar": [list(p) for p in sorted(spec.lestar_pairs)],
    }


def parse_order_spec(doc: Any) -> OrderSpec:
    if not isinstance(doc, dict):
        raise ParseError("order document must be a JSON object")
    for key in ("elements", "le", "lestar"):
        if key not in doc:
            raise ParseError(f"order document is missing the {key!r} array")
        if not isinstance(doc[key], list):
            raise ParseError(f"order document field {key!r} must be an array")
    elements = []
    for e in doc["elements"]:
        if not isinstance(e, str):
            raise ParseError("elements must be strings")
        elements.append(check_identifier(e))
    pair_sets = []
    for key in ("le", "lestar"):
        pairs = []
        for entry in doc[key]:
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(x, str) for x in entry)):
                raise ParseError(f"{key!r} entries must be two-element string arrays")
            pairs.append((entry[0], entry[1]))
        pair_sets.append(frozenset(pairs))
    return OrderSpec(tuple(elements), pair_sets[0], pair_sets[1])


def load_order_document(text: str) -> OrderSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from e
    return parse_order_spec(doc)


# -- atom paths ----------------------------------------------------------------

def atom_path(a: Atom) -> str:
    return a.path()


def parse_atom_path(u: Universe, text: str) -> Atom:
    """Resolve ``element@level[parent-path]#index`` against a universe."""
    atom, pos = _parse_path(u, text, 0)
    if pos != len(text):
        raise ParseError(f"trailing characters in atom path {text!r}", column=pos + 1)
    return atom


def _parse_path(u: Universe, text: str, pos: int) -> tuple[Atom, int]:
    at = text.find("@", pos)
    if at <= pos:
        raise ParseError(f"expected element@level in atom path {text!r}", column=pos + 1)
    element = text[pos:at]
    check_identifier(element)
    pos = at + 1
    level, pos = _parse_int(text, pos)
    if pos >= len(text) or text[pos] != "[":
        raise ParseError(f"expected '[' in atom path {text!r}", column=pos + 1)
    pos += 1
    parent: Atom | None = None
    if pos < len(text) and text[pos] != "]":
        parent, pos = _parse_path(u, text, pos)
    if pos >= len(text) or text[pos] != "]":
        raise ParseError(f"expected ']' in atom path {text!r}", column=pos + 1)
    pos += 1
    if pos >= len(text) or text[pos] != "#":
        raise ParseError(f"expected '#' in atom path {text!r}", column=pos + 1)
    pos += 1
    index, pos = _parse_int(text, pos)
    parent_id = -1 if parent is None else u.atom_id(parent)
    i = u.lookup(level, element, parent_id, index)
    if i is None:
        raise UnknownAtom(text)
    return u.atoms[i], pos


def _parse_int(text: str, pos: int) -> tuple[int, int]:
    end = pos
    while end < len(text) and text[end].isdigit():
        end += 1
    if end == pos:
        raise ParseError(f"expected a number in atom path {text!r}", column=pos + 1)
    return int(text[pos:end]), end


# -- permutations ----------------------------------------------------------------

def permutation_cycles_doc(perm: Permutation) -> list[list[str]]:
    u = perm.universe
    return [[u.atoms[i].path() for i in cycle] for cycle in perm.cycles()]


def parse_permutation_cycles(u: Universe, doc: Any) -> Permutation:
    if not isinstance(doc, list):
        raise ParseError("permutation must be an array of cycles")
    mapping = list(range(u.size))
    touched: set[int] = set()
    for cycle in doc:
        if not isinstance(cycle, list) or len(cycle) < 2:
            raise ParseError("each cycle must list at least two atom paths")
        ids = [u.atom_id(parse_atom_path(u, p)) for p in cycle]
        if len(set(ids)) != len(ids) or touched & set(ids):
            raise ParseError("cycles must be disjoint")
        touched.update(ids)
        for a, b in zip(ids, ids[1:] + ids[:1]):
            mapping[a] = b
    return Permutation(u, mapping)


# -- witnesses -------------------------------------------------------------------

def witness_doc(w: WitnessMap) -> dict:
    return {
        "kind": w.kind,
        "source": w.source,
        "target": w.target,
        "domain_note": w.domain_note,
        "total_level": w.total_level,
        "onto_level": w.onto_level,
        "pairs": sorted([a.path(), b.path()] for a, b in w.pairs),
    }


def parse_witness(u: Universe, doc: Any) -> WitnessMap:
    if not isinstance(doc, dict):
        raise ParseError("witness must be a JSON object")
    try:
        pairs = tuple(
            (parse_atom_path(u, a), parse_atom_path(u, b)) for a, b in doc["pairs"]
        )
        return WitnessMap(
            kind=doc["kind"],
            source=doc["source"],
            target=doc["target"],
            pairs=pairs,
            domain_note=doc["domain_note"],
            total_level=doc["total_level"],
            onto_level=doc["onto_level"],
        )
    except KeyError as e:
        raise ParseError(f"witness document is missing field {e.args[0]!r}") from e


# -- certificates ------------------------------------------------------------------

def certificate_doc(cert: RefutationCertificate) -> dict:
    evidence = {}
    for e in cert.evidence:
        entry = {"cycles": permutation_cycles_doc(e.permutation)}
        if e.branch is not None:
            entry["branch"] = e.branch
        evidence[e.atom.path()] = entry
    return {
        "kind": cert.kind,
        "p": cert.p,
        "q": cert.q,
        "support": sorted(a.path() for a in cert.support),
        "fresh_witness": cert.fresh_witness.path(),
        "evidence": evidence,
    }


def parse_certificate(u: Universe, doc: Any) -> RefutationCertificate:
    if not isinstance(doc, dict):
        raise ParseError("certificate must be a JSON object")
    try:
        support = tuple(
            sorted((parse_atom_path(u, p) for p in doc["support"]),
                   key=u.atom_id)
        )
        evidence = []
        for path in sorted(doc["evidence"], key=lambda s: u.atom_id(parse_atom_path(u, s))):
            entry = doc["evidence"][path]
            evidence.append(MoveEvidence(
                atom=parse_atom_path(u, path),
                branch=entry.get("branch"),
                permutation=parse_permutation_cycles(u, entry["cycles"]),
            ))
        return RefutationCertificate(
            kind=doc["kind"],
            p=doc["p"],
            q=doc["q"],
            support=support,
            fresh_witness=parse_atom_path(u, doc["fresh_witness"]),
            evidence=tuple(evidence),
        )
    except KeyError as e:
        raise ParseError(f"certificate document is missing field {e.args[0]!r}") from e


# -- reports ------------------------------------------------------------------------

def _witness_id(cell: Cell) -> str:
    return f"w:{cell.relation}:{cell.source}:{cell.target}"


def _certificate_id(cell: Cell, rank: int) -> str:
    return f"c:{cell.relation}:{cell.source}:{cell.target}:{rank}"


def report_doc(report: EmbeddingReport) -> dict:
    u = report.universe
    witnesses: dict[str, dict] = {}
    certificates: dict[str, dict] = {}
    matrices: dict[str, dict] = {"le": {}, "lestar": {}}
    for cell in report.le_cells + report.lestar_cells:
        row = matrices[cell.relation].setdefault(cell.source, {})
        if cell.positive:
            wid = _witness_id(cell)
            witnesses[wid] = witness_doc(cell.witness)
            row[cell.target] = {"verdict": "positive", "witness": wid}
        else:
            ids = []
            for rank, cert in enumerate(cell.certificates):
                cid = _certificate_id(cell, rank)
                certificates[cid] = certificate_doc(cert)
                ids.append(cid)
            row[cell.target] = {
                "verdict": "negative",
                "certificates": ids,
                "supports_note": cell.supports_note,
            }
    return {
        "format": REPORT_FORMAT,
        "config": {
            "depth": u.depth,
            "index_budget": u.index_budget,
            "support_budget": report.support_budget,
            "seed": report.seed,
        },
        "order": {
            "elements": list(u.order.carrier),
            "le": [list(p) for p in sorted(u.order.le_pairs())],
            "lestar": [list(p) for p in sorted(u.order.lestar_pairs())],
        },
        "atoms": {
            "strata": [u.stratum_size(n) for n in range(u.depth + 1)],
            "sectors": {p: sum(1 for a in u.atoms if a.element == p)
                        for p in u.order.carrier},
        },
        "matrices": matrices,
        "witnesses": witnesses,
        "certificates": certificates,
        "matches_input": report.matrices_match_input(),
    }


def parse_report(doc: Any) -> EmbeddingReport:
    """Rebuild a report (and its universe) from a serialized document."""
    from .atoms import build_universe
    from .orders import validate_order

    if not isinstance(doc, dict) or doc.get("format") != REPORT_FORMAT:
        raise ParseError(f"not a {REPORT_FORMAT} document")
    spec = parse_order_spec(doc["order"])
    d = validate_order(spec)
    config = doc["config"]
    u = build_universe(d, config["depth"], config["index_budget"])

    def parse_cells(relation: str) -> tuple[Cell, ...]:
        cells = []
        for p in d.carrier:
            for q in d.carrier:
                entry = doc["matrices"][relation][p][q]
                if entry["verdict"] == "positive":
                    cells.append(Cell(
                        relation, p, q, True,
                        witness=parse_witness(u, doc["witnesses"][entry["witness"]]),
                    ))
                else:
                    certs = tuple(
                        parse_certificate(u, doc["certificates"][cid])
                        for cid in entry["certificates"]
                    )
                    cells.append(Cell(
                        relation, p, q, False,
                        certificates=certs,
                        supports_note=entry["supports_note"],
                    ))
        return tuple(cells)

    try:
        return EmbeddingReport(
            universe=u,
            support_budget=config["support_budget"],
            seed=config["seed"],
            le_cells=parse_cells("le"),
            lestar_cells=parse_cells("lestar"),
        )
    except KeyError as e:
        raise ParseError(f"report document is missing field {e.args[0]!r}") from e
