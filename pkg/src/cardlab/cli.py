"""Command-line interface: file ingestion, dispatch, document emission.

Exit codes: 0 success, 1 user or input error, 2 internal invariant breach
(a report whose matrices disagree with the input, or evidence that fails
replay -- both signal a bug, since the underlying equivalence is a theorem).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .atoms import DEFAULT_SIZE_CAP, Universe, build_universe
from .closure import closure
from .embedding import embedding_report, refute_injection, refute_surjection
from .errors import CardlabError, ParseError, ShapeViolation
from .groups import fixing_generators, mover, orbits
from .orders import (
    DoublyOrderedSet,
    OrderSpec,
    complete_relations,
    enumerate_small_doubly_ordered,
    validate_order,
)
from .serialize import (
    canonical_json,
    compact_json,
    load_order_document,
    order_spec_doc,
    parse_atom_path,
    permutation_cycles_doc,
    report_doc,
)
from .verify import check_group_member, verify_report


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage problems are user errors
        raise UsageError(message)


def _universe_options(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--depth", type=int, default=2, help="truncation depth N (default 2)")
    sp.add_argument("--index-budget", type=int, default=3,
                    help="family index budget K (default 3)")
    sp.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP,
                    help="abort if the universe would exceed this many atoms")


def _common_options(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=("text", "json"), default="text",
                    help="output format (default text)")
    sp.add_argument("--complete", action="store_true",
                    help="reflexive-transitively close both relations before validating")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cardlab",
                     description="finite-truncation laboratory for sector comparability")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("validate",
                        help="check the axioms of a doubly ordered set")
    sp.add_argument("file")
    _common_options(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("report",
                        help="evaluate and verify both comparability matrices")
    sp.add_argument("file")
    _common_options(sp)
    _universe_options(sp)
    sp.add_argument("--support-budget", type=int, default=1,
                    help="max size of tested supports in refutations (default 1)")
    sp.add_argument("--seed", type=int, default=0,
                    help="seed for support sampling above the exhaustive cap")
    sp.add_argument("--figures", metavar="DIR",
                    help="also render matplotlib figures into this directory")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("closure",
                        help="closure of a set of atoms, with its chain decomposition")
    sp.add_argument("file")
    sp.add_argument("--atom", action="append", default=[], metavar="PATH",
                    help="atom path element@level[parent]#k (repeatable)")
    _common_options(sp)
    _universe_options(sp)
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("move",
                        help="group member fixing a support's closure and moving an atom")
    sp.add_argument("file")
    sp.add_argument("atom", metavar="ATOM", help="atom path to move")
    sp.add_argument("--support", action="append", default=[], metavar="PATH")
    _common_options(sp)
    _universe_options(sp)
    sp.set_defaults(func=cmd_move)

    sp = sub.add_parser("orbits",
                        help="orbit partition under the support-fixing generators")
    sp.add_argument("file")
    sp.add_argument("--support", action="append", default=[], metavar="PATH")
    _common_options(sp)
    _universe_options(sp)
    sp.set_defaults(func=cmd_orbits)

    sp = sub.add_parser("refute",
                        help="refutation certificate for one sector pair and support")
    sp.add_argument("file")
    sp.add_argument("p", metavar="P")
    sp.add_argument("q", metavar="Q")
    sp.add_argument("--kind", choices=("injection", "surjection"), required=True)
    sp.add_argument("--support", action="append", default=[], metavar="PATH")
    _common_options(sp)
    _universe_options(sp)
    sp.set_defaults(func=cmd_refute)

    sp = sub.add_parser("enumerate",
                        help="stream every labeled doubly ordered set on n elements")
    sp.add_argument("n", type=int)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_enumerate)

    return parser


def _load(args) -> DoublyOrderedSet:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {args.file}: {e.strerror}") from e
    spec = load_order_document(text)
    if args.complete:
        spec = complete_relations(spec)
    return validate_order(spec)


def _build(args, d: DoublyOrderedSet) -> Universe:
    return build_universe(d, args.depth, args.index_budget, args.size_cap)


def _warn_budget(u: Universe, support_atoms) -> None:
    # K sizing guidance: room for every support index plus a fresh witness
    # and a fresh swap partner
    if support_atoms:
        needed = max(a.index for a in support_atoms) + 2
        if u.index_budget < needed:
            print(
                f"warning: index budget K={u.index_budget} is tight for this "
                f"support; K>={needed} is guaranteed to suffice",
                file=sys.stderr,
            )


def _spec_of(d: DoublyOrderedSet) -> OrderSpec:
    return OrderSpec(d.carrier, d.le_pairs(), d.lestar_pairs())


def cmd_validate(args) -> int:
    d = _load(args)
    if args.format == "json":
        print(canonical_json(order_spec_doc(_spec_of(d))), end="")
    else:
        for e in d.carrier:
            print(f"element\t{e}")
        for a, b in sorted(d.le_pairs()):
            print(f"le\t{a}\t{b}")
        for a, b in sorted(d.lestar_pairs()):
            print(f"lestar\t{a}\t{b}")
    return 0


def cmd_report(args) -> int:
    d = _load(args)
    u = _build(args, d)
    report = embedding_report(u, support_budget=args.support_budget, seed=args.seed)
    problems = verify_report(report)
    matches = report.matrices_match_input()
    doc = report_doc(report)
    if args.format == "json":
        print(canonical_json(doc), end="")
    else:
        print(f"# cardlab report  depth={u.depth} index_budget={u.index_budget} "
              f"support_budget={args.support_budget} seed={args.seed}")
        print("# strata: " + " ".join(
            f"A{n}={u.stratum_size(n)}" for n in range(u.depth + 1)))
        for cell in report.le_cells + report.lestar_cells:
            verdict = "positive" if cell.positive else "negative"
            if cell.positive:
                evidence = doc["matrices"][cell.relation][cell.source][cell.target]["witness"]
                note = ""
            else:
                entry = doc["matrices"][cell.relation][cell.source][cell.target]
                evidence = ",".join(entry["certificates"])
                note = cell.supports_note
            print(f"{cell.relation}\t{cell.source}\t{cell.target}\t{verdict}\t{evidence}\t{note}")
        print(f"# matches_input={str(matches).lower()}")
    if args.figures:
        from .figures import render_report_figures

        for path in render_report_figures(report, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    if problems or not matches:
        for problem in problems[:20]:
            print(f"replay failure: {problem}", file=sys.stderr)
        if not matches:
            print("replay failure: matrices do not match the input relations",
                  file=sys.stderr)
        return 2
    return 0


def cmd_closure(args) -> int:
    d = _load(args)
    u = _build(args, d)
    atoms = [parse_atom_path(u, p) for p in args.atom]
    cs = closure(u, atoms)
    doc = {
        "base": sorted(a.path() for a in cs.base),
        "members": sorted(a.path() for a in cs.members),
        "lift_chain": sorted(a.path() for a in cs.x_part),
        "ancestor_chain": sorted(a.path() for a in cs.y_part),
    }
    if args.format == "json":
        print(canonical_json(doc), end="")
    else:
        for path in doc["members"]:
            part = "lift" if path in set(doc["lift_chain"]) else "ancestor"
            print(f"member\t{path}\t{part}")
    return 0


def cmd_move(args) -> int:
    d = _load(args)
    u = _build(args, d)
    support = [parse_atom_path(u, p) for p in args.support]
    _warn_budget(u, support)
    target = parse_atom_path(u, args.atom)
    pi = mover(u, support, target)
    cs = closure(u, support)
    audit = {
        "is_member": not check_group_member(u, pi.mapping),
        "fixes_closure_pointwise": all(pi.apply(a) == a for a in cs.members),
        "moves_atom": pi.apply(target) != target,
    }
    doc = {"cycles": permutation_cycles_doc(pi), "audit": audit}
    if args.format == "json":
        print(canonical_json(doc), end="")
    else:
        for cycle in doc["cycles"]:
            print("cycle\t" + "\t".join(cycle))
        for key in sorted(audit):
            print(f"audit\t{key}\t{str(audit[key]).lower()}")
    return 0 if all(audit.values()) else 2


def cmd_orbits(args) -> int:
    d = _load(args)
    u = _build(args, d)
    support = [parse_atom_path(u, p) for p in args.support]
    _warn_budget(u, support)
    gens = fixing_generators(u, support)
    parts = orbits(u, gens)
    cs = closure(u, support)
    singletons = sorted(part[0].path() for part in parts if len(part) == 1)
    members = sorted(a.path() for a in cs.members)
    doc = {
        "generators": len(gens),
        "orbits": [[a.path() for a in part] for part in parts],
        "singleton_orbits": singletons,
        "closure_members": members,
        "singletons_equal_closure": singletons == members,
    }
    if args.format == "json":
        print(canonical_json(doc), end="")
    else:
        for part in doc["orbits"]:
            print("orbit\t" + "\t".join(part))
        print(f"# singletons_equal_closure={str(doc['singletons_equal_closure']).lower()}")
    return 0


def cmd_refute(args) -> int:
    from .serialize import certificate_doc
    from .verify import verify_certificate

    d = _load(args)
    u = _build(args, d)
    support = [parse_atom_path(u, p) for p in args.support]
    _warn_budget(u, support)
    refute = refute_injection if args.kind == "injection" else refute_surjection
    cert = refute(u, args.p, args.q, support)
    problems = verify_certificate(u, cert)
    doc = certificate_doc(cert)
    if args.format == "json":
        print(canonical_json(doc), end="")
    else:
        print(f"# {cert.kind} certificate for ({cert.p}, {cert.q}), "
              f"fresh witness {cert.fresh_witness.path()}")
        for e in cert.evidence:
            branch = e.branch or "-"
            cycles = ";".join(
                "(" + " ".join(c) + ")" for c in permutation_cycles_doc(e.permutation)
            )
            print(f"evidence\t{e.atom.path()}\t{branch}\t{cycles}")
    if problems:
        for problem in problems[:20]:
            print(f"replay failure: {problem}", file=sys.stderr)
        return 2
    return 0


def cmd_enumerate(args) -> int:
    docs = [
        order_spec_doc(_spec_of(d)) for d in enumerate_small_doubly_ordered(args.n)
    ]
    if args.format == "json":
        print(canonical_json(docs), end="")
    else:
        for doc in docs:
            print(compact_json(doc))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ShapeViolation, AssertionError) as e:
        print(f"internal invariant breach: {e}", file=sys.stderr)
        return 2
    except CardlabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
