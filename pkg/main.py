"""
═══════════════════════════════════════════════════════════
  Ultrametric Tree Toolkit
  ────────────────────────
    Build Bruhat–Tits tree slices, evaluate distances, map
    between Berkovich disks and the coarse-grained W space,
    and run the coarse-graining audits.

  Usage:
      python main.py tree --p 2 --e 1 --f 1 --omega -1:2 --depth 3 --format dot
      python main.py tree --p 2 --f 2 --omega 0:2 --enhanced 1 --format json
      python main.py distance --metric rho --p 3 "center=0,rexp=0" "center=0,rexp=-3"
      python main.py distance --metric chordal --p 3 "z0=1,z=0" "z0=3,z=0"
      python main.py distance --metric graph --p 3 "z=5,omega=2" "z=2,omega=2"
      python main.py classify --p 3 --berk "center=0,rexp=0" --map phi
      python main.py classify --p 3 --w "omega=sqrt2,center=1" --map phi-inv
      python main.py classify --p 3 --point "z0=3,z=5" --class
      python main.py audit census --p 2 --f 1 --m 3
      python main.py audit partition --p 3 --n 500 --seed 7 --levels 0,1,2

  Exit codes: 0 ok · 2 usage / parse · 3 size bound · 4 domain · 5 audit failure
═══════════════════════════════════════════════════════════
"""
import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

import pandas as pd

from config import config
from padic.errors import DeskBoundError, DomainError, LiteralParseError, PrecisionError, SpecMismatchError
from padic.exponent import format_ratio, power_literal
from padic.extension import ExtensionSpec, make_extension
from padic.literals import format_expansion, parse_element, parse_keyed
from tree.bt_tree import build_enhanced_tree, build_tree, graph_distance, node_of_point
from tree.chordal import ProductPoint, canonical_class, chordal_u_exponent
from tree.export import to_dot, to_json
from berkovich.ext import format_ext
from berkovich.points import (
    classify,
    parse_berk_literal,
    parse_w_literal,
    phi,
    phi_inv,
    point_to_dict,
    rho,
    wpoint_to_dict,
)
from audit.coarse_grain import CoarseGrainAuditor, report_to_json

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BOUNDS = 3
EXIT_DOMAIN = 4
EXIT_AUDIT = 5

# flags whose values may legitimately start with '-'
_SIGNED_FLAGS = ("--omega", "--omegas")


class AuditFailure(Exception):
    pass


def _status(message: str) -> None:
    print(message, file=sys.stderr)


# ======================================================================
# Parser
# ======================================================================

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="Residue characteristic (prime)")
    common.add_argument("--e", type=int, default=1, help="Ramification index")
    common.add_argument("--f", type=int, default=1, help="Residual degree")
    common.add_argument(
        "--precision", type=int, default=config.export.default_precision,
        help="Relative π-adic precision of parsed elements",
    )
    common.add_argument("--format", choices=("json", "dot", "text"), default=None,
                        help="Output format (default depends on the subcommand)")
    common.add_argument("--seed", type=int, default=config.sampling.default_seed,
                        help="Seed for sampled corpora")
    common.add_argument("--out", help="Write the result to this file instead of stdout")

    parser = argparse.ArgumentParser(
        description="Ultrametric tree toolkit (tree slices, distances, Berkovich maps, audits)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tree = sub.add_parser("tree", parents=[common], help="Build and export a tree slice")
    p_tree.add_argument("--omega", required=True,
                        help="Trunk window lo:hi, rationals in (1/e)Z (example: -1:2)")
    p_tree.add_argument("--depth", type=int, default=None,
                        help="Maximum branch word length (default: full window)")
    p_tree.add_argument("--enhanced", type=int, default=0, metavar="M",
                        help="Attach refinement layers 1..M")

    p_dist = sub.add_parser("distance", parents=[common], help="Distance between two points")
    p_dist.add_argument("--metric", choices=("rho", "chordal", "graph"), default="rho")
    p_dist.add_argument("a", help="First point literal")
    p_dist.add_argument("b", help="Second point literal")

    p_cls = sub.add_parser("classify", parents=[common],
                           help="Classify a point and map it through phi / phi-inv")
    source = p_cls.add_mutually_exclusive_group(required=True)
    source.add_argument("--berk", help='Disk literal "center=<element>,rexp=<ext>"')
    source.add_argument("--w", help='W literal "omega=<ext>,center=<element>"')
    source.add_argument("--point", help='Product point literal "z0=<element>,z=<element>"')
    p_cls.add_argument("--map", choices=("phi", "phi-inv"), default=None)
    p_cls.add_argument("--canonical", action="store_true",
                       help="Use the canonical (digit-truncated) phi image")
    p_cls.add_argument("--class", dest="with_class", action="store_true",
                       help="Report the canonical class representative (--point only)")
    p_cls.add_argument("--level", type=int, default=0, help="Refinement level for --class")

    p_audit = sub.add_parser("audit", parents=[common], help="Run a coarse-graining audit")
    p_audit.add_argument("kind", choices=("census", "partition", "siblings", "nesting"))
    p_audit.add_argument("--m", type=int, default=2,
                         help="Census: levels 1..M · siblings: levels 0..M")
    p_audit.add_argument("--n", type=int, default=config.sampling.corpus_size,
                         help="Partition corpus size")
    p_audit.add_argument("--levels", default="0,1,2", help="Partition levels (comma-separated)")
    p_audit.add_argument("--z", default="0", help="Nesting: element literal")
    p_audit.add_argument("--omegas", default="0,1,2", help="Nesting: increasing omega chain")
    p_audit.add_argument("--csv", help="Also write the audit table as CSV")
    return parser


def _join_signed(argv: List[str]) -> List[str]:
    out: List[str] = []
    it = iter(range(len(argv)))
    for i in it:
        if argv[i] in _SIGNED_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(argv[i])
    return out


def _spec_from_args(parser: argparse.ArgumentParser, args) -> ExtensionSpec:
    try:
        return make_extension(args.p, args.e, args.f, args.precision)
    except DomainError as exc:
        parser.error(str(exc))


def _check_classify(parser: argparse.ArgumentParser, args) -> None:
    """Reject flag combinations classify cannot honour."""
    if args.point is None and (args.with_class or args.level):
        parser.error("--class and --level apply to --point only")
    if args.point is not None and args.map is not None:
        parser.error("--map applies to --berk (phi) or --w (phi-inv)")
    if args.map == "phi" and args.berk is None:
        parser.error("--map phi needs a --berk disk")
    if args.map == "phi-inv" and args.w is None:
        parser.error("--map phi-inv needs a --w point")
    if args.canonical and args.map != "phi":
        parser.error("--canonical only applies to --map phi")


def _fractions(text: str, flag: str) -> List[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.replace(":", ",").split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise LiteralParseError(f"{flag}: '{text}' is not a list of rationals") from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        folder = os.path.dirname(out)
        if folder:
            os.makedirs(folder, exist_ok=True)
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _status(f"  ✓ wrote {out}")
    else:
        sys.stdout.write(text)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ======================================================================
# Subcommands
# ======================================================================

def cmd_tree(spec: ExtensionSpec, args) -> str:
    bounds = _fractions(args.omega, "--omega")
    if len(bounds) != 2:
        raise LiteralParseError(f"--omega expects lo:hi, got '{args.omega}'")
    ts = build_tree(spec, bounds[0], bounds[1], args.depth)
    if args.enhanced:
        ts = build_enhanced_tree(spec, ts, args.enhanced)
    _status(f"  ✓ tree slice {spec}: {len(ts.nodes)} nodes, "
            f"{len(ts.refined)} refined, {len(ts.edges) + len(ts.refinement_edges)} edges")

    fmt = args.format or "dot"
    if fmt == "dot":
        return to_dot(ts)
    if fmt == "json":
        return to_json(ts)
    return "\n".join(ts.node(i).label() for i in range(len(ts))) + "\n"


def _parse_point(spec: ExtensionSpec, text: str) -> ProductPoint:
    fields = parse_keyed(text, ("z0", "z"))
    if "z0" not in fields:
        raise LiteralParseError(f"product point literal needs z0: '{text}'")
    return ProductPoint(parse_element(spec, fields["z0"]), parse_element(spec, fields.get("z", "0")))


def _parse_node(spec: ExtensionSpec, text: str):
    fields = parse_keyed(text, ("z", "omega"))
    if "omega" not in fields:
        raise LiteralParseError(f"node literal needs omega: '{text}'")
    omega = _fractions(fields["omega"], "omega")
    if len(omega) != 1:
        raise LiteralParseError(f"node literal needs a single omega: '{text}'")
    return node_of_point(parse_element(spec, fields.get("z", "0")), omega[0])


def cmd_distance(spec: ExtensionSpec, args) -> str:
    if args.metric == "rho":
        value = format_ext(rho(parse_berk_literal(spec, args.a), parse_berk_literal(spec, args.b)))
    elif args.metric == "chordal":
        t = chordal_u_exponent(_parse_point(spec, args.a), _parse_point(spec, args.b))
        value = power_literal(spec.p, t)
    else:
        value = str(graph_distance(_parse_node(spec, args.a), _parse_node(spec, args.b)))

    if (args.format or "text") == "json":
        return _dump({"format": config.export.format_tag, "spec": spec.header(),
                      "metric": args.metric, "value": value})
    return value + "\n"


def _class_rep_dict(rep) -> dict:
    doc = {
        "omega": format_ratio(rep.omega),
        "word": [str(d) for d in rep.digit_word.digits],
        "literal": format_expansion(rep.digit_word),
        "level": rep.level,
    }
    if rep.level:
        doc["z0_word"] = [str(d) for d in rep.z0_word]
        doc["z_word"] = [str(d) for d in rep.z_word]
    return doc


def cmd_classify(spec: ExtensionSpec, args) -> str:
    doc = {"format": config.export.format_tag, "spec": spec.header(), "kind": spec.kind}
    if args.berk is not None:
        pt = parse_berk_literal(spec, args.berk)
        doc["type"] = classify(pt).value
        doc["point"] = point_to_dict(pt)
        if args.map == "phi":
            doc["phi_image"] = wpoint_to_dict(phi(pt, canonical=args.canonical))
    elif args.w is not None:
        w = parse_w_literal(spec, args.w)
        pt = phi_inv(w)
        doc["type"] = classify(pt).value
        doc["w"] = wpoint_to_dict(w)
        if args.map == "phi-inv":
            doc["phi_preimage"] = point_to_dict(pt)
    else:
        zp = _parse_point(spec, args.point)
        doc["class_rep"] = _class_rep_dict(canonical_class(zp, args.level))
    return _dump(doc)


def _write_csv(df: pd.DataFrame, path: Optional[str]) -> None:
    if path:
        folder = os.path.dirname(path)
        if folder:
            os.makedirs(folder, exist_ok=True)
        else:
            path = os.path.join(config.ensure_output_dir(), path)
        df.to_csv(path, index=False)
        _status(f"  ✓ table written to {path}")


def cmd_audit(spec: ExtensionSpec, args) -> str:
    head = {"spec": spec.header(), "kind": spec.kind, "audit": args.kind}
    fmt = args.format or "json"

    auditor = CoarseGrainAuditor(spec, args.seed)
    if args.kind == "partition":
        _status(f"[audit] sampling {args.n} points over {spec} (seed {args.seed})")
        levels = [int(x) for x in _fractions(args.levels, "--levels")]
        result = auditor.run("partition", n=args.n, levels=levels)
        for r in result.reports:
            for i, j in r.mismatches:
                _status(f"  ✗ level {r.level}: points {i} and {j} disagree "
                        f"(pairwise relation vs canonical class)")
            for i, j, k in r.transitivity_violations:
                _status(f"  ✗ level {r.level}: transitivity fails on ({i}, {j}, {k})")
    elif args.kind == "nesting":
        result = auditor.run("nesting", z=parse_element(spec, args.z),
                             omegas=_fractions(args.omegas, "--omegas"))
    else:
        result = auditor.run(args.kind, m=args.m)

    _write_csv(result.table, args.csv)
    if fmt == "text":
        text = result.table.to_string(index=False) + "\n"
    else:
        text = report_to_json({**head, **result.payload, "passed": result.passed})
    if not result.passed:
        raise AuditFailure(text)
    return text


_COMMANDS = {
    "tree": cmd_tree,
    "distance": cmd_distance,
    "classify": cmd_classify,
    "audit": cmd_audit,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_signed(argv))
    if args.command == "classify":
        _check_classify(parser, args)

    try:
        spec = _spec_from_args(parser, args)
        text = _COMMANDS[args.command](spec, args)
    except AuditFailure as exc:
        _emit(str(exc), args.out)
        _status(f"  ✗ audit '{args.kind}' failed")
        return EXIT_AUDIT
    except LiteralParseError as exc:
        _status(f"  ✗ {exc}")
        return EXIT_USAGE
    except DeskBoundError as exc:
        _status(f"  ✗ size bound: {exc}")
        return EXIT_BOUNDS
    except (DomainError, PrecisionError, SpecMismatchError) as exc:
        _status(f"  ✗ {exc}")
        return EXIT_DOMAIN

    _emit(text, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
