"""
Tree slice export: Graphviz DOT and versioned JSON (``ultratree/1``).

Nodes are written in slice order, which build_tree fixes to
(ω, word length, lexicographic word); refined nodes follow the base
nodes.  slice_from_json reads the JSON form back into a TreeSlice.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Sequence

from config import config
from padic.element import DigitExpansion
from padic.errors import LiteralParseError
from padic.exponent import format_ratio, parse_exponent
from padic.extension import ExtensionSpec, make_extension
from padic.residue_field import ResidueElement
from tree.bt_tree import RefinedNode, TreeNode, TreeSlice


def _digit_json(spec: ExtensionSpec, d: ResidueElement):
    return d.coeffs[0] if spec.f == 1 else list(d.coeffs)


def _digit_from_json(spec: ExtensionSpec, raw) -> ResidueElement:
    row = [raw] if spec.f == 1 else raw
    return spec.residue_field.element(row)


def _word_json(spec: ExtensionSpec, digits: Sequence[ResidueElement]) -> list:
    return [_digit_json(spec, d) for d in digits]


def to_dot(ts: TreeSlice) -> str:
    spec = ts.spec
    lines = [
        f'graph "ultratree_p{spec.p}_e{spec.e}_f{spec.f}" {{',
        "  node [shape=point];",
    ]
    for i in range(len(ts)):
        lines.append(f'  n{i} [label="{ts.node(i).label()}"];')
    for a, b in ts.edges:
        lines.append(f"  n{a} -- n{b};")
    for a, b in ts.refinement_edges:
        lines.append(f"  n{a} -- n{b} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def slice_to_dict(ts: TreeSlice) -> dict:
    spec = ts.spec
    doc = {
        "format": config.export.format_tag,
        "spec": spec.header(),
        "precision": spec.precision,
        "kind": spec.kind,
        "omega_min": format_ratio(ts.omega_min),
        "omega_max": format_ratio(ts.omega_max),
        "digit_depth": ts.digit_depth,
        "nodes": [
            {"id": i, "omega": format_ratio(n.omega), "word": _word_json(spec, n.word.digits)}
            for i, n in enumerate(ts.nodes)
        ],
        "edges": [list(e) for e in ts.edges],
    }
    if ts.m_max:
        index = {n: i for i, n in enumerate(ts.nodes)}
        offset = len(ts.nodes)
        doc["refinement"] = {
            "m_max": ts.m_max,
            "nodes": [
                {
                    "id": offset + j,
                    "base": index[r.base],
                    "m": r.m,
                    "z0_word": _word_json(spec, r.z0_word),
                    "z_word": _word_json(spec, r.z_word),
                }
                for j, r in enumerate(ts.refined)
            ],
            "edges": [list(e) for e in ts.refinement_edges],
        }
    return doc


def to_json(ts: TreeSlice) -> str:
    return json.dumps(slice_to_dict(ts), indent=2) + "\n"


def slice_from_json(text: str) -> TreeSlice:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LiteralParseError(f"Tree JSON is not valid JSON: {exc}") from exc
    if doc.get("format") != config.export.format_tag:
        raise LiteralParseError(
            f"Unsupported tree format tag: {doc.get('format')!r} "
            f"(expected {config.export.format_tag!r})"
        )
    try:
        head = doc["spec"]
        spec = make_extension(head["p"], head["e"], head["f"], doc["precision"])
        nodes: List[TreeNode] = []
        for raw in doc["nodes"]:
            omega = Fraction(parse_exponent(raw["omega"]))
            word = tuple(_digit_from_json(spec, d) for d in raw["word"])
            hi = int(omega * spec.e)
            nodes.append(TreeNode(omega, DigitExpansion(spec, hi - len(word), word)))

        refined: List[RefinedNode] = []
        refinement = doc.get("refinement")
        m_max = 0
        if refinement:
            m_max = refinement["m_max"]
            for raw in refinement["nodes"]:
                refined.append(RefinedNode(
                    base=nodes[raw["base"]],
                    m=raw["m"],
                    z0_word=tuple(_digit_from_json(spec, d) for d in raw["z0_word"]),
                    z_word=tuple(_digit_from_json(spec, d) for d in raw["z_word"]),
                ))
        return TreeSlice(
            spec=spec,
            omega_min=Fraction(parse_exponent(doc["omega_min"])),
            omega_max=Fraction(parse_exponent(doc["omega_max"])),
            digit_depth=doc["digit_depth"],
            nodes=tuple(nodes),
            edges=tuple(tuple(e) for e in doc["edges"]),
            m_max=m_max,
            refined=tuple(refined),
            refinement_edges=tuple(tuple(e) for e in refinement["edges"]) if refinement else (),
        )
    except (KeyError, IndexError, TypeError) as exc:
        raise LiteralParseError(f"Tree JSON is missing or mangles a field: {exc}") from exc
