"""Export full-contraction diagrams as DOT multigraphs or JSON."""

from __future__ import annotations

import json

from .expr import PHI, format_expr
from .wick import Diagram

NON_COINCIDENCE = "all distinct point labels are assumed pairwise non-coincident"


def _edge_records(d: Diagram, kind="DF"):
    out = []
    for (ai, fi), (aj, fj), n in d.scheme.edges:
        rec = {
            "source": fi.label,
            "target": fj.label,
            "kind": kind,
            "derivs": {"source": list(fi.derivs), "target": list(fj.derivs)},
            "phi_end": "source" if fi.species == PHI else "target",
        }
        out.extend([rec] * n)
    return out


def _vertices(d: Diagram):
    labs = set()
    for key in d.monomials:
        labs.update(f.label for f in key[3])
    return sorted(labs)


def diagrams_to_json(diagrams, kind="DF") -> str:
    data = {
        "schema": "wardwick.diagrams/1",
        "assumption": NON_COINCIDENCE,
        "diagrams": [
            {
                "multiplicity": d.scheme.multiplicity,
                "vertices": _vertices(d),
                "edges": _edge_records(d, kind),
                "term": format_expr(d.term),
            }
            for d in diagrams
        ],
    }
    return json.dumps(data, indent=2, sort_keys=True)


def _derivs_text(rec):
    parts = []
    if rec["derivs"]["source"]:
        parts.append(f"{rec['source']}:" + ",".join(rec["derivs"]["source"]))
    if rec["derivs"]["target"]:
        parts.append(f"{rec['target']}:" + ",".join(rec["derivs"]["target"]))
    return " ".join(parts)


def diagrams_to_dot(diagrams, kind="DF") -> str:
    lines = [f"// {NON_COINCIDENCE}"]
    for n, d in enumerate(diagrams):
        lines.append(f"graph diagram_{n} {{")
        lines.append(f'  label="{format_expr(d.term)}";')
        for v in _vertices(d):
            lines.append(f'  "{v}";')
        for rec in _edge_records(d, kind):
            lines.append(
                f'  "{rec["source"]}" -- "{rec["target"]}" '
                f'[kind="{rec["kind"]}", derivs="{_derivs_text(rec)}", '
                f'multiplicity={d.scheme.multiplicity}, phi_end="{rec["phi_end"]}"];'
            )
        lines.append("}")
    return "\n".join(lines) + "\n"
