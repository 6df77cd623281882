"""Command line entry point: ``wardwick <subcommand> ...``.

Exit codes: 0 success (``ward-check``: Verified), 1 ``ward-check`` found an
anomaly candidate, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .anomaly import anomaly_scan, case1_reduce, table1
from .coeff import GaussQ
from .diagrams import diagrams_to_dot, diagrams_to_json
from .expr import Expr, format_expr, format_term
from .fields import mass_dimension
from .parser import ParseError, parse_expr
from .ward import (
    NON_COINCIDENCE, charge_conservation_check, charge_cross_check, check_mwi, furry_check,
    furry_cross_check,
)
from .wick import enumerate_full_contractions, star_commutator, star_product, unrenormalized_tproduct, vev

EXPR_SCHEMA = "wardwick.expr-report/1"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    spacetime_dimension: int = 4
    eta_c: GaussQ = GaussQ(1)
    output_format: str = "text"
    trace: bool = False

    def __post_init__(self):
        if self.spacetime_dimension < 3:
            raise UsageError("--dim must be at least 3")
        if self.output_format not in ("text", "json", "dot"):
            raise UsageError(f"unknown format {self.output_format!r}")
        if GaussQ.coerce(self.eta_c).norm() != 1:
            raise UsageError("eta must have unit modulus")


def _parse(text, cfg):
    try:
        return parse_expr(text, cfg.eta_c)
    except ParseError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from exc


def _expr_report(command, inputs, result: Expr, cfg):
    if cfg.output_format == "json":
        terms = [{"coeff": str(c.number), "hbar_power": c.hbar_power, "mass2_power": c.mass2_power,
                  "term": format_term(c, ks, fs, ms)} for c, ks, fs, ms in result.items()]
        return json.dumps({"schema": EXPR_SCHEMA, "assumption": NON_COINCIDENCE, "command": command,
                           "inputs": list(inputs), "result": format_expr(result), "terms": terms},
                          indent=2, sort_keys=True)
    return _with_header(format_expr(result), cfg)


def _with_header(text, cfg):
    if cfg.output_format == "text":
        return f"# {NON_COINCIDENCE}\n{text}"
    return text


# subcommands ---------------------------------------------------------------


def cmd_expand(ns, cfg):
    e = _parse(ns.expr, cfg)
    return 0, _expr_report("expand", [ns.expr], e, cfg)


def cmd_star(ns, cfg):
    a, b = _parse(ns.left, cfg), _parse(ns.right, cfg)
    out = star_product(a, b, "DF" if ns.feynman else "DP")
    return 0, _expr_report("star", [ns.left, ns.right], out, cfg)


def cmd_commutator(ns, cfg):
    a, b = _parse(ns.left, cfg), _parse(ns.right, cfg)
    return 0, _expr_report("commutator", [ns.left, ns.right], star_commutator(a, b, rewrite=not ns.raw), cfg)


def _tproduct(args, cfg):
    try:
        return unrenormalized_tproduct([_parse(a, cfg) for a in args])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_tproduct(ns, cfg):
    return 0, _expr_report("tproduct", ns.args, _tproduct(ns.args, cfg), cfg)


def cmd_vev(ns, cfg):
    return 0, _expr_report("vev", [ns.expr], vev(_parse(ns.expr, cfg)), cfg)


def cmd_ward_check(ns, cfg):
    args = [_parse(a, cfg) for a in ns.args]
    try:
        rep = check_mwi(args, y=ns.y, index=ns.index, with_trace=cfg.trace)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if cfg.trace:
        for step, rnd, e in rep.trace:
            print(f"[trace] {step} round {rnd}: {format_expr(e)}", file=sys.stderr)
    text = rep.to_json() if cfg.output_format == "json" else rep.to_text()
    return (0 if rep.verified else 1), text


def _exclusion(ns, cfg, check, cross, name):
    args = [_parse(a, cfg) for a in ns.args]
    try:
        verdict = check(args)
        agrees = cross(args) if verdict.value == "ForcedZero" else None
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if cfg.output_format == "json":
        return 0, json.dumps({"schema": "wardwick.exclusion-report/1", "assumption": NON_COINCIDENCE,
                              "command": name, "args": list(ns.args), "verdict": verdict.value,
                              "cross_check": agrees}, indent=2, sort_keys=True)
    extra = "" if agrees is None else f" (contraction enumeration agrees: {agrees})"
    return 0, _with_header(f"{verdict.value}{extra}", cfg)


def cmd_furry(ns, cfg):
    return _exclusion(ns, cfg, lambda a: furry_check(a, cfg.eta_c), furry_cross_check, "furry-check")


def cmd_charge(ns, cfg):
    return _exclusion(ns, cfg, charge_conservation_check, charge_cross_check, "charge-check")


def _rows_report(command, n, rows, cfg):
    if cfg.output_format == "json":
        return json.dumps({"schema": "wardwick.anomaly-report/1", "assumption": NON_COINCIDENCE,
                           "command": command, "n": n, "rows": rows}, indent=2, sort_keys=True)
    lines = [f"# {NON_COINCIDENCE}"]
    for r in rows:
        prefix = f"{r['row']:>2}  " if "row" in r else ""
        lines.append(f"{prefix}{', '.join(r['args']):<48} omega={r['omega']:>2}  {r['classification']}")
    return "\n".join(lines)


def cmd_table1(ns, cfg):
    try:
        rows = table1(ns.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return 0, _rows_report("table1", ns.n, rows, cfg)


def cmd_scan(ns, cfg):
    if ns.n < 1:
        raise UsageError("--n must be positive")
    rows = [v.to_dict() for v in anomaly_scan(ns.n, ns.min_omega)]
    return 0, _rows_report("anomaly-scan", ns.n, rows, cfg)


def cmd_case1(ns, cfg):
    if ns.m < 2:
        raise UsageError("--m must be at least 2")
    rep = case1_reduce(ns.m)
    d = rep.to_dict()
    if cfg.output_format == "json":
        d.update({"schema": "wardwick.case1-report/1", "assumption": NON_COINCIDENCE})
        return 0, json.dumps(d, indent=2, sort_keys=True)
    lines = [f"# {NON_COINCIDENCE}", f"symmetrized interaction points m = {rep.m}",
             f"rank(basis 1) = {rep.basis1_rank}, rank(basis 2) = {rep.basis2_rank}, joint rank = {rep.joint_rank}",
             f"dimension of the symmetric structure space = {rep.symmetric_space_dim}",
             f"basis change round trip exact: {rep.roundtrip_zero}"]
    for k, v in rep.swap_invariant.items():
        lines.append(f"  swap-invariant {k:<22} {v}")
    lines += [f"constraint: {rep.constraint}",
              f"d^y_mu annihilates the symmetrization partner: {rep.annihilated}",
              f"no one-derivative rank-2 structure: {rep.no_one_derivative_structure}",
              f"certified: {rep.certified}"]
    return 0, "\n".join(lines)


def cmd_dims(ns, cfg):
    items = []
    for a in ns.args:
        e = _parse(a, cfg)
        try:
            items.append({"expr": a, "dimension": str(mass_dimension(e, cfg.spacetime_dimension))})
        except ValueError as exc:
            raise UsageError(f"{a}: {exc}") from exc
    if cfg.output_format == "json":
        return 0, json.dumps({"schema": "wardwick.dims-report/1", "assumption": NON_COINCIDENCE,
                              "dim": cfg.spacetime_dimension, "items": items}, indent=2, sort_keys=True)
    return 0, _with_header("\n".join(f"{i['expr']}: {i['dimension']}" for i in items), cfg)


def cmd_export(ns, cfg):
    try:
        diagrams = enumerate_full_contractions([_parse(a, cfg) for a in ns.args])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if cfg.output_format == "json":
        return 0, diagrams_to_json(diagrams)
    if cfg.output_format == "dot":
        return 0, diagrams_to_dot(diagrams)
    lines = [f"# {NON_COINCIDENCE}"]
    for d in diagrams:
        lines.append(f"multiplicity {d.scheme.multiplicity}: {format_expr(d.term)}")
    return 0, "\n".join(lines)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=None, help="spacetime dimension (default 4)")
    common.add_argument("--format", choices=["text", "json", "dot"], default=None)
    common.add_argument("--trace", action="store_true", default=None, help="print rewrite steps to stderr")
    common.add_argument("--out", default=None, help="write the report to this file")
    common.add_argument("--eta", default=None, help="charge conjugation phase (expression, default 1)")
    common.add_argument("--config", default=None, help="JSON file with the same keys as the flags")

    p = argparse.ArgumentParser(prog="wardwick", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    add("expand", cmd_expand, "canonicalize an expression").add_argument("expr")
    sp = add("star", cmd_star, "star product of two expressions")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--feynman", action="store_true", help="use the Feynman propagator")
    sp = add("commutator", cmd_commutator, "star commutator")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--raw", action="store_true", help="keep DP differences unrewritten")
    add("tproduct", cmd_tproduct, "unrenormalized T-product").add_argument("args", nargs="+")
    add("vev", cmd_vev, "vacuum expectation value").add_argument("expr")
    sp = add("ward-check", cmd_ward_check, "check the current Ward identity at VEV level")
    sp.add_argument("args", nargs="+")
    sp.add_argument("--y", default="y", help="point of the current")
    sp.add_argument("--index", default=None, help="Lorentz index of the current")
    add("furry-check", cmd_furry, "charge-conjugation exclusion").add_argument("args", nargs="+")
    add("charge-check", cmd_charge, "charge-number exclusion").add_argument("args", nargs="+")
    sp = add("anomaly-scan", cmd_scan, "classify argument tuples of basis elements")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--min-omega", type=int, default=1)
    add("case1-report", cmd_case1, "Case I tensor linear algebra").add_argument("--m", type=int, default=2)
    add("table1", cmd_table1, "reproduce the case table").add_argument("--n", type=int, default=6)
    add("dims", cmd_dims, "mass dimensions").add_argument("args", nargs="+")
    add("export-diagrams", cmd_export, "full contraction diagrams").add_argument("args", nargs="+")
    return p


def _config(ns) -> RunConfig:
    data = {}
    if ns.config:
        try:
            with open(ns.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        unknown = set(data) - {"dim", "format", "trace", "out", "eta"}
        if unknown:
            raise UsageError(f"unknown config keys {sorted(unknown)}")
    for key in ("dim", "format", "trace", "out", "eta"):
        val = getattr(ns, key)
        if val is not None:
            data[key] = val
    eta = GaussQ(1)
    if data.get("eta") is not None:
        try:
            e = parse_expr(str(data["eta"]))
        except ParseError as exc:
            raise UsageError(f"bad eta: {exc}") from exc
        if len(e.terms) != 1 or next(iter(e.terms))[0:2] != (0, 0) or next(iter(e.terms))[2:] != ((), (), ()):
            raise UsageError("eta must be a number")
        eta = next(iter(e.terms.values()))
    ns.out = data.get("out")
    return RunConfig(int(data.get("dim", 4)), eta, data.get("format", "text"), bool(data.get("trace", False)))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(ns)
        status, text = ns.func(ns, cfg)
    except UsageError as exc:
        print(f"wardwick: error: {exc}", file=sys.stderr)
        return 2
    if not text.endswith("\n"):
        text += "\n"
    if ns.out:
        with open(ns.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
