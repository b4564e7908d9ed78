"""Command-line interface: ``metacog-tax <command> [options]``.

Every command is non-interactive, writes to stdout (or ``--out``) and exits
0 on success, 1 on an input or analysis error, 2 on a usage error and 3 when
``--strict`` finds a mismatch against the published targets.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .enumeration import (
    Catalog,
    appendix2_catalog,
    catalog_to_json,
    enumerate_space,
    find_duplicates,
    get_catalog,
    scenario_to_dict,
)
from .fca import (
    Implication,
    all_concepts,
    build_context,
    build_lattice,
    context_to_json,
    implication_basis,
    lattice_to_dot,
    lattice_to_json,
    to_csv,
    to_cxt,
    verify_implication,
)
from .filters import ConfigError, load_config, reports_table, reports_to_json, run_pipeline, shipped_config
from .findings import check_findings, findings_table
from .model import Arrangement, Scenario
from .notation import NotationError, NotationStyle, format_scenario, parse, parse_scenario, topology_id
from .trajectory import (
    DEFAULT_MAX_HOP,
    NAMED_PATHWAYS,
    NoPath,
    classify_tier,
    make_trajectory,
    named_trajectory,
    shortest_paths,
    trajectories_to_json,
    trajectory_table,
)

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3

_ARRANGEMENT_ALIASES = {
    "bu": Arrangement.BOTTOM_UP, "bottom-up": Arrangement.BOTTOM_UP,
    "td": Arrangement.TOP_DOWN, "top-down": Arrangement.TOP_DOWN,
    "bi": Arrangement.BIDIRECTIONAL, "bidirectional": Arrangement.BIDIRECTIONAL,
}


class CommandError(Exception):
    def __init__(self, message: str, code: int = EXIT_ERROR):
        super().__init__(message)
        self.code = code


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _arrangement(text: str) -> Arrangement:
    try:
        return _ARRANGEMENT_ALIASES[text.lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"unknown arrangement {text!r}; use bottom-up, top-down or bidirectional") from None


def _parse_or_fail(text: str, label: Optional[str] = None) -> Scenario:
    try:
        return parse(text, label)
    except NotationError as exc:
        raise CommandError(f"cannot parse {text!r}: {exc}") from None


def _scenario_arg(text: str, catalog: Catalog) -> Scenario:
    """A catalog label (S7) or a notation string."""
    if text in catalog.labels:
        return catalog[text].scenario.with_label(text)
    return _parse_or_fail(text)


# ----------------------------------------------------------------- commands

def cmd_enumerate(args) -> str:
    space = enumerate_space()
    selected = [s for s in space
                if (args.topology is None or topology_id(s.shortcuts) == args.topology)
                and (args.internal is None or s.internal is args.internal)]
    filtered = args.topology is not None or args.internal is not None
    if args.count:
        return f"{len(selected)}\n"
    if args.format == "json":
        return _json({"count": len(selected),
                      "scenarios": [scenario_to_dict(s, args.unicode) for s in selected] if args.full else None})
    times = "×" if args.unicode else "x"
    if filtered:
        head = f"{len(selected)} scenarios"
    else:
        head = f"{len(selected)} scenarios (3 internal {times} 9 cross-cluster {times} 8 topologies)"
    lines = [head]
    if args.full:
        lines += [format_scenario(s, args.style, unicode=args.unicode) for s in selected]
    return "\n".join(lines) + "\n"


def cmd_filter(args) -> tuple:
    cfg = load_config(args.config) if args.config else shipped_config()
    if args.only_rule:
        known = {r.name for r in cfg.rules}
        missing = [n for n in args.only_rule if n not in known]
        if missing:
            raise CommandError(f"unknown rule(s): {', '.join(missing)}; known: {', '.join(sorted(known))}")
        cfg = cfg.only(*args.only_rule)
    if args.rule_b:
        cfg = cfg.with_params("process-on-io-path", strictness=args.rule_b)
    if args.no_exemptions:
        cfg = cfg.without_exemptions()
    result = run_pipeline(cfg, enumerate_space())
    text = reports_to_json(result) if args.format == "json" else reports_table(result, unicode=args.unicode)
    code = EXIT_OK
    if args.strict:
        if {s.key for s in result.final} != appendix2_catalog().keys():
            code = EXIT_MISMATCH
            sys.stderr.write("strict: final set differs from the priority catalog keys\n")
    return text, code


def _context(args):
    return build_context(get_catalog(args.catalog), derived=not args.no_derived)


def cmd_lattice(args) -> str:
    ctx = _context(args)
    if args.clarify:
        ctx = ctx.clarify()
    lattice = build_lattice(all_concepts(ctx))
    if args.format == "json":
        return lattice_to_json(lattice, ctx)
    if args.format == "summary":
        return (f"context: {ctx.shape[0]} objects x {ctx.shape[1]} attributes\n"
                f"concepts: {len(lattice.concepts)}\ncover edges: {len(lattice.covers)}\n")
    return lattice_to_dot(lattice, ctx, name=f"{args.catalog}-lattice")


def _implication_arg(text: str) -> Implication:
    if "=>" not in text:
        raise CommandError(f"implication must look like 'a,b=>c', got {text!r}")
    lhs, rhs = text.split("=>", 1)
    split = lambda side: [a.strip() for a in side.split(",") if a.strip()]
    return Implication(split(lhs), split(rhs))


def cmd_implications(args) -> tuple:
    ctx = _context(args)
    code = EXIT_OK
    if args.verify:
        rows = []
        for text in args.verify:
            imp = _implication_arg(text)
            try:
                holds, bad = verify_implication(ctx, imp)
            except KeyError as exc:
                raise CommandError(f"unknown attribute {exc}") from None
            rows.append({"implication": str(imp), "holds": holds, "counterexamples": list(bad)})
            if not holds:
                code = EXIT_MISMATCH if args.strict else EXIT_OK
        if args.format == "json":
            return _json(rows), code
        return "".join(f"{r['implication']}: {'holds' if r['holds'] else 'fails'}"
                       + (f" (counterexamples: {', '.join(r['counterexamples'])})" if r["counterexamples"] else "")
                       + "\n" for r in rows), code
    basis = implication_basis(ctx)
    checks = check_findings() if args.catalog == "appendix2" and not args.no_findings else []
    if args.format == "json":
        return _json({"basis": [i.to_dict() for i in basis],
                      "findings": [c.to_dict() for c in checks]}), code
    lines = [f"Duquenne-Guigues basis: {len(basis)} implications"]
    lines += [f"  {imp}" for imp in basis]
    text = "\n".join(lines) + "\n"
    if checks:
        text += "\nfindings:\n" + findings_table(checks)
    return text, code


def cmd_trajectory(args) -> str:
    catalog = appendix2_catalog()
    trajectories = []
    if args.shortest:
        within = enumerate_space() if args.within == "space" else [
            e.scenario.with_label(e.label) for e in catalog]
        start, goal = (_scenario_arg(t, catalog) for t in args.shortest)
        try:
            trajectories = shortest_paths(start, goal, within, k=args.k)
        except NoPath as exc:
            raise CommandError(str(exc)) from None
        except ValueError as exc:
            raise CommandError(str(exc)) from None
    elif args.steps:
        trajectories = [make_trajectory("custom", [_scenario_arg(t, catalog) for t in args.steps])]
    else:
        names = args.names or list(NAMED_PATHWAYS)
        for name in names:
            try:
                trajectories.append(named_trajectory(name))
            except KeyError as exc:
                raise CommandError(exc.args[0]) from None
    if args.format == "json":
        return trajectories_to_json(trajectories)
    return "\n".join(trajectory_table(t, unicode=args.unicode) for t in trajectories)


def cmd_classify(args) -> str:
    rows = []
    for text in args.notation:
        s = _parse_or_fail(text)
        d = classify_tier(s)
        rows.append({"input": text, "scenario": scenario_to_dict(s), "tier": d.tier.title,
                     "nearest": list(d.nearest), "distance": d.distance,
                     "conflict": [[label, tier.title] for label, tier in d.conflict],
                     "rationale": d.rationale})
    if args.format == "json":
        return _json(rows)
    return "".join(f"{r['tier']} ({r['rationale']})\n" for r in rows)


def cmd_parse(args) -> tuple:
    out, code = [], EXIT_OK
    for text in args.notation:
        result = parse_scenario(text)
        if not result.ok:
            code = EXIT_ERROR
        out.append({
            "input": text,
            "ok": result.ok,
            "scenario": scenario_to_dict(result.scenario, args.unicode) if result.ok else None,
            "canonical": result.canonical,
            "diagnostics": [{"severity": d.severity.value, "code": d.code, "span": list(d.span),
                             "message": d.message} for d in result.diagnostics],
        })
    if args.format == "json":
        return _json(out), code
    lines = []
    for row in out:
        s = row["scenario"]
        lines.append(s["notation"] if s else f"error: {row['input']}")
        lines += [f"  {d['severity']}[{d['code']}] at {d['span'][0]}..{d['span'][1]}: {d['message']}"
                  for d in row["diagnostics"]]
    return "\n".join(lines) + "\n", code


def cmd_fmt(args) -> str:
    return "".join(format_scenario(_parse_or_fail(t), args.style, unicode=args.unicode) + "\n"
                   for t in args.notation)


def _filter_status(catalog: Catalog) -> dict:
    result = run_pipeline(shipped_config(), enumerate_space())
    fate = {}
    for report in result.reports:
        for s, rule in report.eliminations:
            fate[s.key] = f"eliminated-by-pipeline (stage {report.stage}: {rule})"
    return {e.label: fate.get(e.scenario.key, "survives") for e in catalog}


def cmd_catalog(args) -> str:
    catalog = get_catalog("table1" if args.table1 else "appendix2")
    status = _filter_status(catalog) if args.filter_status else {}
    if args.format == "json":
        rows = json.loads(catalog_to_json(catalog))
        for row in rows:
            if status:
                row["filter_status"] = status[row["label"]]
        return _json({"catalog": catalog.name, "entries": rows,
                      "duplicates": [list(d) for d in find_duplicates(catalog)]})
    lines = []
    for e in catalog:
        tier = e.tier.title if e.tier else "-"
        line = f"{e.label:<4} {tier:<15} {format_scenario(e.scenario, args.style, unicode=args.unicode)}"
        if status:
            line += f"  [{status[e.label]}]"
        lines.append(line)
    dups = find_duplicates(catalog)
    if dups:
        lines.append("duplicate configurations: " + "; ".join(" = ".join(d) for d in dups))
    if status:
        n = sum(v != "survives" for v in status.values())
        lines.append(f"{n} of {len(catalog.entries)} eliminated by the pipeline")
    return "\n".join(lines) + "\n"


def cmd_export(args) -> str:
    ctx = _context(args)
    if args.format == "cxt":
        return to_cxt(ctx)
    if args.format == "csv":
        return to_csv(ctx)
    if args.format == "json":
        return context_to_json(ctx)
    return lattice_to_dot(build_lattice(all_concepts(ctx)), ctx, name=f"{args.catalog}-lattice")


# ------------------------------------------------------------------- parser

def _style(text: str) -> NotationStyle:
    try:
        return NotationStyle(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"style must be one of {', '.join(s.value for s in NotationStyle)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metacog-tax",
                                     description="Scenario taxonomy tooling: notation, enumeration, "
                                                 "filters, concept lattices and trajectories.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="write output to this file instead of stdout")
    common.add_argument("--unicode", action="store_true", help="emit Unicode arrows and symbols")

    def add(name, help_text, fn):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("enumerate", "count or list the full scenario space", cmd_enumerate)
    p.add_argument("--full", action="store_true", help="list every scenario")
    p.add_argument("--style", type=_style, default=NotationStyle.BRACKETED)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--topology", type=int, choices=range(1, 9), metavar="1-8")
    p.add_argument("--internal", type=_arrangement)
    p.add_argument("--count", action="store_true", help="print only the number of matching scenarios")

    p = add("filter", "run the filter pipeline and print stage reports", cmd_filter)
    p.add_argument("--config", type=Path, help="pipeline YAML (default: the shipped configuration)")
    p.add_argument("--only-rule", action="append", metavar="NAME", help="run only this rule (repeatable)")
    p.add_argument("--rule-b", choices=("strict", "named-only"), help="reading of the process-involvement rule")
    p.add_argument("--no-exemptions", action="store_true", help="ignore 'unless' clauses")
    p.add_argument("--strict", action="store_true", help="exit 3 unless the final set equals the catalog keys")
    p.add_argument("--format", choices=("table", "json"), default="table")

    for name, help_text, fn in (("lattice", "build the concept lattice of a catalog", cmd_lattice),
                                ("export", "export a catalog context or its lattice", cmd_export),
                                ("implications", "implication basis and finding checks", cmd_implications)):
        p = add(name, help_text, fn)
        p.add_argument("--catalog", choices=("appendix2", "table1"), default="appendix2")
        p.add_argument("--no-derived", action="store_true", help="omit derived attributes")
        if name == "lattice":
            p.add_argument("--format", choices=("dot", "json", "summary"), default="dot")
            p.add_argument("--clarify", action="store_true", help="merge identical rows first")
        elif name == "export":
            p.add_argument("--format", choices=("cxt", "csv", "json", "dot"), default="cxt")
        else:
            p.add_argument("--format", choices=("text", "json"), default="text")
            p.add_argument("--verify", action="append", metavar="A,B=>C", help="check one implication")
            p.add_argument("--no-findings", action="store_true")
            p.add_argument("--strict", action="store_true", help="exit 3 if a --verify implication fails")

    p = add("trajectory", "analyse developmental pathways", cmd_trajectory)
    p.add_argument("names", nargs="*", help=f"named pathways ({', '.join(NAMED_PATHWAYS)}); default all")
    p.add_argument("--steps", nargs="+", metavar="STEP", help="catalog labels or notation strings")
    p.add_argument("--shortest", nargs=2, metavar=("FROM", "TO"))
    p.add_argument("--within", choices=("appendix2", "space"), default="appendix2")
    p.add_argument("--k", type=int, default=DEFAULT_MAX_HOP, help="max attribute changes per hop")
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = add("classify", "assign a tier to scenario notation", cmd_classify)
    p.add_argument("notation", nargs="+")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("parse", "parse notation and show diagnostics", cmd_parse)
    p.add_argument("notation", nargs="+")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("fmt", "reprint notation in a canonical style", cmd_fmt)
    p.add_argument("notation", nargs="+")
    p.add_argument("--style", type=_style, default=NotationStyle.BRACKETED)

    p = add("catalog", "show a shipped catalog", cmd_catalog)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--appendix2", action="store_true", help="the 24 priority scenarios (default)")
    which.add_argument("--table1", action="store_true", help="the five literature scenarios")
    p.add_argument("--filter-status", action="store_true", help="show each row's fate in the pipeline")
    p.add_argument("--style", type=_style, default=NotationStyle.BRACKETED)
    p.add_argument("--format", choices=("table", "json"), default="table")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        result = args.fn(args)
    except CommandError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_ERROR
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if args.out:
        try:
            args.out.write_text(text, encoding="utf-8")
        except OSError as exc:
            sys.stderr.write(f"error: cannot write {args.out}: {exc.strerror}\n")
            return EXIT_ERROR
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
