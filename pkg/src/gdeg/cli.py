"""Command-line entry point: ``gdeg analyze | ccs | marks | basic-degrees | version``."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .burnside import table_of_marks
from .ccs import load_or_build
from .degree import basic_degree
from .errors import DegenerateLinearization, GdegError
from .pipeline import AnalysisConfig, analyze, full_group, parse_group_spec
from .reps import RealIrrep, custom_gamma, irreps_of, isotypic_decomposition, signed_irreps
from .cyclo import Cyclo

EXIT_OK = 0
EXIT_DEGENERATE = 2
EXIT_CONFIG = 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gdeg", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the existence analysis for a config file")
    a.add_argument("--config", required=True)
    a.add_argument("--format", choices=["text", "json", "machine"], default=None)
    a.add_argument("--audit", action="store_true", default=None,
                   help="compare against the config's expected block; report even if degenerate")
    a.add_argument("--gap-compat", action="store_true", default=None,
                   help="use GAP EquiDeg style class names")
    a.add_argument("--cache-dir", default=None)
    a.add_argument("--jobs", type=int, default=1)

    for name, hlp in (("ccs", "list conjugacy classes of subgroups"),
                      ("marks", "print the table of marks")):
        c = sub.add_parser(name, help=hlp)
        c.add_argument("--group", required=True, help="e.g. dihedral:3, D3, product(D1,Z2,D3)")
        c.add_argument("--format", choices=["text", "json"], default="text")
        c.add_argument("--gap-compat", action="store_true")
        c.add_argument("--cache-dir", default=None)

    b = sub.add_parser("basic-degrees", help="basic degrees of U_l+ and U_l- over (D1 x Z2) x Gamma")
    b.add_argument("--group", required=True, help="Gamma: dihedral:N or trivial")
    b.add_argument("--gamma-points", type=int, required=True, help="number of points Gamma permutes")
    b.add_argument("--format", choices=["text", "json"], default="text")
    b.add_argument("--gap-compat", action="store_true")
    b.add_argument("--cache-dir", default=None)

    sub.add_parser("version", help="print the version")
    return p


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _cmd_analyze(args) -> int:
    cfg = AnalysisConfig.load(args.config)
    fmt = args.format or str(cfg.output.get("format", "text"))
    if fmt not in ("text", "json", "machine"):
        raise GdegError(f"unknown output format {fmt!r}")
    report = analyze(cfg, audit=args.audit, gap=args.gap_compat, cache_dir=args.cache_dir,
                     jobs=max(1, args.jobs))
    render = {"text": report.to_text, "json": report.to_json, "machine": report.to_machine}[fmt]
    _emit(render())
    return EXIT_DEGENERATE if report.status == "degenerate" else EXIT_OK


def _cmd_ccs(args) -> int:
    G = parse_group_spec(args.group)
    table = load_or_build(G, args.cache_dir, __version__)
    if args.format == "json":
        _emit(json.dumps(table.to_document(), sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    lines = [f"{G.descriptor}: order {G.order}, {len(table)} classes, {table.subgroup_count} subgroups"]
    for c in table:
        lines.append(f"{c.index:4d}  ({c.display(args.gap_compat)})  |H| = {c.order}  "
                     f"|W(H)| = {c.weyl_order}  conjugates = {len(c.members)}")
    _emit("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_marks(args) -> int:
    G = parse_group_spec(args.group)
    table = load_or_build(G, args.cache_dir, __version__)
    tom = table_of_marks(table)
    names = [c.display(args.gap_compat) for c in table]
    if args.format == "json":
        _emit(json.dumps({"group": G.descriptor, "classes": names,
                          "marks": [list(r) for r in tom.marks]}, sort_keys=True) + "\n")
        return EXIT_OK
    lines = [f"table of marks of {G.descriptor} (row K, column H: |(G/H)^K|)"]
    for i, row in enumerate(tom.marks):
        lines.append(f"{i:4d} " + " ".join(f"{v:3d}" for v in row) + f"   ({names[i]})")
    _emit("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_basic(args) -> int:
    spec = args.group.replace(" ", "").lower()
    n = args.gamma_points
    if spec == "trivial":
        gamma = custom_gamma(n, [list(range(1, n + 1))], name="Z1")
        irreps = [RealIrrep(gamma, 1, (Cyclo.rational(1),), "U0", gamma_index=0)]
    else:
        gamma = parse_group_spec(args.group)
        if gamma.degree != n:
            raise GdegError(f"{gamma.descriptor} acts on {gamma.degree} points, not {n}")
        irreps = irreps_of(gamma)
    decomp = isotypic_decomposition(gamma, irreps)
    G = full_group(gamma)
    table = load_or_build(G, args.cache_dir, __version__)
    out = []
    for comp, (plus, minus) in zip(decomp.components, signed_irreps(decomp, G)):
        for r in (plus, minus):
            out.append((r.name, comp.multiplicity, basic_degree(r, table).value))
    if args.format == "json":
        doc = {"group": G.descriptor,
               "degrees": [{"irrep": nm, "multiplicity": m, "pairs": [list(p) for p in v.pairs(args.gap_compat)]}
                           for nm, m, v in out]}
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        _emit("".join(f"deg[{nm}] = {v.render(args.gap_compat)}\n" for nm, _, v in out))
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "version":
            _emit(f"gdeg {__version__}\n")
            return EXIT_OK
        handler = {"analyze": _cmd_analyze, "ccs": _cmd_ccs, "marks": _cmd_marks,
                   "basic-degrees": _cmd_basic}[args.command]
        return handler(args)
    except DegenerateLinearization as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except GdegError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
