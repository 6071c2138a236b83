"""Command-line driver: ``qdouble compute | verify | graph``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .characters import DEFAULT_SEED
from .errors import QDoubleError
from .fixtures import compare_exact_s, compare_report, load_fixtures
from .fusion import fusion_data
from .graphs import dot_export, embedding_irreps, fusion_graph, vertex_labels
from .double import DrinfeldDouble
from .groups import catalog, catalog_entry, enumerate_group, load_permutation_generators
from .report import analyze

# --- helpers -----------------------------------------------------------------


def _group_and_target(name: str, generators: str | None):
    if generators is None:
        return None, None
    gens = load_permutation_generators(generators)
    return enumerate_group(gens, name=name), "SU3"


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _report_text(bundle, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(bundle.as_dict(), indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["field", "value"])
    writer.writerows(bundle.csv_rows())
    return buf.getvalue()


# --- compute -------------------------------------------------------------------


def cmd_compute(args) -> int:
    group, target = _group_and_target(args.group, args.generators)
    result = analyze(args.group, seed=args.seed, full_tensor=not args.aggregates_only,
                     group=group, target=target)
    out = Path(args.out)
    stem = args.group
    _write(out / f"{stem}_modular.json", result.modular.to_json() + "\n")
    if result.fusion.tensor is not None:
        out.mkdir(parents=True, exist_ok=True)
        np.save(out / f"{stem}_fusion.npy", result.fusion.tensor)
    _write(out / f"{stem}_report.{args.format}", _report_text(result.report, args.format))
    rep = result.report
    row = rep.table_row
    print(f"{rep.name}: |G|={rep.order} classes={rep.class_number} rank={rep.rank} d_B={rep.d_B}")
    print(f"  quantum dimensions: {rep.quantum_dimensions}")
    print(f"  units={row.units} row-sum rule: before={row.row_rule_before} after={row.row_rule_after}")
    for kind, counts in row.types.items():
        print(f"  {kind}: {counts['count']} (vanishing {counts['vanishing']}, accidental {counts['accidental']})")
    return 0


# --- verify ----------------------------------------------------------------------


def verification_order(fixtures: dict) -> list[str]:
    """Every group named by the fixtures, SU(2) entries first, then by order."""
    names: list[str] = []
    for section in ("dossiers", "sum_rule_table_su2", "sum_rule_table_su3", "center_and_abelianization", "mckay"):
        for name in fixtures.get(section, {}):
            if name not in names:
                names.append(name)
    if "exact_s_matrix" in fixtures and fixtures["exact_s_matrix"]["group"] not in names:
        names.append(fixtures["exact_s_matrix"]["group"])

    def key(name: str):
        entry = catalog_entry(name)
        return (entry.target != "SU2", entry.order, name)

    return sorted(names, key=key)


def verify_group(name: str, fixtures: dict, seed: int, full_tensor: bool) -> tuple[str, dict[str, list[str]]]:
    """Run the pipeline on one group and compare; failures are returned, not raised."""
    try:
        result = analyze(name, seed=seed, full_tensor=full_tensor)
    except QDoubleError as exc:
        return name, {"pipeline": [f"{type(exc).__name__}: {exc}"]}
    checks = {"modular_relations": []}
    checks.update(compare_report(result.report, fixtures))
    layout = fixtures.get("exact_s_matrix")
    if layout and layout["group"] == name:
        try:
            deviation, _ = compare_exact_s(result.double, layout)
            checks["exact_s_matrix"] = [] if deviation < 1e-9 else [f"max deviation {deviation:.3g}"]
        except QDoubleError as exc:
            checks["exact_s_matrix"] = [str(exc)]
    return name, checks


def _jobs(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get("MD_JOBS", "")
    return max(1, int(env)) if env.isdigit() else 1


def cmd_verify(args) -> int:
    fixtures = load_fixtures(args.fixtures)
    if args.all:
        names = verification_order(fixtures)
    elif args.group:
        names = [args.group]
    else:
        print("verify: name a group or pass --all", file=sys.stderr)
        return 2
    jobs = _jobs(args.jobs)
    full = not args.aggregates_only
    if jobs == 1 or len(names) == 1:
        results = [verify_group(n, fixtures, args.seed, full) for n in names]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(verify_group, names, [fixtures] * len(names),
                                    [args.seed] * len(names), [full] * len(names)))
    failed = 0
    for name, checks in results:
        for check, problems in checks.items():
            status = "PASS" if not problems else "FAIL"
            failed += bool(problems)
            print(f"{name:20s} {check:24s} {status}")
            for line in problems:
                print(f"    {line}")
    print(f"{len(results)} groups, {failed} failed checks")
    return 0 if failed == 0 else 1


# --- graph ---------------------------------------------------------------------------


def cmd_graph(args) -> int:
    group, target = _group_and_target(args.group, args.generators)
    if group is None:
        group, target = catalog(args.group), catalog_entry(args.group).target
    dd = DrinfeldDouble(group, seed=args.seed)
    md = dd.modular_data(verify=True)
    fd = fusion_data(md, full_tensor=False, structural_qdims=dd.quantum_dimensions)
    if args.embedding:
        selection = embedding_irreps(dd.tables[0], target)
        if not selection.candidates:
            raise QDoubleError(f"no embedding irrep for {args.group}")
        wanted = selection.candidates
    else:
        if not 1 <= args.irrep <= dd.rank:
            raise QDoubleError(f"irrep index {args.irrep} out of range 1..{dd.rank}")
        wanted = [(args.irrep - 1,)]
    labels = vertex_labels(dd)
    out = Path(args.dot or args.out)
    for irreps in wanted:
        graph = fusion_graph(md, fd, irreps)
        tag = "+".join(str(i + 1) for i in irreps)
        _write(out / f"{args.group}_N{tag}.dot", dot_export(graph, labels, f"{args.group} N{tag}"))
        sizes = [len(c) for c in graph.weak_components]
        loops = int(np.trace(graph.adjacency > 0))
        print(f"{args.group} N{tag}: {len(sizes)} components, sizes {sizes}, self-loops {loops}")
    return 0


# --- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--out", default=".", help="output directory")
    shared.add_argument("--format", choices=("json", "csv"), default="json", help="report format")
    shared.add_argument("--seed", type=int, default=DEFAULT_SEED, help="character-table seed")
    shared.add_argument("--aggregates-only", action="store_true",
                        help="skip the full fusion tensor; compute row sums, X and d_B only")
    shared.add_argument("--generators", help="file of permutation generators (1-based cycles)")

    parser = argparse.ArgumentParser(prog="qdouble", description="Modular data of Drinfeld doubles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[shared], help="write modular data, fusion tensor and report")
    p.add_argument("group")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[shared], help="compare against the shipped fixtures")
    p.add_argument("group", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--fixtures", help="fixture JSON (default: the shipped one)")
    p.add_argument("--jobs", type=int, help="parallel workers (default: $MD_JOBS or 1)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", parents=[shared], help="export fusion graphs as DOT")
    p.add_argument("group")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--irrep", type=int, help="1-based irrep index")
    which.add_argument("--embedding", action="store_true", help="graphs of the embedding irreps")
    p.add_argument("--dot", help="directory for DOT files (default: --out)")
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QDoubleError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
