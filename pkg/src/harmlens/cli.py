"""Command-line interface.

Subcommands: validate, consensus, score, map, audit. Every input defaults
to the dataset shipped with the package (or the ``HARMLENS_DATA_DIR``
override); outputs are deterministic, so identical inputs always produce
byte-identical text.

Exit codes: 0 success, 1 validation or audit failure, 2 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from json import JSONDecodeError

from . import loaders
from .consensus import consensus_table
from .mapping import map_forward, map_reverse, mapping_asymmetry_check
from .matrix import THEORIES
from .registry import audit_orthogonality
from .severity import AGGREGATION_MODES, severity_report

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmlens",
        description="Harm taxonomy registry, theory-consensus statistics, and incident severity scoring.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser, *, matrix: bool = False) -> None:
        p.add_argument("--registry", metavar="PATH", help="registry JSON (default: shipped dataset)")
        if matrix:
            p.add_argument("--matrix", metavar="PATH", help="normative tables JSON (default: shipped dataset)")
        p.add_argument(
            "--format",
            choices=("json", "table"),
            default="table",
            help="output format (default: table)",
        )

    p_validate = sub.add_parser("validate", help="Load and validate data files, reporting diagnostics.")
    add_common(p_validate, matrix=True)
    p_validate.add_argument("--profile", metavar="PATH", help="incident profile JSON")
    p_validate.add_argument("--mappings", metavar="PATH", help="domain mapping JSON")
    p_validate.add_argument("--instances", metavar="PATH", help="instance corpus JSON")

    p_consensus = sub.add_parser("consensus", help="Recompute the per-category consensus statistics.")
    add_common(p_consensus, matrix=True)

    p_score = sub.add_parser("score", help="Score an incident profile against all theories.")
    add_common(p_score, matrix=True)
    p_score.add_argument("--profile", metavar="PATH", required=True, help="incident profile JSON")
    p_score.add_argument(
        "--mode",
        choices=AGGREGATION_MODES,
        default="mean",
        help="aggregation mode (default: mean)",
    )

    p_map = sub.add_parser("map", help="Query a domain mapping, forward or as a coverage report.")
    add_common(p_map)
    p_map.add_argument("--mappings", metavar="PATH", help="domain mapping JSON (default: shipped dataset)")
    p_map.add_argument("--reverse", action="store_true", help="emit the category coverage report")

    p_audit = sub.add_parser("audit", help="Run the exclusive-witness audit over an instance corpus.")
    add_common(p_audit)
    p_audit.add_argument("--instances", metavar="PATH", help="instance corpus JSON (default: shipped dataset)")

    return parser


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2, ensure_ascii=False))


def _cmd_validate(args) -> int:
    checked = []
    registry = loaders.load_registry(args.registry or loaders.default_data_path(loaders.REGISTRY_FILE))
    checked.append("registry")
    matrix_path = str(args.matrix or loaders.default_data_path(loaders.MATRIX_FILE))
    matrix = loaders.load_matrix(matrix_path)
    checked.append("matrix")
    if set(matrix.categories) != set(registry.categories):
        raise loaders.LoadError(
            [
                loaders.Diagnostic(
                    "error",
                    matrix_path,
                    None,
                    "matrix categories do not match the registry's category nodes",
                )
            ]
        )
    known_entities = registry.entity_codes()
    stray = sorted(
        str(code)
        for theory in THEORIES
        for code in matrix.priorities(theory)
        if code not in known_entities
    )
    if stray:
        raise loaders.LoadError(
            [
                loaders.Diagnostic(
                    "error",
                    matrix_path,
                    None,
                    f"victim priorities reference entities missing from the registry: {', '.join(stray)}",
                )
            ]
        )
    if args.profile:
        loaders.load_profile(args.profile, registry)
        checked.append("profile")
    if args.mappings:
        loaders.load_mappings(args.mappings, registry)
        checked.append("mappings")
    if args.instances:
        loaders.load_instances(args.instances, registry)
        checked.append("instances")

    if args.format == "json":
        _emit({"ok": True, "checked": checked, "diagnostics": []})
    else:
        print(f"ok: {', '.join(checked)} valid")
    return EXIT_OK


def _cmd_consensus(args) -> int:
    matrix = loaders.load_matrix(args.matrix or loaders.default_data_path(loaders.MATRIX_FILE))
    report = consensus_table(matrix)
    if args.format == "json":
        _emit(report.to_dict())
    else:
        print(report.render_table())
    return EXIT_OK


def _cmd_score(args) -> int:
    registry = loaders.load_registry(args.registry or loaders.default_data_path(loaders.REGISTRY_FILE))
    matrix = loaders.load_matrix(args.matrix or loaders.default_data_path(loaders.MATRIX_FILE))
    profile = loaders.load_profile(args.profile, registry)
    report = severity_report(matrix, registry, profile, mode=args.mode)
    if args.format == "json":
        _emit(report.to_dict())
    else:
        print(report.render_text())
    return EXIT_OK


def _cmd_map(args) -> int:
    registry = loaders.load_registry(args.registry or loaders.default_data_path(loaders.REGISTRY_FILE))
    mapping = loaders.load_mappings(
        args.mappings or loaders.default_data_path(loaders.MAPPING_FILE), registry
    )
    if args.reverse:
        report = map_reverse(mapping, registry)
        if args.format == "json":
            _emit(report.to_dict())
        else:
            print(report.render_text())
        return EXIT_OK

    histogram = mapping_asymmetry_check(mapping)
    forward = {
        entry.domain_harm: [
            {"code": str(code), "strength": strength.value}
            for code, strength in map_forward(mapping, entry.domain_harm)
        ]
        for entry in mapping.entries
    }
    if args.format == "json":
        _emit(
            {
                "domain_name": mapping.domain_name,
                "forward": forward,
                "strength_histogram": histogram.to_dict(),
            }
        )
    else:
        print(f"domain: {mapping.domain_name}")
        for harm, codes in forward.items():
            print(f"{harm}:")
            for item in codes:
                print(f"  {item['code']}  {item['strength']}")
        totals = histogram.to_dict()["totals"]
        print("strength histogram: " + ", ".join(f"{k}={v}" for k, v in totals.items()))
    return EXIT_OK


def _cmd_audit(args) -> int:
    registry = loaders.load_registry(args.registry or loaders.default_data_path(loaders.REGISTRY_FILE))
    instances = loaders.load_instances(
        args.instances or loaders.default_data_path(loaders.INSTANCES_FILE), registry
    )
    report = audit_orthogonality(registry, instances)
    if args.format == "json":
        _emit(report.to_dict())
    else:
        for cat in report.passed:
            ids = ", ".join(report.witnesses[cat])
            print(f"pass  {cat}  witnesses: {ids}")
        for cat in report.failed:
            flag = " (no witnesses)" if report.no_witnesses else ""
            print(f"FAIL  {cat}  no exclusive witness{flag}")
        if report.unmapped_instances:
            print("instances spanning multiple categories: " + ", ".join(report.unmapped_instances))
    return EXIT_OK if report.ok else EXIT_VALIDATION


_COMMANDS = {
    "validate": _cmd_validate,
    "consensus": _cmd_consensus,
    "score": _cmd_score,
    "map": _cmd_map,
    "audit": _cmd_audit,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.subcommand](args)
    except loaders.LoadError as exc:
        for diag in exc.diagnostics:
            print(str(diag), file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
