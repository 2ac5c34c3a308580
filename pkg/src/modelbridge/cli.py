"""Command line front door.

Three subcommands: `pipeline` runs one theory end to end, `naturality`
runs two theories plus a translation and checks the square, `lawvere`
surveys the finite-set diagonal argument at given sizes.  Every command
prints one JSON document to stdout (and optionally writes it to a file),
identical byte for byte across runs with the same inputs and flags.

Exit codes: 0 when every check passes, 1 for usage or parse problems,
2 when some check fails, 3 when checks were skipped but none failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .parser import ParseError, parse_theory, parse_translation
from .pipeline import PipelineConfig, run_lawvere, run_naturality, run_pipeline

LAWVERE_SIZE_CAP = 4


class _Parser(argparse.ArgumentParser):
    # usage problems are exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--term-depth", type=int, default=3, metavar="N",
                   help="depth bound for the term universe (default 3)")
    p.add_argument("--henkin-rounds", type=int, default=1, metavar="N",
                   help="witness expansion rounds (default 1)")
    p.add_argument("--formula-budget", type=int, default=7, metavar="N",
                   help="existential sentences scanned per expansion round (default 7)")
    p.add_argument("--sentence-budget", type=int, default=7, metavar="N",
                   help="sentences decided by the completion stage (default 7)")
    p.add_argument("--proof-budget", type=int, default=2000, metavar="N",
                   help="tableau step budget per proof attempt (default 2000)")
    p.add_argument("--max-model-size", type=int, default=4, metavar="N",
                   help="largest domain tried by the model search (default 4)")
    p.add_argument("--universe-cap", type=int, default=4000, metavar="N",
                   help="hard cap on the term universe (default 4000)")
    p.add_argument("--no-lindenbaum", action="store_true",
                   help="skip the completion stage (decide nothing)")
    p.add_argument("--json", metavar="PATH", default=None,
                   help="also write the report to PATH")


def _config(args: argparse.Namespace) -> PipelineConfig:
    return PipelineConfig(
        term_depth=args.term_depth,
        henkin_rounds=args.henkin_rounds,
        formula_budget=args.formula_budget,
        sentence_budget=args.sentence_budget,
        proof_budget=args.proof_budget,
        max_model_size=args.max_model_size,
        universe_cap=args.universe_cap,
        lindenbaum=not args.no_lindenbaum,
    )


def _emit(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2)
    sys.stdout.write(text + "\n")
    if path:
        Path(path).write_text(text + "\n")


def _exit_code(any_fail: bool, any_skipped: bool) -> int:
    if any_fail:
        return 2
    if any_skipped:
        return 3
    return 0


def _load_theory(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return None
    try:
        return parse_theory(text)
    except ParseError as e:
        print(f"error: {path}: {e}", file=sys.stderr)
        return None


def cmd_pipeline(
    theory_file: str, config: PipelineConfig, json_path: str | None = None
) -> int:
    """Run one theory end to end, emit the report, return the exit code."""
    theory = _load_theory(theory_file)
    if theory is None:
        return 1
    result = run_pipeline(theory, config)
    _emit(result.to_json_dict(), json_path)
    return _exit_code(result.any_fail, result.any_skipped)


def cmd_naturality(
    source_file: str,
    target_file: str,
    translation_file: str,
    config: PipelineConfig,
    json_path: str | None = None,
) -> int:
    src = _load_theory(source_file)
    dst = _load_theory(target_file)
    if src is None or dst is None:
        return 1
    try:
        phi = parse_translation(Path(translation_file).read_text(), src, dst)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ParseError as e:
        print(f"error: {translation_file}: {e}", file=sys.stderr)
        return 1
    result = run_naturality(phi, config)
    _emit(result.to_json_dict(), json_path)
    return _exit_code(result.any_fail, result.any_skipped)


def cmd_lawvere(x_size: int, y_size: int, json_path: str | None = None) -> int:
    if not (0 <= x_size <= LAWVERE_SIZE_CAP and 0 <= y_size <= LAWVERE_SIZE_CAP):
        print(
            f"error: sizes must be between 0 and {LAWVERE_SIZE_CAP}",
            file=sys.stderr,
        )
        return 1
    _emit(run_lawvere(x_size, y_size), json_path)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _Parser(
        prog="modelbridge",
        description="Build term models and canonical finite models, then "
        "check the comparison map between them.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    pl = sub.add_parser("pipeline", help="run one theory end to end")
    pl.add_argument("theory", metavar="THEORY_FILE")
    _add_config_flags(pl)

    nat = sub.add_parser("naturality", help="check the translation square")
    nat.add_argument("source", metavar="SRC_THEORY_FILE")
    nat.add_argument("target", metavar="DST_THEORY_FILE")
    nat.add_argument("translation", metavar="TRANSLATION_FILE")
    _add_config_flags(nat)

    law = sub.add_parser("lawvere", help="finite-set diagonal argument survey")
    law.add_argument("x_size", type=int, metavar="X")
    law.add_argument("y_size", type=int, metavar="Y")
    law.add_argument("--json", metavar="PATH", default=None)

    args = parser.parse_args(argv)

    if args.command == "lawvere":
        return cmd_lawvere(args.x_size, args.y_size, args.json)

    try:
        cfg = _config(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    if args.command == "pipeline":
        return cmd_pipeline(args.theory, cfg, args.json)
    if args.command == "naturality":
        return cmd_naturality(args.source, args.target, args.translation, cfg, args.json)

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
