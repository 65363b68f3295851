"""Command-line interface.

Subcommands:
  lint     run the checks over .sol files and directories
  metrics  emit-density statistics per file and project
  diff     churn and emit-change classification over a revision manifest

Exit codes: 0 = clean, 1 = findings reported, 2 = usage or I/O failure.
Set NO_COLOR (or pipe the output) to suppress styling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .checks import CheckConfig, CheckId, Diagnostic, run_checks
from .evolution import (
    FilePair, Independence, Revision, RevisionReport, analyze_revision,
)
from .metrics import ProjectMetrics, compute_metrics
from .source import SourceFile

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_ERROR = 2

_SEVERITY_COLORS = {
    "error": "\x1b[31m",
    "warning": "\x1b[33m",
    "info": "\x1b[36m",
    "hint": "\x1b[2m",
}
_RESET = "\x1b[0m"


def _use_color(stream) -> bool:
    if os.environ.get("NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emitlint",
        description="Static analysis for Solidity event logging.")
    sub = parser.add_subparsers(dest="command", required=True)

    lint = sub.add_parser("lint", help="run lint checks over files")
    lint.add_argument("paths", nargs="+", metavar="PATH",
                      help=".sol files or directories (recursed)")
    lint.add_argument("--format", choices=("text", "json"), default="text")
    lint.add_argument("--config", metavar="FILE",
                      help="JSON config file with check settings")
    lint.add_argument("--enable", metavar="ID[,ID...]",
                      help="enable only these checks")
    lint.add_argument("--disable", metavar="ID[,ID...]",
                      help="disable these checks")
    lint.add_argument("--overuse-threshold", type=str, metavar="R",
                      help="emits-per-code-line ratio above which a file is "
                           "flagged (default 0.1)")
    lint.add_argument("--debug-form-b", action="store_true",
                      help="also hint on emits mixing variables with a "
                           "string literal")

    metrics = sub.add_parser("metrics", help="emit-density statistics")
    metrics.add_argument("paths", nargs="+", metavar="PATH")
    metrics.add_argument("--format", choices=("text", "json"), default="text")

    diff = sub.add_parser("diff", help="analyze revision pairs")
    diff.add_argument("--manifest", required=True, metavar="FILE",
                      help="JSON revision manifest")
    diff.add_argument("--format", choices=("text", "json"), default="text")
    diff.add_argument("--whole-file-kill", action="store_true",
                      help="run the independence kill test over whole files "
                           "instead of changed lines only")
    return parser


# ----------------------------------------------------------- config handling

def _parse_check_ids(raw: str) -> frozenset[CheckId]:
    ids = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            ids.append(CheckId(part))
        except ValueError:
            raise ValueError(f"unknown check id: {part}")
    return frozenset(ids)


def load_config(ns: argparse.Namespace) -> CheckConfig:
    threshold = Fraction(1, 10)
    enabled = frozenset(CheckId)
    form_b = False
    if getattr(ns, "config", None):
        with open(ns.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if "overuseThreshold" in data:
            threshold = Fraction(str(data["overuseThreshold"]))
        if "enabled" in data:
            enabled = _parse_check_ids(",".join(data["enabled"]))
        if "debugEventFormB" in data:
            form_b = bool(data["debugEventFormB"])
    if getattr(ns, "overuse_threshold", None):
        threshold = Fraction(ns.overuse_threshold)
    if getattr(ns, "enable", None):
        enabled = _parse_check_ids(ns.enable)
    if getattr(ns, "disable", None):
        enabled = enabled - _parse_check_ids(ns.disable)
    if getattr(ns, "debug_form_b", False):
        form_b = True
    return CheckConfig(overuse_threshold=threshold, enabled=enabled,
                       debug_event_form_b=form_b)


# ------------------------------------------------------------ file discovery

def collect_source_files(paths: list[str],
                         errors: list[str]) -> list[SourceFile]:
    file_paths: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            file_paths.extend(sorted(p.rglob("*.sol")))
        elif p.exists():
            file_paths.append(p)
        else:
            errors.append(f"{raw}: no such file or directory")
    files = []
    for fp in file_paths:
        try:
            files.append(SourceFile.load(fp))
        except (OSError, UnicodeDecodeError) as exc:
            errors.append(f"{fp}: {exc}")
    return files


# ------------------------------------------------------------------ lint cmd

def _diag_to_dict(diag: Diagnostic) -> dict:
    suggestion = None
    if diag.suggestion is not None:
        s = diag.suggestion
        suggestion = {
            "replacement": s.replacement_text,
            "startLine": s.replace_span.start_line,
            "startCol": s.replace_span.start_col,
            "endLine": s.replace_span.end_line,
            "endCol": s.replace_span.end_col,
        }
    return {
        "file": diag.file,
        "startLine": diag.span.start_line,
        "startCol": diag.span.start_col,
        "endLine": diag.span.end_line,
        "endCol": diag.span.end_col,
        "checkId": diag.check_id.value,
        "severity": diag.severity.value,
        "message": diag.message,
        "suggestion": suggestion,
    }


def _format_diag_text(diag: Diagnostic, color: bool) -> str:
    severity = diag.severity.value
    if color:
        paint = _SEVERITY_COLORS.get(severity, "")
        severity = f"{paint}{severity}{_RESET}"
    line = (f"{diag.file}:{diag.span.start_line}:{diag.span.start_col}: "
            f"{severity} {diag.check_id.value}: {diag.message}")
    if diag.suggestion is not None:
        line += f" (suggestion: use '{diag.suggestion.replacement_text}')"
    return line


def run_lint(ns: argparse.Namespace) -> int:
    try:
        cfg = load_config(ns)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"emitlint: {exc}", file=sys.stderr)
        return EXIT_ERROR
    errors: list[str] = []
    files = collect_source_files(ns.paths, errors)
    for err in errors:
        print(f"emitlint: {err}", file=sys.stderr)
    diagnostics: list[Diagnostic] = []
    for file in files:
        diagnostics.extend(run_checks(file, cfg).diagnostics)
    diagnostics.sort(key=lambda d: (d.file, d.span.start_line,
                                    d.span.start_col, d.check_id.value,
                                    d.message))
    if ns.format == "json":
        print(json.dumps([_diag_to_dict(d) for d in diagnostics], indent=2))
    else:
        color = _use_color(sys.stdout)
        for diag in diagnostics:
            print(_format_diag_text(diag, color))
        print(f"{len(files)} file(s) analyzed, "
              f"{len(diagnostics)} finding(s)")
    if not files:
        return EXIT_ERROR
    return EXIT_FINDINGS if diagnostics else EXIT_OK


# --------------------------------------------------------------- metrics cmd

def _metrics_to_dict(pm: ProjectMetrics) -> dict:
    return {
        "fileCount": pm.file_count,
        "totalCodeLoc": pm.total_code_loc,
        "totalEmitCount": pm.total_emit_count,
        "emitPerLoc": float(pm.emit_per_loc),
        "perFile": [
            {
                "path": f.path,
                "codeLoc": f.code_loc,
                "emitCount": f.emit_count,
                "emitPerLoc": float(f.emit_per_loc),
                "method": f.method,
            }
            for f in pm.per_file
        ],
    }


def run_metrics(ns: argparse.Namespace) -> int:
    errors: list[str] = []
    files = collect_source_files(ns.paths, errors)
    for err in errors:
        print(f"emitlint: {err}", file=sys.stderr)
    pm = compute_metrics(files)
    if ns.format == "json":
        print(json.dumps(_metrics_to_dict(pm), indent=2))
        return EXIT_OK
    print(f"files analyzed: {pm.file_count}")
    print(f"code lines: {pm.total_code_loc}")
    print(f"emit statements: {pm.total_emit_count}")
    print(f"emits per code line: {float(pm.emit_per_loc):.3f}")
    for f in pm.per_file:
        print(f"  {f.path}: {f.emit_count} emits / {f.code_loc} code lines "
              f"= {float(f.emit_per_loc):.3f} ({f.method})")
    return EXIT_OK


# ------------------------------------------------------------------ diff cmd

def load_manifest(path: str) -> tuple[list[Revision], list[str]]:
    base = Path(path).parent
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    revisions: list[Revision] = []
    errors: list[str] = []
    for entry in data.get("revisions", []):
        rev_id = str(entry.get("id", f"rev{len(revisions)}"))
        pairs: list[FilePair] = []
        ok = True
        for pair in entry.get("pairs", []):
            before = after = None
            try:
                if pair.get("beforeFile"):
                    before = SourceFile.load(base / pair["beforeFile"])
                    before.path = pair.get("path", pair["beforeFile"])
                if pair.get("afterFile"):
                    after = SourceFile.load(base / pair["afterFile"])
                    after.path = pair.get("path", pair["afterFile"])
            except OSError as exc:
                errors.append(f"revision {rev_id}: {exc}")
                ok = False
                break
            if before is None and after is None:
                errors.append(f"revision {rev_id}: pair with no files")
                ok = False
                break
            pairs.append(FilePair(pair.get("path", ""), before, after))
        if ok:
            revisions.append(Revision(rev_id, entry.get("message"),
                                      tuple(pairs)))
    return revisions, errors


def _change_to_dict(change) -> dict:
    def emit_dict(match):
        if match is None:
            return None
        return {
            "event": match.event_name,
            "args": match.raw_args.strip(),
            "line": match.span.start_line,
        }

    return {
        "path": change.path,
        "category": change.category.value,
        "before": emit_dict(change.before_emit),
        "after": emit_dict(change.after_emit),
        "changedArgTokens": list(change.changed_arg_tokens),
        "independence": change.independence.value,
    }


def _report_to_dict(report: RevisionReport) -> dict:
    c = report.churn
    return {
        "id": report.revision_id,
        "churn": {
            "churnedLoc": c.churned_loc,
            "totalLoc": c.total_loc,
            "locChurnRate": float(c.loc_churn_rate),
            "churnedEmits": c.churned_emits,
            "totalEmits": c.total_emits,
            "emitChurnRate": float(c.emit_churn_rate),
        },
        "changes": [_change_to_dict(ch) for ch in report.changes],
    }


def summarize_reports(reports: list[RevisionReport]) -> dict:
    changes = [ch for rep in reports for ch in rep.changes]
    total = len(changes)
    absolute = sum(1 for ch in changes
                   if ch.independence == Independence.ABSOLUTE_INDEPENDENT)
    independent = absolute + sum(
        1 for ch in changes
        if ch.independence == Independence.HEURISTIC_INDEPENDENT)
    return {
        "changeCount": total,
        "absoluteIndependentFraction":
            float(Fraction(absolute, total)) if total else 0.0,
        "independentFraction":
            float(Fraction(independent, total)) if total else 0.0,
    }


def run_diff(ns: argparse.Namespace) -> int:
    try:
        revisions, errors = load_manifest(ns.manifest)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"emitlint: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for err in errors:
        print(f"emitlint: {err}", file=sys.stderr)
    reports = [analyze_revision(rev, ns.whole_file_kill) for rev in revisions]
    summary = summarize_reports(reports)
    if ns.format == "json":
        print(json.dumps({
            "revisions": [_report_to_dict(r) for r in reports],
            "summary": summary,
        }, indent=2))
    else:
        for rep in reports:
            c = rep.churn
            print(f"revision {rep.revision_id}: "
                  f"locChurnRate {float(c.loc_churn_rate):.3f} "
                  f"({c.churned_loc}/{c.total_loc}), "
                  f"emitChurnRate {float(c.emit_churn_rate):.3f} "
                  f"({c.churned_emits}/{c.total_emits})")
            for ch in rep.changes:
                before = ch.before_emit.event_name if ch.before_emit else "-"
                after = ch.after_emit.event_name if ch.after_emit else "-"
                tokens = ",".join(ch.changed_arg_tokens) or "-"
                print(f"  {ch.category.value} {before} -> {after} "
                      f"[{ch.independence.value}] tokens: {tokens}")
        print(f"summary: {summary['changeCount']} change(s), "
              f"absoluteIndependent {summary['absoluteIndependentFraction']:.3f}, "
              f"independent {summary['independentFraction']:.3f}")
    if not reports and errors:
        return EXIT_ERROR
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_OK
    if ns.command == "lint":
        return run_lint(ns)
    if ns.command == "metrics":
        return run_metrics(ns)
    return run_diff(ns)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
