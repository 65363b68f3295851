"""Emit-density metrics per file and per project.

Emits are counted from the AST when the file parses without fatal errors;
otherwise the textual matcher is used, skipping hits inside comments and
strings. The method actually used is recorded per file.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .nodes import EmitStmt, SourceUnit, walk_statements
from .parser import has_fatal_errors, parse_file
from .scan import count_loc, extract_emits_regex
from .source import SourceFile


@dataclass(frozen=True)
class FileMetrics:
    path: str
    code_loc: int
    emit_count: int
    emit_per_loc: Fraction
    method: str  # "ast" | "regex"


@dataclass(frozen=True)
class ProjectMetrics:
    file_count: int
    total_code_loc: int
    total_emit_count: int
    emit_per_loc: Fraction
    per_file: tuple[FileMetrics, ...]


def count_ast_emits(unit: SourceUnit) -> int:
    count = 0
    for contract in unit.contracts:
        for fn in contract.functions:
            if fn.body is None:
                continue
            for stmt in walk_statements(fn.body):
                if isinstance(stmt, EmitStmt):
                    count += 1
    return count


def count_file_emits(file: SourceFile,
                     unit: SourceUnit | None = None) -> tuple[int, str]:
    if unit is None:
        unit = parse_file(file)
    if has_fatal_errors(unit):
        count = sum(1 for m in extract_emits_regex(file)
                    if not m.in_comment_or_string)
        return count, "regex"
    return count_ast_emits(unit), "ast"


def compute_metrics(files: list[SourceFile]) -> ProjectMetrics:
    per_file: list[FileMetrics] = []
    for file in files:
        loc = count_loc(file)
        count, method = count_file_emits(file)
        ratio = Fraction(count, loc.code_lines) if loc.code_lines > 0 \
            else Fraction(0)
        per_file.append(FileMetrics(file.path, loc.code_lines, count, ratio,
                                    method))
    total_loc = sum(f.code_loc for f in per_file)
    total_emits = sum(f.emit_count for f in per_file)
    ratio = Fraction(total_emits, total_loc) if total_loc > 0 else Fraction(0)
    return ProjectMetrics(len(per_file), total_loc, total_emits, ratio,
                          tuple(per_file))
