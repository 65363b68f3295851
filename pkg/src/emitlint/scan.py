"""Line accounting and the lightweight textual emit matcher.

Line classification: a line is blank when it holds only whitespace, a comment
line when all of its non-blank content lies inside comments, and a code line
otherwise. A line mixing code and a trailing comment counts as code.

The emit matcher applies one fixed pattern with a non-greedy argument capture.
It deliberately keeps the pattern's known weaknesses (it stops at the first
closing parenthesis and it matches inside comments and strings) so that counts
stay reproducible; hits inside comments or strings are flagged rather than
dropped, letting callers choose.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lexer import lex
from .source import SourceFile, Span

EMIT_PATTERN = re.compile(r"\s+emit\s+(\w+)\s*\(([\s\S]*?)\)\s*")

_IDENT_RE = re.compile(r"^[A-Za-z_]\w*$")

LINE_CODE = "code"
LINE_COMMENT = "comment"
LINE_BLANK = "blank"


@dataclass(frozen=True)
class LocStats:
    total_lines: int
    code_lines: int
    comment_lines: int
    blank_lines: int


@dataclass(frozen=True)
class RegexEmitMatch:
    event_name: str
    raw_args: str
    span: Span
    in_comment_or_string: bool


def classify_lines(file: SourceFile) -> list[str]:
    """Per-line classification, index 0 = line 1."""
    result = lex(file)
    ranges = result.comment_ranges
    kinds: list[str] = []
    ci = 0
    for line in range(1, file.line_count + 1):
        start = file.line_starts[line - 1]
        if line < len(file.line_starts):
            end = file.line_starts[line] - 1
        else:
            end = len(file.text)
        kind = LINE_BLANK
        for off in range(start, end):
            if file.text[off] in " \t\r":
                continue
            while ci < len(ranges) and ranges[ci][1] <= off:
                ci += 1
            if ci < len(ranges) and ranges[ci][0] <= off < ranges[ci][1]:
                kind = LINE_COMMENT
                continue
            kind = LINE_CODE
            break
        kinds.append(kind)
    return kinds


def count_loc(file: SourceFile) -> LocStats:
    kinds = classify_lines(file)
    return LocStats(
        total_lines=len(kinds),
        code_lines=kinds.count(LINE_CODE),
        comment_lines=kinds.count(LINE_COMMENT),
        blank_lines=kinds.count(LINE_BLANK),
    )


def extract_emits_regex(file: SourceFile) -> list[RegexEmitMatch]:
    """All textual emit matches in source order.

    The pattern requires whitespace before the emit keyword, so the text is
    searched with one synthetic leading newline; a match at the very start of
    the file is therefore not missed. Reported spans run from the emit keyword
    through the closing parenthesis.
    """
    result = lex(file)
    covered = sorted(result.comment_ranges + result.string_ranges)
    padded = "\n" + file.text
    matches: list[RegexEmitMatch] = []
    for m in EMIT_PATTERN.finditer(padded):
        name = m.group(1)
        if not _IDENT_RE.match(name):
            continue
        whole = m.group(0)
        lead = len(whole) - len(whole.lstrip())
        emit_off = m.start() + lead - 1
        end_off = m.end(2)  # one past ')' after removing the pad offset
        flagged = any(a <= emit_off < b for a, b in covered)
        matches.append(
            RegexEmitMatch(
                event_name=name,
                raw_args=m.group(2),
                span=file.span_from_offsets(emit_off, end_off),
                in_comment_or_string=flagged,
            )
        )
    return matches


def match_line_range(match: RegexEmitMatch) -> set[int]:
    """Line numbers the match occupies (emit keyword through close paren)."""
    return set(range(match.span.start_line, match.span.last_line() + 1))
