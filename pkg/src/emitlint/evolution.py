"""Revision analysis: line diffing, churn rates, and classification of emit
modifications.

A revision is a set of before/after file pairs. The diff is a minimal
longest-common-subsequence edit script (Myers), so a modified line appears as
one deleted plus one added line. Churn counts added and deleted code lines
(comments and blanks excluded) against the after side's total; emit churn uses
the textual matcher on both sides, consistent with how totals are counted.

Changed emits on the deleted and added sides are matched greedily, most
specific rule first: unchanged emits at a new location are moves, same-name
pairs are parameter changes, same-argument pairs are replacements, leftover
pairs differing in both are compound edits, and whatever remains is a pure
addition or deletion. Ties break on line distance, then source order.

Independence: a change is absolutely independent when every changed line in
the revision is an emit line (or blank/comment); failing that, it is
heuristically independent when none of its changed argument tokens is
reassigned or passed to a call on the revision's other changed lines, and
dependent otherwise.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import re

from .lexer import TokenKind, classify_word, lex
from .scan import (
    LINE_BLANK, LINE_COMMENT, classify_lines, count_loc, extract_emits_regex,
    match_line_range, RegexEmitMatch,
)
from .source import SourceFile

_NEG = -(10 ** 9)

_IDENT_TOKEN_RE = re.compile(r"[A-Za-z_]\w*")

_ASSIGN_OPS = frozenset({
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=",
})


# ------------------------------------------------------------------ diffing

@dataclass(frozen=True)
class DiffOp:
    kind: str  # keep | add | delete
    before_line: int | None
    after_line: int | None
    text: str


@dataclass
class LineDiff:
    ops: list[DiffOp]


def _split_lines(file: SourceFile | None) -> list[str]:
    if file is None or file.text == "":
        return []
    return file.text.split("\n")


def _myers(a: list[str], b: list[str]) -> list[tuple[str, int | None, int | None]]:
    n, m = len(a), len(b)
    v: dict[int, int] = {1: 0}
    trace: list[dict[int, int]] = []
    final_d = 0
    for d in range(n + m + 1):
        trace.append(dict(v))
        done = False
        for k in range(-d, d + 1, 2):
            if k == -d or (k != d and v.get(k - 1, _NEG) < v.get(k + 1, _NEG)):
                x = v.get(k + 1, 0)
            else:
                x = v.get(k - 1, _NEG) + 1
            y = x - k
            while x < n and y < m and a[x] == b[y]:
                x += 1
                y += 1
            v[k] = x
            if x >= n and y >= m:
                final_d = d
                done = True
                break
        if done:
            break
    ops: list[tuple[str, int | None, int | None]] = []
    x, y = n, m
    for d in range(final_d, 0, -1):
        vd = trace[d]
        k = x - y
        if k == -d or (k != d and vd.get(k - 1, _NEG) < vd.get(k + 1, _NEG)):
            prev_k = k + 1
        else:
            prev_k = k - 1
        prev_x = vd.get(prev_k, 0)
        prev_y = prev_x - prev_k
        while x > prev_x and y > prev_y:
            ops.append(("keep", x - 1, y - 1))
            x -= 1
            y -= 1
        if x == prev_x:
            ops.append(("add", None, prev_y))
        else:
            ops.append(("delete", prev_x, None))
        x, y = prev_x, prev_y
    while x > 0 and y > 0:
        ops.append(("keep", x - 1, y - 1))
        x -= 1
        y -= 1
    ops.reverse()
    return ops


def diff_lines(before: SourceFile | None, after: SourceFile | None) -> LineDiff:
    """Minimal LCS line diff; replaying keeps and adds reproduces the after
    text exactly."""
    a = _split_lines(before)
    b = _split_lines(after)
    raw = _myers(a, b)
    ops = []
    for kind, bi, ai in raw:
        if kind == "keep":
            ops.append(DiffOp("keep", bi + 1, ai + 1, a[bi]))
        elif kind == "delete":
            ops.append(DiffOp("delete", bi + 1, None, a[bi]))
        else:
            ops.append(DiffOp("add", None, ai + 1, b[ai]))
    return LineDiff(ops)


def replay(diff: LineDiff) -> str:
    return "\n".join(op.text for op in diff.ops if op.kind in ("keep", "add"))


# -------------------------------------------------------------------- churn

@dataclass(frozen=True)
class FilePair:
    path: str
    before: SourceFile | None
    after: SourceFile | None


@dataclass(frozen=True)
class Revision:
    id: str
    message: str | None
    file_pairs: tuple[FilePair, ...]


@dataclass(frozen=True)
class ChurnReport:
    churned_loc: int
    total_loc: int
    loc_churn_rate: Fraction
    churned_emits: int
    total_emits: int
    emit_churn_rate: Fraction


def _kind_at(kinds: list[str], line: int | None) -> str:
    if line is None or not 1 <= line <= len(kinds):
        return LINE_BLANK
    return kinds[line - 1]


def churn(rev: Revision) -> ChurnReport:
    churned_loc = total_loc = churned_emits = total_emits = 0
    for pair in rev.file_pairs:
        diff = diff_lines(pair.before, pair.after)
        before_kinds = classify_lines(pair.before) if pair.before else []
        after_kinds = classify_lines(pair.after) if pair.after else []
        deleted = {op.before_line for op in diff.ops if op.kind == "delete"}
        added = {op.after_line for op in diff.ops if op.kind == "add"}
        churned_loc += sum(1 for line in deleted
                           if _kind_at(before_kinds, line) == "code")
        churned_loc += sum(1 for line in added
                           if _kind_at(after_kinds, line) == "code")
        primary = pair.after if pair.after is not None else pair.before
        total_loc += count_loc(primary).code_lines
        before_matches = extract_emits_regex(pair.before) if pair.before else []
        after_matches = extract_emits_regex(pair.after) if pair.after else []
        churned_emits += sum(1 for m in before_matches
                             if match_line_range(m) & deleted)
        churned_emits += sum(1 for m in after_matches
                             if match_line_range(m) & added)
        total_emits += len(after_matches if pair.after is not None
                           else before_matches)
    loc_rate = Fraction(churned_loc, total_loc) if total_loc else Fraction(0)
    emit_rate = Fraction(churned_emits, total_emits) if total_emits \
        else Fraction(0)
    return ChurnReport(churned_loc, total_loc, loc_rate, churned_emits,
                       total_emits, emit_rate)


# ----------------------------------------------------------- change taxonomy

class ChangeCategory(Enum):
    PARAMETER_CHANGE = "ParameterChange"
    ADDITION = "Addition"
    DELETION = "Deletion"
    MOVE = "Move"
    REPLACEMENT = "Replacement"
    COMPOUND = "Compound"


class Independence(Enum):
    ABSOLUTE_INDEPENDENT = "AbsoluteIndependent"
    HEURISTIC_INDEPENDENT = "HeuristicIndependent"
    DEPENDENT = "Dependent"


@dataclass
class EventUseChange:
    path: str
    category: ChangeCategory
    before_emit: RegexEmitMatch | None
    after_emit: RegexEmitMatch | None
    changed_arg_tokens: list[str]
    independence: Independence | None = None


def _norm_args(match: RegexEmitMatch) -> str:
    return "".join(match.raw_args.split())


def _ident_tokens(raw_args: str) -> list[str]:
    return _IDENT_TOKEN_RE.findall(raw_args)


def _changed_tokens(before: RegexEmitMatch | None,
                    after: RegexEmitMatch | None,
                    category: ChangeCategory) -> list[str]:
    if category in (ChangeCategory.MOVE, ChangeCategory.REPLACEMENT):
        return []
    if category == ChangeCategory.ADDITION:
        return _ident_tokens(after.raw_args)
    if category == ChangeCategory.DELETION:
        return _ident_tokens(before.raw_args)
    before_tokens = _ident_tokens(before.raw_args)
    after_tokens = _ident_tokens(after.raw_args)
    removed = Counter(before_tokens) - Counter(after_tokens)
    added = Counter(after_tokens) - Counter(before_tokens)
    tokens: list[str] = []
    for tok in before_tokens:
        if removed[tok] > 0:
            removed[tok] -= 1
            tokens.append(tok)
    for tok in after_tokens:
        if added[tok] > 0:
            added[tok] -= 1
            tokens.append(tok)
    return tokens


def _changed_emits(pair: FilePair) -> tuple[list[RegexEmitMatch],
                                            list[RegexEmitMatch]]:
    diff = diff_lines(pair.before, pair.after)
    deleted = {op.before_line for op in diff.ops if op.kind == "delete"}
    added = {op.after_line for op in diff.ops if op.kind == "add"}
    before_matches = extract_emits_regex(pair.before) if pair.before else []
    after_matches = extract_emits_regex(pair.after) if pair.after else []
    gone = [m for m in before_matches if match_line_range(m) & deleted]
    new = [m for m in after_matches if match_line_range(m) & added]
    return gone, new


def pair_emit_changes(rev: Revision) -> list[EventUseChange]:
    """Match deleted-side and added-side emits into classified changes."""
    changes: list[EventUseChange] = []
    for pair in rev.file_pairs:
        gone, new = _changed_emits(pair)
        matched_d: set[int] = set()
        matched_a: set[int] = set()

        def take(rule, category: ChangeCategory) -> None:
            candidates = []
            for di, d in enumerate(gone):
                if di in matched_d:
                    continue
                for ai, a in enumerate(new):
                    if ai in matched_a:
                        continue
                    if rule(d, a):
                        dist = abs(d.span.start_line - a.span.start_line)
                        candidates.append((dist, di, ai))
            candidates.sort()
            for _, di, ai in candidates:
                if di in matched_d or ai in matched_a:
                    continue
                matched_d.add(di)
                matched_a.add(ai)
                d, a = gone[di], new[ai]
                changes.append(EventUseChange(
                    pair.path, category, d, a,
                    _changed_tokens(d, a, category)))

        take(lambda d, a: d.event_name == a.event_name
             and _norm_args(d) == _norm_args(a), ChangeCategory.MOVE)
        take(lambda d, a: d.event_name == a.event_name
             and _norm_args(d) != _norm_args(a),
             ChangeCategory.PARAMETER_CHANGE)
        take(lambda d, a: d.event_name != a.event_name
             and _norm_args(d) == _norm_args(a), ChangeCategory.REPLACEMENT)
        take(lambda d, a: True, ChangeCategory.COMPOUND)
        for di, d in enumerate(gone):
            if di not in matched_d:
                changes.append(EventUseChange(
                    pair.path, ChangeCategory.DELETION, d, None,
                    _changed_tokens(d, None, ChangeCategory.DELETION)))
        for ai, a in enumerate(new):
            if ai not in matched_a:
                changes.append(EventUseChange(
                    pair.path, ChangeCategory.ADDITION, None, a,
                    _changed_tokens(None, a, ChangeCategory.ADDITION)))
    return changes


# --------------------------------------------------------------- independence

def is_emit_only_revision(rev: Revision) -> bool:
    """True when every changed line in the revision is an emit line, a blank
    line, or a comment line."""
    for pair in rev.file_pairs:
        diff = diff_lines(pair.before, pair.after)
        for side, file in (("delete", pair.before), ("add", pair.after)):
            lines = {op.before_line if side == "delete" else op.after_line
                     for op in diff.ops if op.kind == side}
            if not lines:
                continue
            if file is None:
                return False
            kinds = classify_lines(file)
            emit_lines: set[int] = set()
            for m in extract_emits_regex(file):
                emit_lines |= match_line_range(m)
            for line in lines:
                if line in emit_lines:
                    continue
                if _kind_at(kinds, line) in (LINE_BLANK, LINE_COMMENT):
                    continue
                return False
    return True


def _changed_chunks(pair: FilePair, whole_file: bool) -> list[str]:
    """Changed non-emit line runs on both sides (whole files in whole-file
    mode), joined per run so multi-line constructs stay scannable."""
    chunks: list[str] = []
    diff = diff_lines(pair.before, pair.after) if not whole_file else None
    for side, file in (("delete", pair.before), ("add", pair.after)):
        if file is None:
            continue
        if whole_file:
            lines = set(range(1, file.line_count + 1))
        else:
            lines = {op.before_line if side == "delete" else op.after_line
                     for op in diff.ops if op.kind == side}
        emit_lines: set[int] = set()
        for m in extract_emits_regex(file):
            emit_lines |= match_line_range(m)
        lines -= emit_lines
        run: list[str] = []
        last = None
        for line in sorted(lines):
            if last is not None and line != last + 1 and run:
                chunks.append("\n".join(run))
                run = []
            run.append(file.line_text(line))
            last = line
        if run:
            chunks.append("\n".join(run))
    return chunks


def _scan_kill_sets(chunk: str) -> tuple[set[str], set[str]]:
    """Identifiers assigned to, and identifiers passed inside call argument
    lists, in a fragment of changed source text."""
    assigned: set[str] = set()
    passed: set[str] = set()
    toks = lex(SourceFile.from_text("<chunk>", chunk)).tokens
    for idx, tok in enumerate(toks):
        if tok.kind == TokenKind.OPERATOR and tok.lexeme in _ASSIGN_OPS:
            j = idx - 1
            while j >= 0:
                prev = toks[j]
                if prev.kind == TokenKind.PUNCT and prev.lexeme in ";,{}()":
                    break
                if prev.kind == TokenKind.IDENTIFIER:
                    assigned.add(prev.lexeme)
                j -= 1
        elif tok.kind == TokenKind.OPERATOR and tok.lexeme in ("++", "--"):
            for j in (idx - 1, idx + 1):
                if 0 <= j < len(toks) and toks[j].kind == TokenKind.IDENTIFIER:
                    assigned.add(toks[j].lexeme)
        elif tok.kind == TokenKind.IDENTIFIER and idx + 1 < len(toks) and \
                toks[idx + 1].kind == TokenKind.PUNCT and \
                toks[idx + 1].lexeme == "(":
            depth = 0
            for j in range(idx + 1, len(toks)):
                t = toks[j]
                if t.kind == TokenKind.PUNCT and t.lexeme == "(":
                    depth += 1
                elif t.kind == TokenKind.PUNCT and t.lexeme == ")":
                    depth -= 1
                    if depth == 0:
                        break
                elif t.kind == TokenKind.IDENTIFIER and j > idx + 1:
                    passed.add(t.lexeme)
    return assigned, passed


def passes_variable_kill_test(rev: Revision, change: EventUseChange,
                              whole_file: bool = False) -> bool:
    """True when none of the change's argument tokens is reassigned or passed
    to a call on the revision's changed lines (whole files in whole-file
    mode). Vacuously true when the change has no identifier tokens."""
    tokens = [t for t in change.changed_arg_tokens
              if classify_word(t) == TokenKind.IDENTIFIER]
    if not tokens:
        return True
    assigned: set[str] = set()
    passed: set[str] = set()
    for pair in rev.file_pairs:
        for chunk in _changed_chunks(pair, whole_file):
            a, p = _scan_kill_sets(chunk)
            assigned |= a
            passed |= p
    return not any(t in assigned or t in passed for t in tokens)


def classify_independence(rev: Revision, change: EventUseChange,
                          whole_file: bool = False) -> Independence:
    if is_emit_only_revision(rev):
        return Independence.ABSOLUTE_INDEPENDENT
    if passes_variable_kill_test(rev, change, whole_file):
        return Independence.HEURISTIC_INDEPENDENT
    return Independence.DEPENDENT


# ------------------------------------------------------------------ reports

@dataclass
class RevisionReport:
    revision_id: str
    churn: ChurnReport
    changes: list[EventUseChange] = field(default_factory=list)


def analyze_revision(rev: Revision,
                     whole_file_kill: bool = False) -> RevisionReport:
    changes = pair_emit_changes(rev)
    for change in changes:
        change.independence = classify_independence(rev, change,
                                                    whole_file_kill)
    return RevisionReport(rev.id, churn(rev), changes)
