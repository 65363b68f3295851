"""Source text plumbing: files, spans, and position arithmetic.

Lines and columns are 1-based. A span covers the half-open character range
from its start position up to (but not including) its end position, so the
text of a span can be sliced directly out of the file.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    @property
    def start(self) -> tuple[int, int]:
        return (self.start_line, self.start_col)

    @property
    def end(self) -> tuple[int, int]:
        return (self.end_line, self.end_col)

    def contains_point(self, line: int, col: int) -> bool:
        return self.start <= (line, col) < self.end

    def contains(self, other: Span) -> bool:
        return self.start <= other.start and other.end <= self.end

    def last_line(self) -> int:
        """Last line the span actually touches (end column 1 means the span
        stopped at the preceding line's newline)."""
        if self.end_col == 1 and self.end_line > self.start_line:
            return self.end_line - 1
        return self.end_line

    @staticmethod
    def cover(a: Span, b: Span) -> Span:
        start = min(a.start, b.start)
        end = max(a.end, b.end)
        return Span(start[0], start[1], end[0], end[1])


@dataclass
class SourceFile:
    path: str
    text: str
    line_starts: list[int]

    @classmethod
    def from_text(cls, path: str, text: str) -> SourceFile:
        if text.startswith("﻿"):
            text = text[1:]
        starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                starts.append(i + 1)
        return cls(path, text, starts)

    @classmethod
    def load(cls, path) -> SourceFile:
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(str(path), fh.read())

    @property
    def line_count(self) -> int:
        if not self.text:
            return 0
        n = len(self.line_starts)
        return n - 1 if self.text.endswith("\n") else n

    def line_text(self, line: int) -> str:
        start = self.line_starts[line - 1]
        if line < len(self.line_starts):
            end = self.line_starts[line] - 1
        else:
            end = len(self.text)
        return self.text[start:end]

    def offset_to_linecol(self, offset: int) -> tuple[int, int]:
        line = bisect.bisect_right(self.line_starts, offset)
        return line, offset - self.line_starts[line - 1] + 1

    def linecol_to_offset(self, line: int, col: int) -> int:
        return self.line_starts[line - 1] + col - 1

    def span_from_offsets(self, start: int, end: int) -> Span:
        sl, sc = self.offset_to_linecol(start)
        el, ec = self.offset_to_linecol(end)
        return Span(sl, sc, el, ec)

    def span_text(self, span: Span) -> str:
        a = self.linecol_to_offset(span.start_line, span.start_col)
        b = self.linecol_to_offset(span.end_line, span.end_col)
        return self.text[a:b]

    def full_span(self) -> Span:
        if not self.text:
            return Span(1, 1, 1, 1)
        return self.span_from_offsets(0, len(self.text))
