"""Tokenizer for the supported Solidity subset.

Comments and whitespace are consumed, never emitted as tokens. Their source
ranges are kept on the side so later passes can classify lines and decide
whether a textual match falls inside a comment or a string literal.

Recovery: an unterminated string abandons the current line and resumes at the
next one; an unterminated block comment swallows the rest of the file. Both
are recorded as lex errors rather than raised.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .source import SourceFile, Span


class TokenKind(Enum):
    KEYWORD = "Keyword"
    IDENTIFIER = "Identifier"
    NUMBER = "NumberLit"
    STRING = "StringLit"
    PUNCT = "Punct"
    OPERATOR = "Operator"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span


@dataclass(frozen=True)
class LexError:
    kind: str  # UnterminatedString | UnterminatedComment | UnexpectedCharacter
    span: Span


@dataclass
class LexResult:
    tokens: list[Token]
    errors: list[LexError]
    # Half-open character-offset ranges, in source order.
    comment_ranges: list[tuple[int, int]]
    string_ranges: list[tuple[int, int]]


KEYWORDS = frozenset({
    "abstract", "anonymous", "assembly", "break", "calldata", "catch",
    "constant", "constructor", "continue", "contract", "delete", "do",
    "else", "emit", "enum", "event", "external", "fallback", "false", "for",
    "function", "if", "immutable", "import", "indexed", "interface",
    "internal", "is", "library", "mapping", "memory", "modifier", "new",
    "override", "payable", "pragma", "private", "public", "pure", "receive",
    "return", "returns", "storage", "struct", "true", "try", "unchecked",
    "using", "view", "virtual", "while",
})

_ELEMENTARY_RE = re.compile(
    r"^(u?int(\d+)?|bytes([1-9]|[12]\d|3[0-2])?|byte|bool|address|string"
    r"|u?fixed(\d+x\d+)?)$"
)

_WORD_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")
_NUMBER_RE = re.compile(r"0[xX][0-9a-fA-F_]+|\d[\d_]*(\.\d+)?([eE][+-]?\d+)?")

# Longest-match-first operator table.
_OPERATORS = (
    ">>=", "<<=",
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=",
    "%=", "&=", "|=", "^=", "<<", ">>", "**", "=>",
    "=", "+", "-", "*", "/", "%", "!", "<", ">", "&", "|", "^", "~",
)

_PUNCT = frozenset("(){}[];,.?:")


def is_elementary_type(word: str) -> bool:
    return bool(_ELEMENTARY_RE.match(word))


def classify_word(word: str) -> TokenKind:
    if word in KEYWORDS or is_elementary_type(word):
        return TokenKind.KEYWORD
    return TokenKind.IDENTIFIER


def lex(file: SourceFile) -> LexResult:
    text = file.text
    n = len(text)
    tokens: list[Token] = []
    errors: list[LexError] = []
    comments: list[tuple[int, int]] = []
    strings: list[tuple[int, int]] = []

    def span(a: int, b: int) -> Span:
        return file.span_from_offsets(a, b)

    i = 0
    bad_start = -1

    def flush_bad(end: int) -> None:
        nonlocal bad_start
        if bad_start >= 0:
            errors.append(LexError("UnexpectedCharacter", span(bad_start, end)))
            bad_start = -1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            flush_bad(i)
            i += 1
            continue
        if text.startswith("//", i):
            flush_bad(i)
            j = text.find("\n", i)
            j = n if j == -1 else j
            comments.append((i, j))
            i = j
            continue
        if text.startswith("/*", i):
            flush_bad(i)
            j = text.find("*/", i + 2)
            if j == -1:
                errors.append(LexError("UnterminatedComment", span(i, n)))
                comments.append((i, n))
                i = n
            else:
                comments.append((i, j + 2))
                i = j + 2
            continue
        if ch in "'\"":
            flush_bad(i)
            j = i + 1
            closed = False
            while j < n:
                c = text[j]
                if c == "\\" and j + 1 < n:
                    j += 2
                    continue
                if c == ch:
                    closed = True
                    j += 1
                    break
                if c == "\n":
                    break
                j += 1
            if closed:
                tokens.append(Token(TokenKind.STRING, text[i:j], span(i, j)))
                strings.append((i, j))
            else:
                errors.append(LexError("UnterminatedString", span(i, j)))
                strings.append((i, j))
            i = j
            continue
        m = _WORD_RE.match(text, i)
        if m:
            flush_bad(i)
            word = m.group(0)
            tokens.append(Token(classify_word(word), word, span(i, m.end())))
            i = m.end()
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            flush_bad(i)
            tokens.append(Token(TokenKind.NUMBER, m.group(0), span(i, m.end())))
            i = m.end()
            continue
        op = next((o for o in _OPERATORS if text.startswith(o, i)), None)
        if op:
            flush_bad(i)
            tokens.append(Token(TokenKind.OPERATOR, op, span(i, i + len(op))))
            i += len(op)
            continue
        if ch in _PUNCT:
            flush_bad(i)
            tokens.append(Token(TokenKind.PUNCT, ch, span(i, i + 1)))
            i += 1
            continue
        if bad_start < 0:
            bad_start = i
        i += 1
    flush_bad(n)
    return LexResult(tokens, errors, comments, strings)


def tokenize(file: SourceFile) -> list[Token]:
    """Token stream with comments and whitespace dropped."""
    return lex(file).tokens
