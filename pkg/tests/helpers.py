"""Shared test utilities: structural AST comparison, deterministic snippet
corpus, random straight-line function generation, and revision builders."""

from __future__ import annotations

import random
from dataclasses import fields, is_dataclass
from pathlib import Path

from emitlint.evolution import FilePair, Revision
from emitlint.nodes import EmitStmt, walk_statements
from emitlint.parser import parse_file
from emitlint.source import SourceFile
from emitlint.symbols import build_symbols

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_file(*parts: str) -> SourceFile:
    return SourceFile.load(FIXTURES.joinpath(*parts))


def src(text: str, path: str = "test.sol") -> SourceFile:
    return SourceFile.from_text(path, text)


def parsed(text: str, path: str = "test.sol"):
    """(file, unit, tree) for inline source text."""
    file = src(text, path)
    unit = parse_file(file)
    tree = build_symbols(unit)
    return file, unit, tree


def emits_of(fn) -> list[EmitStmt]:
    if fn.body is None:
        return []
    return [s for s in walk_statements(fn.body) if isinstance(s, EmitStmt)]


def structural_eq(a, b) -> bool:
    """Dataclass-tree equality ignoring span fields."""
    if type(a) is not type(b):
        return False
    if is_dataclass(a):
        for f in fields(a):
            if f.name == "span":
                continue
            if not structural_eq(getattr(a, f.name), getattr(b, f.name)):
                return False
        return True
    if isinstance(a, (list, tuple)):
        return len(a) == len(b) and all(
            structural_eq(x, y) for x, y in zip(a, b))
    return a == b


def make_revision(rev_id: str, *pairs, message: str | None = None) -> Revision:
    """pairs: (path, before_text_or_None, after_text_or_None)"""
    file_pairs = []
    for path, before, after in pairs:
        file_pairs.append(FilePair(
            path,
            src(before, path) if before is not None else None,
            src(after, path) if after is not None else None,
        ))
    return Revision(rev_id, message, tuple(file_pairs))


# ------------------------------------------------------------ snippet corpus

_ARG_CHOICES = (
    "",
    "a",
    "a, b",
    "msg.sender, a",
    "a + b, 1",
    "balances[a], b",
    '"tag", a',
    "a, true, 0x2A",
    "wrap(a), b",
)

_FILLERS = (
    "uint local = a;",
    "b = a + 1;",
    "require(a > 0);",
    "// bookkeeping note",
    "uint other = b * 2;",
    "",
)


def _emit_block(event: str, args: str, wrapper: int, indent: str) -> list[str]:
    stmt = f"emit {event}({args});"
    if wrapper == 0:
        return [indent + stmt]
    if wrapper == 1:
        return [indent + "if (a > b) {",
                indent + "    " + stmt,
                indent + "}"]
    if wrapper == 2:
        return [indent + "if (a > b) {",
                indent + "    " + stmt,
                indent + "} else {",
                indent + f"    emit {event}({args or '0'});",
                indent + "}"]
    if wrapper == 3:
        return [indent + "for (uint i = 0; i < a; i++) {",
                indent + "    " + stmt,
                indent + "}"]
    if wrapper == 4:
        return [indent + "while (a > 0) {",
                indent + "    " + stmt,
                indent + "    a = a - 1;",
                indent + "}"]
    return [indent + "{",
            indent + "    " + stmt,
            indent + "}"]


def make_snippet(index: int) -> str:
    """Deterministic small contract; the index steers the shapes used. Every
    snippet parses cleanly with emits outside comments and strings."""
    n_functions = 1 + index % 3
    lines = [
        "pragma solidity ^0.8.0;",
        "",
        f"contract Snippet{index} {{",
        "    mapping(address => uint) public balances;",
        "    uint public total;",
        "",
        "    event Moved(uint a, uint b);",
        "    event Noted(string tag, uint a);",
        "    event Checked(address who, uint a);",
        "    event Plain();",
        "",
    ]
    for fi in range(n_functions):
        args = _ARG_CHOICES[(index + 3 * fi) % len(_ARG_CHOICES)]
        wrapper = (index + fi) % 6
        event = ("Moved", "Noted", "Checked", "Plain")[(index + fi) % 4]
        if event == "Noted" and '"' not in args:
            args = '"step", ' + (args or "0")
        if event == "Plain":
            args = ""
        lines.append(f"    function f{fi}(address a, uint b) public {{")
        filler = _FILLERS[(index + fi) % len(_FILLERS)]
        if filler:
            lines.append("        " + filler)
        lines.extend(_emit_block(event, args, wrapper, "        "))
        if (index + fi) % 2 == 0:
            lines.append("        total = b;")
        lines.append("    }")
        lines.append("")
    lines.append("}")
    return "\n".join(lines) + "\n"


def snippet_corpus(count: int = 50) -> list[SourceFile]:
    return [src(make_snippet(i), f"snippet_{i:02}.sol") for i in range(count)]


# ------------------------------------------- straight-line function generator

def gen_straight_line_contract(rng: random.Random, index: int):
    """Random straight-line function over storage and memory variables with an
    emit probe after every statement. Returns (source_text, input_names)."""
    n_state = rng.randint(1, 2)
    n_params = rng.randint(1, 2)
    n_locals = rng.randint(0, min(2, 5 - n_state - n_params))
    state = [f"s{i}" for i in range(n_state)]
    params = [f"m{i}" for i in range(n_params)]
    local_pool = [f"v{i}" for i in range(n_locals)]
    literals = ["3", "7", "11", "0x2A"]

    declared = state + params
    body: list[str] = []
    n_stmts = rng.randint(2, 5)
    pending_locals = list(local_pool)
    for _ in range(n_stmts):
        if pending_locals and rng.random() < 0.4:
            name = pending_locals.pop(0)
            rhs = rng.choice(declared + literals)
            body.append(f"uint {name} = {rhs};")
            declared.append(name)
        else:
            target = rng.choice(declared)
            rhs = rng.choice(declared + literals)
            body.append(f"{target} = {rhs};")
        body.append(f"emit P({declared[0]});")

    lines = [f"contract Gen{index} {{"]
    for name in state:
        lines.append(f"    uint {name};")
    lines.append("    event P(uint v);")
    lines.append(f"    function f({', '.join('uint ' + p for p in params)}) public {{")
    for stmt in body:
        lines.append("        " + stmt)
    lines.append("    }")
    lines.append("}")
    return "\n".join(lines) + "\n", state + params


def distinct_inputs(names: list[str], salt: int) -> dict[str, int]:
    """Pairwise-distinct values, also distinct from the generator literals."""
    base = 1000 + 97 * salt
    return {name: base + 13 * i for i, name in enumerate(names)}


# --------------------------------------------------- shared revision fixtures

_CTX_HEADER = [
    "pragma solidity ^0.8.0;",
    "",
    "contract Shop {",
    "    uint public stock;",
    "    uint public price;",
    "",
    "    event Priced(uint value);",
    "    event Restocked(uint count, uint level);",
    "    event Sold(address to, uint amount);",
    "    event Opened();",
    "    event Closed();",
    "",
    "    function act(address to, uint amount, uint value) public {",
]
_CTX_FOOTER = ["    }", "}"]


def shop(body_lines) -> str:
    """Contract text with the given statement lines inside one function."""
    inner = ["        " + line if line else "" for line in body_lines]
    return "\n".join(_CTX_HEADER + inner + _CTX_FOOTER) + "\n"


def shop_revision(before_body, after_body, rev_id: str = "r") -> Revision:
    return make_revision(rev_id, ("shop.sol", shop(before_body),
                                  shop(after_body)))
