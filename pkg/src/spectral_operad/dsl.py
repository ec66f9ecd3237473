"""A small text syntax for enriched Schröder trees.

    tree  := NAME | '(' tree (',' tree)+ ';' edges ')'
    edges := 'K' | 'E' | pair (',' pair)*
    pair  := INT '-' INT

Edge endpoints are 1-based child positions; ``K`` is the complete external
graph and ``E`` the edgeless one.  Whitespace is ignored.
"""

from __future__ import annotations

import re
from itertools import combinations

from .combinatorics import Leaf, Node, Tree
from .errors import TreeSyntaxError
from .graphs import SimpleGraph

_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_.]+)|(\S))")


class _Lexer:
    def __init__(self, text: str):
        self.toks: list[tuple[str, str, int]] = []   # (kind, value, offset)
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:   # only whitespace left
                break
            if m.group(1):
                self.toks.append(("name", m.group(1), m.start(1)))
            elif m.group(2):
                self.toks.append((m.group(2), m.group(2), m.start(2)))
            pos = m.end()
        self.text = text
        self.i = 0

    def where(self, offset: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def error(self, msg: str, offset: int | None = None) -> TreeSyntaxError:
        if offset is None:
            offset = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        return TreeSyntaxError(msg, *self.where(offset))

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind: str, what: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None or tok[0] != kind:
            found = "end of input" if tok is None else repr(tok[1])
            raise self.error(f"expected {what or repr(kind)}, found {found}")
        self.i += 1
        return tok


def parse_tree(text: str) -> Tree:
    lex = _Lexer(text)
    seen: dict[str, int] = {}
    tree = _parse(lex, seen)
    if lex.peek() is not None:
        raise lex.error("unexpected text after the tree")
    return tree


def _parse(lex: _Lexer, seen: dict[str, int]) -> Tree:
    tok = lex.peek()
    if tok is not None and tok[0] == "name":
        lex.i += 1
        if tok[1] in seen:
            raise lex.error(f"leaf name {tok[1]!r} used twice", tok[2])
        seen[tok[1]] = tok[2]
        return Leaf(tok[1])
    open_tok = lex.take("(", "a leaf name or '('")
    children = [_parse(lex, seen)]
    while lex.peek() is not None and lex.peek()[0] == ",":
        lex.i += 1
        children.append(_parse(lex, seen))
    if len(children) < 2:
        raise lex.error("an internal vertex needs at least two children", open_tok[2])
    lex.take(";", "',' or ';'")
    h = _parse_edges(lex, len(children))
    lex.take(")", "')'")
    return Node(tuple(children), h)


def _parse_edges(lex: _Lexer, k: int) -> SimpleGraph:
    tok = lex.peek()
    if tok is not None and tok[0] == "name" and tok[1] in ("K", "E"):
        lex.i += 1
        return SimpleGraph(k, combinations(range(k), 2) if tok[1] == "K" else ())
    edges: set[tuple[int, int]] = set()
    while True:
        i = _index(lex, k)
        lex.take("-", "'-'")
        j_tok = lex.peek()
        j = _index(lex, k)
        if i == j:
            raise lex.error(f"loop at child {i + 1}", j_tok[2])
        e = (min(i, j), max(i, j))
        if e in edges:
            raise lex.error(f"duplicate edge {i + 1}-{j + 1}", j_tok[2])
        edges.add(e)
        if lex.peek() is None or lex.peek()[0] != ",":
            return SimpleGraph(k, edges)
        lex.i += 1


def _index(lex: _Lexer, k: int) -> int:
    tok = lex.take("name", "a child index")
    if not tok[1].isdigit():
        raise lex.error(f"expected a child index, found {tok[1]!r}", tok[2])
    v = int(tok[1])
    if not 1 <= v <= k:
        raise lex.error(f"child index {v} out of range 1..{k}", tok[2])
    return v - 1


def format_tree(tree: Tree) -> str:
    if isinstance(tree, Leaf):
        return tree.label
    h = tree.graph
    if h is None:
        raise ValueError("only enriched trees can be printed")
    k = len(tree.children)
    if len(h.edges) == k * (k - 1) // 2:
        edges = "K"
    elif not h.edges:
        edges = "E"
    else:
        edges = ",".join(f"{i + 1}-{j + 1}" for i, j in h.sorted_edges())
    return "(" + ",".join(format_tree(c) for c in tree.children) + ";" + edges + ")"
