"""Text form of weighted bicolored trees.

    tree   := "1" | leaf | "(" tree " " tree ")"
    leaf   := label ["'"] "@" weight
    label  := [a-zA-Z][a-zA-Z0-9_]*
    weight := ["-"] digits

The apostrophe marks a white (inverse) leaf. Parsing grafts as it goes, so a
"1" inside a product is absorbed into its sibling.
"""
from __future__ import annotations
import re

from ..errors import TreeParseError
from ..services.free_homgroup import UNIT, Color, Leaf, SLTree, graft

_LEAF = re.compile(r"([a-zA-Z][a-zA-Z0-9_]*)(')?@(-?[0-9]+)")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str) -> TreeParseError:
        line = self.text.count("\n", 0, self.pos) + 1
        column = self.pos - (self.text.rfind("\n", 0, self.pos) + 1) + 1
        return TreeParseError(message, line, column)

    def expect(self, char: str) -> None:
        if self.pos >= len(self.text):
            raise self.fail(f"expected {char!r}, found end of input")
        if self.text[self.pos] != char:
            raise self.fail(f"expected {char!r}, found {self.text[self.pos]!r}")
        self.pos += 1

    def tree(self) -> SLTree:
        if self.pos >= len(self.text):
            raise self.fail("unexpected end of input")
        ch = self.text[self.pos]
        if ch == "(":
            self.pos += 1
            left = self.tree()
            self.expect(" ")
            right = self.tree()
            self.expect(")")
            return graft(left, right)
        if ch == "1":
            self.pos += 1
            return UNIT
        match = _LEAF.match(self.text, self.pos)
        if not match:
            raise self.fail(f"unexpected character {ch!r}")
        self.pos = match.end()
        label, mark, weight = match.groups()
        return Leaf(label, Color.WHITE if mark else Color.BLACK, int(weight))


def parse_tree(text: str) -> SLTree:
    parser = _Parser(text)
    tree = parser.tree()
    if parser.pos != len(text):
        raise parser.fail(f"trailing input {text[parser.pos:parser.pos + 10]!r}")
    return tree


def format_tree(tree: SLTree) -> str:
    return str(tree)
