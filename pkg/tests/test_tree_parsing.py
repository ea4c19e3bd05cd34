import numpy as np
import pytest

from homcat.errors import StructuralError, TreeParseError
from homcat.services.free_homgroup import UNIT, Color, Leaf, Node, random_tree
from homcat.utils.parsing import format_tree, parse_tree


@pytest.mark.parametrize("text", [
    "1",
    "g@0",
    "g'@-3",
    "(g@3 g'@4)",
    "((g@0 (g'@2 g@5)) ((g'@5 g@2) g@1))",
    "((x1@0 (x2'@2 x3@5)) ((x3'@5 x2@2) x4@1))",
])
def test_format_inverts_parse(text):
    assert format_tree(parse_tree(text)) == text


def test_leaf_fields():
    assert parse_tree("x_2'@-7") == Leaf("x_2", Color.WHITE, -7)
    assert parse_tree("g@12") == Leaf("g", Color.BLACK, 12)


def test_random_trees_survive_printing():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        tree = random_tree(rng, int(rng.integers(1, 9)), 3, ["g", "h", "k1"])
        assert parse_tree(format_tree(tree)) == tree


@pytest.mark.parametrize("text,expected", [
    ("(1 g@2)", Leaf("g", Color.BLACK, 3)),
    ("(g@0 1)", Leaf("g", Color.BLACK, 1)),
    ("(1 1)", UNIT),
    ("((1 g@0) h'@1)", Node(Leaf("g", Color.BLACK, 1), Leaf("h", Color.WHITE, 1))),
])
def test_unit_is_absorbed_while_parsing(text, expected):
    assert parse_tree(text) == expected


@pytest.mark.parametrize("text,column", [
    ("(g@0 g@1", 9),
    ("(g@0  g@1)", 6),
    ("g@0 x", 4),
    ("", 1),
    ("(g@0,g@1)", 5),
    ("g@", 1),
])
def test_parse_errors_carry_position(text, column):
    with pytest.raises(TreeParseError) as info:
        parse_tree(text)
    assert info.value.line == 1
    assert info.value.column == column
    assert f"column {column}" in str(info.value)


def test_parse_error_is_structural():
    with pytest.raises(StructuralError):
        parse_tree("(g@0)")
    assert TreeParseError("x", 1, 1).exit_code == 2
