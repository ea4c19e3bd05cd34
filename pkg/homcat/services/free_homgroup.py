"""Free regular Hom-group on weighted bicolored binary trees.

A tree is Unit, a Leaf(label, color, weight) or a Node(left, right). Black
leaves are generators, white leaves their inverses, and a leaf of weight w
stands for α^w of the generator. Grafting is the product; Unit is absorbed
eagerly so a Node never has a Unit child.

Each leaf has a level, weight + depth. Rebracketing, unit absorption and
reduction all keep the level of every surviving leaf, which is why two
adjacent leaves cancel exactly when they carry the same label, opposite
colors and equal levels.
"""
from __future__ import annotations
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import repeat
from typing import Iterator, Optional, Sequence, Union
import logging

import numpy as np
from sympy.combinatorics.free_groups import free_group

from ..config import settings
from ..errors import InvariantViolation, PreconditionError
from ..models.schemas import (ConfluenceReport, FreeAxiomReport, PropertyVerdict, ReduceResponse,
                              ReductionStepModel)
from .homgroup import FiniteHomGroup, alpha_power

logger = logging.getLogger(__name__)


class Color(str, Enum):
    BLACK = "black"
    WHITE = "white"

    @property
    def flipped(self) -> "Color":
        return Color.WHITE if self is Color.BLACK else Color.BLACK


class Mode(str, Enum):
    GENERAL = "general"
    STRICT = "strict"


@dataclass(frozen=True)
class Unit:
    def __str__(self) -> str:
        return "1"


UNIT = Unit()


@dataclass(frozen=True)
class Leaf:
    label: str
    color: Color
    weight: int

    def __str__(self) -> str:
        mark = "'" if self.color is Color.WHITE else ""
        return f"{self.label}{mark}@{self.weight}"


@dataclass(frozen=True)
class Node:
    left: "SLTree"
    right: "SLTree"

    def __str__(self) -> str:
        return f"({self.left} {self.right})"


SLTree = Union[Unit, Leaf, Node]


def leaves(tree: SLTree) -> list[tuple[str, Leaf]]:
    """Leaves in planar order with their root paths ('L'/'R' strings)."""
    out: list[tuple[str, Leaf]] = []
    stack: list[tuple[str, SLTree]] = [("", tree)]
    while stack:
        path, t = stack.pop()
        if isinstance(t, Node):
            stack.append((path + "R", t.right))
            stack.append((path + "L", t.left))
        elif isinstance(t, Leaf):
            out.append((path, t))
    return out


def leaf_count(tree: SLTree) -> int:
    return len(leaves(tree))


def leaf_levels(tree: SLTree) -> list[tuple[str, Color, int]]:
    return [(leaf.label, leaf.color, leaf.weight + len(path)) for path, leaf in leaves(tree)]


# ---------------------------------------------------------------- grafting and α

def alpha_shift(tree: SLTree, k: int) -> SLTree:
    if k == 0 or isinstance(tree, Unit):
        return tree
    if isinstance(tree, Leaf):
        return Leaf(tree.label, tree.color, tree.weight + k)
    return Node(alpha_shift(tree.left, k), alpha_shift(tree.right, k))


def graft(left: SLTree, right: SLTree) -> SLTree:
    if isinstance(left, Unit):
        return alpha_shift(right, 1)
    if isinstance(right, Unit):
        return alpha_shift(left, 1)
    return Node(left, right)


def mirror_inverse(tree: SLTree) -> SLTree:
    if not isinstance(tree, Node):
        raise PreconditionError("mirror inverse is defined on trees with at least two leaves")
    return _mirror(tree)


def _mirror(tree: SLTree) -> SLTree:
    if isinstance(tree, Leaf):
        return Leaf(tree.label, tree.color.flipped, tree.weight)
    if isinstance(tree, Node):
        return Node(_mirror(tree.right), _mirror(tree.left))
    return tree


def hom_inverse(tree: SLTree) -> SLTree:
    if isinstance(tree, Node):
        return mirror_inverse(tree)
    return _mirror(tree)


# ---------------------------------------------------------------- redexes

SHAPE_RULES = {(1, 0): "LDL", (0, 1): "RDL", (1, 1): "DL1", (2, 1): "DL2", (1, 2): "DL3", (2, 2): "DL4"}


@dataclass(frozen=True)
class Redex:
    position: int
    rule: str
    weights: tuple[int, int]
    p: int
    q: int

    @property
    def literal(self) -> bool:
        return not self.rule.startswith("GEN")


def _rule_for(prefix: str, p: int, q: int) -> str:
    if (p, q) == (0, 0):
        return "RAL" if prefix.startswith("R") else "LAL"
    return SHAPE_RULES.get((p, q), f"GEN({p},{q})")


def _spine_depths(pa: str, pb: str) -> tuple[str, int, int]:
    # adjacent leaves: pa = prefix+'L'+'R'*p, pb = prefix+'R'+'L'*q
    cut = 0
    while pa[cut] == pb[cut]:
        cut += 1
    return pa[:cut], len(pa) - cut - 1, len(pb) - cut - 1


def find_redexes(tree: SLTree, mode: Mode | str = Mode.GENERAL) -> list[Redex]:
    mode = Mode(mode)
    found: list[Redex] = []
    seq = leaves(tree)
    for i in range(len(seq) - 1):
        (pa, a), (pb, b) = seq[i], seq[i + 1]
        if a.label != b.label or a.color == b.color:
            continue
        prefix, p, q = _spine_depths(pa, pb)
        if a.weight + p != b.weight + q:
            continue
        redex = Redex(i, _rule_for(prefix, p, q), (a.weight, b.weight), p, q)
        if mode is Mode.STRICT and not redex.literal:
            continue
        found.append(redex)
    return found


def _replace_pair(tree: SLTree, position: int, counter: list[int]) -> SLTree:
    if isinstance(tree, Leaf):
        i = counter[0]
        counter[0] += 1
        return UNIT if i in (position, position + 1) else tree
    if isinstance(tree, Node):
        left = _replace_pair(tree.left, position, counter)
        right = _replace_pair(tree.right, position, counter)
        if left is tree.left and right is tree.right:
            return tree
        return graft(left, right)
    return tree


def reduce_step(tree: SLTree, redex: Redex) -> SLTree:
    if redex not in find_redexes(tree, Mode.GENERAL):
        raise PreconditionError(f"stale redex {redex.rule}@{redex.position} for {tree}")
    return _replace_pair(tree, redex.position, [0])


@dataclass(frozen=True)
class TraceStep:
    before: SLTree
    redex: Redex
    after: SLTree

    def line(self) -> str:
        return f"{self.redex.rule}@{self.redex.position}: {self.before} → {self.after}"


@dataclass
class ReductionTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def lines(self) -> list[str]:
        return [s.line() for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


def _chooser(strategy: str):
    if strategy == "leftmost":
        return lambda rs: rs[0]
    if strategy == "rightmost":
        return lambda rs: rs[-1]
    if strategy.startswith("random"):
        _, _, seed = strategy.partition(":")
        if seed and not seed.lstrip("-").isdigit():
            raise PreconditionError(f"random strategy needs an integer seed, got {seed!r}")
        rng = np.random.default_rng(abs(int(seed)) if seed else settings.seed)
        return lambda rs: rs[int(rng.integers(len(rs)))]
    raise PreconditionError(f"unknown strategy {strategy!r}; use leftmost, rightmost or random:SEED")


def normal_form(tree: SLTree, strategy: str = "leftmost",
                mode: Mode | str = Mode.GENERAL) -> tuple[SLTree, ReductionTrace]:
    pick = _chooser(strategy)
    trace = ReductionTrace()
    limit = leaf_count(tree) // 2
    current = tree
    while True:
        redexes = find_redexes(current, mode)
        if not redexes:
            return current, trace
        if len(trace) >= limit:
            raise InvariantViolation(f"reduction of {tree} exceeded {limit} steps")
        redex = pick(redexes)
        after = _replace_pair(current, redex.position, [0])
        trace.steps.append(TraceStep(current, redex, after))
        logger.debug(trace.steps[-1].line())
        current = after


def canonical_form(tree: SLTree) -> SLTree:
    """Left comb carrying the same (label, color, level) sequence."""
    levels = leaf_levels(tree)
    n = len(levels)
    if n == 0:
        return UNIT
    if n == 1:
        label, color, level = levels[0]
        return Leaf(label, color, level)
    def depth(k: int) -> int:
        return n - 1 if k == 0 else n - k

    out: SLTree = Leaf(levels[0][0], levels[0][1], levels[0][2] - depth(0))
    for k in range(1, n):
        label, color, level = levels[k]
        out = Node(out, Leaf(label, color, level - depth(k)))
    return out


def fg_multiply(left: SLTree, right: SLTree, strategy: str = "leftmost") -> SLTree:
    reduced, _ = normal_form(graft(left, right), strategy)
    return canonical_form(reduced)


def reduce_request(tree: SLTree, strict: bool = False, strategy: str = "leftmost") -> ReduceResponse:
    reduced, trace = normal_form(tree, strategy, Mode.STRICT if strict else Mode.GENERAL)
    steps = [ReductionStepModel(rule=s.redex.rule, position=s.redex.position,
                                before=str(s.before), after=str(s.after)) for s in trace.steps]
    return ReduceResponse(normal_form=str(reduced), canonical=str(canonical_form(reduced)), steps=steps)


# ---------------------------------------------------------------- oracles

def _symbol(label: str, level: int) -> str:
    return f"{label}__{'m' if level < 0 else ''}{abs(level)}"


def free_word(tree: SLTree) -> list[tuple[str, int, int]]:
    """Freely reduced word over generators (label, level), as (label, level, ±1) letters."""
    levels = leaf_levels(tree)
    if not levels:
        return []
    keys = sorted({(label, level) for label, _, level in levels})
    names = {_symbol(*key): key for key in keys}
    F, *gens = free_group(",".join(names))
    gen_of = dict(zip(names.values(), gens))
    word = F.identity
    for label, color, level in levels:
        g = gen_of[(label, level)]
        word = word * (g if color is Color.BLACK else g ** -1)
    letters: list[tuple[str, int, int]] = []
    for sym, exp in word.array_form:
        label, level = names[str(sym)]
        letters.extend([(label, level, 1 if exp > 0 else -1)] * abs(exp))
    return letters


def tree_letters(tree: SLTree) -> list[tuple[str, int, int]]:
    return [(label, level, 1 if color is Color.BLACK else -1) for label, color, level in leaf_levels(tree)]


def evaluate(tree: SLTree, G: FiniteHomGroup, assignment: dict[str, int]) -> int:
    """Value of a tree in a finite regular Hom-group under label -> element."""
    if isinstance(tree, Unit):
        return G.e
    if isinstance(tree, Leaf):
        if tree.label not in assignment:
            raise PreconditionError(f"no value assigned to {tree.label!r}")
        x = assignment[tree.label]
        base = x if tree.color is Color.BLACK else int(G.inv[x])
        return alpha_power(G, base, tree.weight)
    return int(G.mul[evaluate(tree.left, G, assignment), evaluate(tree.right, G, assignment)])


# ---------------------------------------------------------------- sampling

@dataclass
class SamplerConfig:
    trees: int = field(default_factory=lambda: settings.sampler_trees)
    max_leaves: int = field(default_factory=lambda: settings.sampler_max_leaves)
    weight_range: int = field(default_factory=lambda: settings.sampler_weight_range)
    labels: Sequence[str] = field(default_factory=lambda: list(settings.sampler_labels))
    seed: int = field(default_factory=lambda: settings.seed)
    triples: int = field(default_factory=lambda: settings.sampler_triples)
    random_strategies: int = field(default_factory=lambda: settings.sampler_random_strategies)


def random_tree(rng: np.random.Generator, leaf_total: int, weights: int, labels: Sequence[str]) -> SLTree:
    if leaf_total <= 0:
        return UNIT
    if leaf_total == 1:
        color = Color.BLACK if rng.integers(2) == 0 else Color.WHITE
        return Leaf(str(labels[int(rng.integers(len(labels)))]), color, int(rng.integers(-weights, weights + 1)))
    split = int(rng.integers(1, leaf_total))
    return Node(random_tree(rng, split, weights, labels), random_tree(rng, leaf_total - split, weights, labels))


def _sample(rng: np.random.Generator, config: SamplerConfig) -> SLTree:
    return random_tree(rng, int(rng.integers(0, config.max_leaves + 1)), config.weight_range, config.labels)


@lru_cache(maxsize=1 << 18)
def _reduced(tree: SLTree) -> SLTree:
    return canonical_form(normal_form(tree)[0])


def check_free_axioms(config: Optional[SamplerConfig] = None) -> FreeAxiomReport:
    config = config or SamplerConfig()
    rng = np.random.default_rng(config.seed)
    names = ["alpha-multiplicative", "hom-associativity", "unit-law", "inverse-law",
             "antimorphism", "strategy-independence", "word-oracle"]
    checked = {name: 0 for name in names}
    failed = {name: 0 for name in names}
    witness: dict[str, list[str]] = {}
    divergences = 0
    divergence_witness: Optional[list[str]] = None

    def record(name: str, ok: bool, *trees: SLTree) -> None:
        checked[name] += 1
        if not ok:
            failed[name] += 1
            witness.setdefault(name, [str(t) for t in trees])

    for n in range(config.trees):
        raw = [_sample(rng, config) for _ in range(3)]
        if n < config.triples:
            a, b, c = (_reduced(t) for t in raw)
            record("alpha-multiplicative",
                   canonical_form(alpha_shift(fg_multiply(a, b), 1)) == fg_multiply(alpha_shift(a, 1), alpha_shift(b, 1)),
                   a, b)
            record("hom-associativity",
                   fg_multiply(alpha_shift(a, 1), fg_multiply(b, c)) == fg_multiply(fg_multiply(a, b), alpha_shift(c, 1)),
                   a, b, c)
            shifted = canonical_form(alpha_shift(a, 1))
            record("unit-law", fg_multiply(UNIT, a) == shifted and fg_multiply(a, UNIT) == shifted, a)
            inv = hom_inverse(a)
            record("inverse-law",
                   normal_form(graft(a, inv))[0] == UNIT and normal_form(graft(inv, a))[0] == UNIT, a)
            record("antimorphism",
                   hom_inverse(graft(raw[0], raw[1])) == graft(hom_inverse(raw[1]), hom_inverse(raw[0])),
                   raw[0], raw[1])
        first = _reduced(raw[0])
        strategies = ["rightmost"] + [f"random:{config.seed + n * config.random_strategies + k}"
                                      for k in range(config.random_strategies)]
        forms = {first} | {canonical_form(normal_form(raw[0], s)[0]) for s in strategies}
        record("strategy-independence", len(forms) == 1, raw[0])
        record("word-oracle", free_word(raw[0]) == tree_letters(first), raw[0])

        strict = canonical_form(normal_form(raw[0], mode=Mode.STRICT)[0])
        if strict != first:
            divergences += 1
            if divergence_witness is None:
                divergence_witness = [str(raw[0]), str(strict)]
                logger.warning(f"strict and general normal forms differ on {raw[0]}")

    properties = [PropertyVerdict(name=name, checked=checked[name], failures=failed[name],
                                  witness=witness.get(name)) for name in names]
    report = FreeAxiomReport(samples=config.trees, seed=config.seed, properties=properties,
                             strict_divergences=divergences, divergence_witness=divergence_witness)
    logger.info(f"free axioms on {config.trees} samples: passed={report.passed}, strict divergences={divergences}")
    return report


# ---------------------------------------------------------------- local confluence

def _shapes(n: int) -> list[object]:
    if n == 1:
        return [None]
    out: list[object] = []
    for k in range(1, n):
        for left in _shapes(k):
            for right in _shapes(n - k):
                out.append((left, right))
    return out


def _fill(shape: object, specs: Iterator[Leaf]) -> SLTree:
    if shape is None:
        return next(specs)
    left, right = shape
    return Node(_fill(left, specs), _fill(right, specs))


def _leaf_specs(weights: Sequence[int], labels: Sequence[str]) -> list[Leaf]:
    return [Leaf(label, color, w) for label in labels for color in Color for w in weights]


def _multi_redex_codes(shape: object, specs: list[Leaf]) -> tuple[int, np.ndarray]:
    """All leaf assignments for a shape, and the rows carrying at least two redexes."""
    skeleton = _fill(shape, repeat(specs[0]))
    paths = [path for path, _ in leaves(skeleton)]
    n = len(paths)
    codes = np.indices((len(specs),) * n).reshape(n, -1).T
    labels = np.unique([s.label for s in specs], return_inverse=True)[1][codes]
    colors = np.array([s.color is Color.BLACK for s in specs])[codes]
    weights = np.array([s.weight for s in specs])[codes]
    count = np.zeros(len(codes), dtype=int)
    for i in range(n - 1):
        _, p, q = _spine_depths(paths[i], paths[i + 1])
        count += ((labels[:, i] == labels[:, i + 1]) & (colors[:, i] != colors[:, i + 1])
                  & (weights[:, i] + p == weights[:, i + 1] + q))
    return len(codes), codes[count >= 2]


def local_confluence_check(max_leaves: int = 5, weights: Sequence[int] = range(-2, 3),
                           labels: Sequence[str] = ("g",)) -> ConfluenceReport:
    """Joinability of every pair of one-step reducts, over all trees up to `max_leaves` leaves.

    Trees with fewer than two redexes have no critical pair; they are counted but never built.
    """
    specs = _leaf_specs(weights, labels)
    trees = pairs = failures = 0
    witness: Optional[list[str]] = None
    for size in range(2, max_leaves + 1):
        for shape in _shapes(size):
            total, candidates = _multi_redex_codes(shape, specs)
            trees += total
            for row in candidates:
                tree = _fill(shape, (specs[k] for k in row))
                redexes = find_redexes(tree)
                for i in range(len(redexes)):
                    for j in range(i + 1, len(redexes)):
                        pairs += 1
                        left = _replace_pair(tree, redexes[i].position, [0])
                        right = _replace_pair(tree, redexes[j].position, [0])
                        if _reduced(left) != _reduced(right):
                            failures += 1
                            witness = witness or [str(tree), str(left), str(right)]
    logger.info(f"local confluence: {trees} trees, {pairs} critical pairs, {failures} failures")
    return ConfluenceReport(trees=trees, critical_pairs=pairs, failures=failures, witness=witness)
