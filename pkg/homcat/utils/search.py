from __future__ import annotations
from dataclasses import dataclass, field
import logging

import numpy as np

logger = logging.getLogger(__name__)


@dataclass
class SearchOutcome:
    solutions: list[tuple[int, ...]] = field(default_factory=list)
    status: str = "complete"  # or "truncated"
    nodes: int = 0

    @property
    def truncated(self) -> bool:
        return self.status == "truncated"


class TableSearch:
    """Backtracking search for total maps cell -> [0, domain) under table constraints.

    A binary constraint says value[out] = table[value[a], value[b]]; a unary one
    says value[out] = table[value[a]]. Constraints fire as soon as their inputs
    are assigned, so forced values propagate before the next branching step.
    """

    def __init__(self, cells: int, domain: int, injective: bool = False):
        self.cells = cells
        self.domain = domain
        self.injective = injective
        self._constraints: list[tuple[int, int, int | None, list]] = []
        self._watch: list[list[int]] = [[] for _ in range(cells)]

    def add_binary(self, out: int, a: int, b: int, table: np.ndarray | list) -> None:
        rows = table.tolist() if isinstance(table, np.ndarray) else table
        idx = len(self._constraints)
        self._constraints.append((out, a, b, rows))
        self._watch[a].append(idx)
        if b != a:
            self._watch[b].append(idx)

    def add_unary(self, out: int, a: int, table: np.ndarray | list) -> None:
        row = table.tolist() if isinstance(table, np.ndarray) else table
        idx = len(self._constraints)
        self._constraints.append((out, a, None, row))
        self._watch[a].append(idx)

    def _assign(self, values: list[int], used: list[bool], cell: int, value: int, trail: list[int]) -> bool:
        stack = [(cell, value)]
        while stack:
            c, v = stack.pop()
            current = values[c]
            if current >= 0:
                if current != v:
                    return False
                continue
            if self.injective and used[v]:
                return False
            values[c] = v
            used[v] = True
            trail.append(c)
            for ci in self._watch[c]:
                out, a, b, table = self._constraints[ci]
                if b is None:
                    stack.append((out, table[values[a]]))
                elif values[a] >= 0 and values[b] >= 0:
                    stack.append((out, table[values[a]][values[b]]))
        return True

    @staticmethod
    def _undo(values: list[int], used: list[bool], trail: list[int], mark: int) -> None:
        while len(trail) > mark:
            c = trail.pop()
            used[values[c]] = False
            values[c] = -1

    def solve(self, budget: int, limit: int | None = None) -> SearchOutcome:
        outcome = SearchOutcome()
        if self.injective and self.cells > self.domain:
            return outcome
        values = [-1] * self.cells
        used = [False] * max(self.domain, 1)
        trail: list[int] = []
        if self.cells == 0:
            outcome.solutions.append(())
            return outcome

        def dfs(start: int) -> bool:
            cell = start
            while cell < self.cells and values[cell] >= 0:
                cell += 1
            if cell == self.cells:
                outcome.solutions.append(tuple(values))
                return limit is not None and len(outcome.solutions) >= limit
            for v in range(self.domain):
                outcome.nodes += 1
                if outcome.nodes > budget:
                    outcome.status = "truncated"
                    return True
                mark = len(trail)
                if self._assign(values, used, cell, v, trail):
                    if dfs(cell + 1):
                        return True
                self._undo(values, used, trail, mark)
            return False

        dfs(0)
        if outcome.truncated:
            logger.warning(f"table search truncated after {outcome.nodes} nodes")
        return outcome
