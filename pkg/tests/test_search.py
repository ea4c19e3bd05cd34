import numpy as np

from homcat.utils.search import TableSearch


def additive_maps(injective=False):
    # f(a + b) = f(a) + f(b) on Z/3
    add = (np.arange(3)[:, None] + np.arange(3)[None, :]) % 3
    search = TableSearch(cells=3, domain=3, injective=injective)
    for a in range(3):
        for b in range(3):
            search.add_binary(int(add[a, b]), a, b, add)
    return search


def test_propagation_finds_every_endomorphism():
    outcome = additive_maps().solve(budget=1000)
    assert outcome.status == "complete"
    assert outcome.solutions == [(0, 0, 0), (0, 1, 2), (0, 2, 1)]


def test_injective_search_and_limit():
    assert additive_maps(injective=True).solve(budget=1000).solutions == [(0, 1, 2), (0, 2, 1)]
    assert additive_maps().solve(budget=1000, limit=1).solutions == [(0, 0, 0)]


def test_budget_truncates():
    outcome = additive_maps().solve(budget=1)
    assert outcome.truncated
