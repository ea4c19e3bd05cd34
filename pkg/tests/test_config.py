import pytest
from pydantic import ValidationError

from homcat.config import Settings


def test_budget_override_applies_to_every_bound(monkeypatch):
    monkeypatch.setenv("HOMCAT_BUDGET", "16")
    s = Settings()
    assert s.budget == 16
    assert s.search_budget == s.closures == s.group_ring_bound == s.tensor_bound == s.lattice_order_bound == 16


def test_bounds_fall_back_to_defaults(monkeypatch):
    monkeypatch.delenv("HOMCAT_BUDGET", raising=False)
    s = Settings()
    assert s.budget is None
    assert s.group_ring_bound == s.group_ring_max_size
    assert s.search_budget == s.hom_search_budget


@pytest.mark.parametrize("value", ["0", "-3", "lots"])
def test_malformed_budget_is_rejected(monkeypatch, value):
    monkeypatch.setenv("HOMCAT_BUDGET", value)
    with pytest.raises(ValidationError):
        Settings()
