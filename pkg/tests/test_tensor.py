import pytest

from homcat.errors import PreconditionError
from homcat.services import catalog
from homcat.services.tensor import (enumerate_bilinear_maps, is_hom_bilinear, symmetry_check, tensor_oracle,
                                    tensor_abelianized, universal_property_check)


def targets(*names):
    return [catalog.group(n) for n in names]


def test_oracle_for_coprime_cyclic_groups_is_trivial():
    cand = tensor_oracle(catalog.group("z2"), catalog.group("z3"))
    assert cand.order == 1
    assert cand.factors == []
    verdicts = universal_property_check(cand, targets("z2", "z3", "z6"))
    assert [v.status for v in verdicts] == ["satisfied"] * 3


def test_product_construction_fails_bilinearity():
    cand = tensor_abelianized(catalog.group("z2"), catalog.group("z3"))
    assert cand.order == 6
    assert cand.tag == "paper-construction"
    verdicts = universal_property_check(cand, targets("z2"))
    assert verdicts[0].status == "violated"
    assert verdicts[0].witness["identity"] == "left-additive"
    assert verdicts[0].witness["tuple"] == [0, 0, 1]


@pytest.mark.parametrize("left,right,order,factors", [
    ("z2", "z2", 2, [2]),
    ("z3", "z3", 3, [3]),
    ("z2", "z6", 2, [2]),
    ("z6", "z6", 6, [6]),
])
def test_oracle_orders(left, right, order, factors):
    cand = tensor_oracle(catalog.group(left), catalog.group(right))
    assert cand.order == order
    assert cand.factors == factors


def test_oracle_satisfies_universal_property():
    cand = tensor_oracle(catalog.group("z2"), catalog.group("z2"))
    verdicts = universal_property_check(cand, targets("z2", "z4"))
    assert all(v.status == "satisfied" for v in verdicts)


@pytest.mark.parametrize("left,right", [("z2", "z3"), ("z2", "z6"), ("z3", "z6")])
def test_symmetry(left, right):
    report = symmetry_check(catalog.group(left), catalog.group(right))
    assert report.passed, report.failures


def test_bilinear_maps():
    Z2 = catalog.group("z2")
    report = is_hom_bilinear(Z2, Z2, Z2, [[0, 0], [0, 1]])
    assert report.bilinear
    assert all(v.status == "pass" for v in report.lemmas)
    broken = is_hom_bilinear(Z2, Z2, Z2, [[0, 1], [1, 0]])
    assert not broken.bilinear
    maps, status = enumerate_bilinear_maps(Z2, Z2, Z2)
    assert status == "complete"
    assert len(maps) == 2


def test_tensor_needs_regular_groups():
    with pytest.raises(PreconditionError):
        tensor_oracle(catalog.group("z4_2x"), catalog.group("z2"))
