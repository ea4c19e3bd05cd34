import pytest

from homcat.errors import BudgetExceeded, PreconditionError, StructuralError
from homcat.services.catalog import cyclic_table, s3_conjugation, s3_table
from homcat.services.group_ring import TwistedGroupRing, twisted_group_ring
from homcat.services.homring import check_hom_ring


@pytest.fixture
def f2c3():
    return TwistedGroupRing(cyclic_table(3), [0, 2, 1], 2, name="F2C3")


def test_element_operations(f2c3):
    e0, e1, e2 = (f2c3.basis(g) for g in range(3))
    assert f2c3.hat_mul(e1, e1) == e1
    assert f2c3.hat_add(e1, e2) == f2c3.element({1: 1, 2: 1})
    assert f2c3.plus(e1, e1) == f2c3.element({})
    assert f2c3.alpha(e0) == e0
    assert str(f2c3.element({0: 1, 2: 1})) == "e0 + e2"
    assert f2c3.element({1: 3}).support == [1]


def test_tables_agree_with_element_arithmetic(f2c3):
    A = f2c3.materialize(1)
    assert A.n == f2c3.order == 8
    for i in range(8):
        for j in range(8):
            x, y = f2c3.decode(i), f2c3.decode(j)
            assert A.mul[i, j] == f2c3.encode(f2c3.hat_mul(x, y))
            assert A.add[i, j] == f2c3.encode(f2c3.hat_add(x, y))


def test_coding(f2c3):
    assert f2c3.encode(f2c3.basis(1)) == 2
    assert all(f2c3.encode(f2c3.decode(i)) == i for i in range(8))
    with pytest.raises(StructuralError):
        f2c3.decode(8)
    with pytest.raises(StructuralError):
        f2c3.element({3: 1})


@pytest.mark.parametrize("ring_type", [1, 2])
def test_materialized_rings_pass(f2c3, ring_type):
    report = check_hom_ring(f2c3.materialize(ring_type))
    assert report.passed, report.failures


def test_odd_characteristic():
    A = twisted_group_ring(cyclic_table(2), [0, 1], 3)
    assert A.n == 9
    assert check_hom_ring(A).passed


def test_non_abelian_group_ring():
    A = twisted_group_ring(s3_table(), s3_conjugation(), 2)
    assert A.n == 64
    assert not A.commutative


def test_preconditions(f2c3):
    with pytest.raises(PreconditionError):
        TwistedGroupRing(cyclic_table(3), [0, 2, 1], 4)
    with pytest.raises(PreconditionError):
        TwistedGroupRing(cyclic_table(3), [0, 1, 1], 2)
    with pytest.raises(BudgetExceeded):
        f2c3.ordinary(bound=4)
