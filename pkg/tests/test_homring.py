import numpy as np
import pytest

from homcat.errors import PreconditionError
from homcat.services import catalog
from homcat.services.homring import (FiniteHomRing, check_hom_ring, compatible_ring, endomorphism_hom_ring,
                                     ring_center, twist_ring, type_equivalence_check)


@pytest.mark.parametrize("name", ["f2", "z6", "z6_3x", "f2c3_twist", "f2c3_twist_type2", "end_z6"])
def test_catalog_rings_pass(name):
    report = check_hom_ring(catalog.ring(name))
    assert report.passed, report.failures


def test_twisted_group_ring_type_one():
    A = catalog.ring("f2c3_twist")
    report = check_hom_ring(A)
    assert report.order == 8
    assert report.ring_type == 1
    assert report.unitary and report.regular
    assert [v.status for v in report.derived] == ["pass", "pass"]


def test_twisted_group_ring_type_two():
    report = check_hom_ring(catalog.ring("f2c3_twist_type2"))
    assert report.passed
    assert report.ring_type == 2


def test_reading_a_type_one_ring_as_type_two():
    A = catalog.ring("f2c3_twist")
    spec = A.to_spec().model_copy(update={"ring_type": 2})
    report = check_hom_ring(FiniteHomRing.from_spec(spec))
    assert report.ring_type == 2
    assert report.additive.passed


def test_type_equivalence_on_regular_single_twist_ring():
    report = type_equivalence_check(catalog.ring("f2c3_twist"))
    assert report.passed, report.failures
    with pytest.raises(PreconditionError):
        type_equivalence_check(catalog.ring("z6_3x"))


def test_compatible_ring_round_trip():
    A = catalog.ring("f2c3_twist")
    R = compatible_ring(A)
    assert (R.alpha == np.arange(8)).all() and (R.beta == np.arange(8)).all()
    back = twist_ring(R, A.alpha, A.beta)
    assert (back.add == A.add).all()
    assert (back.mul == A.mul).all()


def test_non_unitary_twist():
    A = catalog.ring("z6_3x")
    report = check_hom_ring(A)
    assert report.passed
    assert not report.unitary
    assert A.one is None
    assert report.derived[0].status == "not_applicable"


def test_twist_preconditions():
    Z6 = catalog.ring("z6")
    double = (2 * np.arange(6)) % 6
    with pytest.raises(PreconditionError):
        twist_ring(Z6, double, np.arange(6))
    with pytest.raises(PreconditionError):
        twist_ring(catalog.ring("z6_3x"), np.arange(6), np.arange(6))
    with pytest.raises(PreconditionError):
        compatible_ring(catalog.ring("z6_3x"))


def test_endomorphism_ring_of_twisted_cyclic_group_fails():
    E = catalog.ring("end_z6_5x")
    report = check_hom_ring(E)
    assert E.n == 6
    assert not report.passed
    assert report.verdict("left-distributivity").failed
    assert report.verdict("alpha-multiplicative").failed


def test_endomorphism_ring_with_identity_twist():
    E, maps = endomorphism_hom_ring(catalog.group("z6"))
    assert E.n == len(maps) == 6
    assert check_hom_ring(E).passed
    assert E.commutative
    with pytest.raises(PreconditionError):
        endomorphism_hom_ring(catalog.group("s3"))


def test_center_of_twisted_s3_group_ring():
    A = catalog.ring("f2s3_twist")
    assert A.n == 64
    center = ring_center(A)
    assert len(center.members) == 8
    assert center.proper
    assert all(v.status == "pass" for v in center.certificate)


def test_center_of_commutative_ring_is_everything():
    center = ring_center(catalog.ring("f2c3_twist"))
    assert center.members == list(range(8))
    assert not center.proper
    with pytest.raises(PreconditionError):
        ring_center(catalog.ring("z6_3x"))
