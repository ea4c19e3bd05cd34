import numpy as np
import pytest

from homcat.errors import PreconditionError, StructuralError
from homcat.services import catalog
from homcat.services.homring import compatible_ring
from homcat.services.hommodule import (FiniteHomModule, check_bimodule_rs, check_module, compatible_module,
                                       direct_sum, generated_submodule, hom_module_from_compatible,
                                       hom_R_bilinear_check, hom_ring_simplicity, is_module_homomorphism,
                                       is_submodule, ker_beta, regular_module, restrict_module, right_as_left,
                                       semisimple_decomposition, submodule_analysis, tensor_over_R_oracle)
from homcat.services.structure import SubSet


@pytest.mark.parametrize("name", catalog.names("module"))
def test_catalog_modules_pass(name):
    report = check_module(catalog.module(name))
    assert report.passed, report.failures


def test_regular_module_is_a_bimodule():
    report = check_module(catalog.module("f2c3_regular"))
    assert report.side == "bi"
    assert report.verdict("bimodule-compatibility").status == "pass"
    assert report.verdict("left-zero-action").status == "pass"
    assert report.verdict("right-twist-equivariance").status == "pass"


def test_bimodule_over_two_rings():
    M = catalog.module("f2c3_regular")
    report = check_bimodule_rs(M, M)
    assert report.passed
    assert report.axioms[-1].name == "rs-bimodule-compatibility"


def test_non_regular_module_skips_zero_action():
    report = check_module(catalog.module("z4_2x_over_f2"))
    assert report.passed
    assert not report.regular
    assert report.verdict("left-zero-action").status == "not_applicable"


def test_side_and_ring_preconditions():
    with pytest.raises(StructuralError):
        check_module(catalog.module("f2c3_augmentation"), "right")
    with pytest.raises(PreconditionError):
        check_module(regular_module(catalog.ring("z6_3x")))
    with pytest.raises(StructuralError):
        FiniteHomModule.from_tables(catalog.ring("f2"), [[0, 1], [1, 0]], 0, [0, 1])


def test_broken_action_is_reported():
    M = catalog.module("f2c3_augmentation")
    act = M.act_left.copy()
    act[1, 1] = 0
    broken = FiniteHomModule.from_tables(M.ring, M.madd, M.mzero, M.beta, act_left=act)
    report = check_module(broken)
    assert not report.passed
    assert report.verdict("left-unit").witness == [1]


def test_direct_sums_and_right_as_left():
    M = direct_sum(catalog.module("f2_regular"), catalog.module("f2_regular"))
    assert M.m == 4 and M.side == "bi"
    assert check_module(M).passed
    mixed = direct_sum(catalog.module("f2c3_regular"), catalog.module("f2c3_augmentation"))
    assert mixed.m == 16 and mixed.side == "left"
    assert check_module(mixed).passed
    flipped = right_as_left(catalog.module("f2c3_regular"))
    assert flipped.side == "left"
    assert check_module(flipped).passed
    with pytest.raises(PreconditionError):
        direct_sum(catalog.module("f2_regular"), catalog.module("f2c3_regular"))


def test_submodules_and_kernel_of_beta():
    M = catalog.module("z4_2x_over_f2")
    assert ker_beta(M).sorted() == [0, 2]
    report, subs = submodule_analysis(M)
    assert report.submodules == [[0], [0, 2], [0, 1, 2, 3]]
    assert report.ker_beta_is_submodule
    assert not report.is_simple
    assert report.finding is None
    assert len(subs) == 3
    verdict = is_submodule(M, SubSet.of(M.additive, [0, 1]))
    assert not verdict and verdict.witness == [0, 1, 2]
    assert generated_submodule(M, [1]).sorted() == [0, 1, 2, 3]


def test_simple_module_with_degenerate_twist_is_a_finding():
    report, _ = submodule_analysis(catalog.module("null_over_f2"))
    assert report.is_simple
    assert not report.regular
    assert report.finding == "simple module whose beta is not bijective"


def test_restriction_to_kernel_of_beta():
    M = catalog.module("z4_2x_over_f2")
    K = restrict_module(M, ker_beta(M))
    assert K.m == 2
    assert (K.madd == 0).all() and (K.beta == 0).all()
    assert check_module(K).passed
    with pytest.raises(PreconditionError):
        restrict_module(M, SubSet.of(M.additive, [0, 1]))


def test_compatible_module_round_trip():
    M = catalog.module("f2c3_regular")
    Mc = compatible_module(M)
    assert (Mc.beta == np.arange(8)).all()
    assert check_module(Mc, "left").passed
    back = hom_module_from_compatible(Mc, M.beta, M.ring)
    assert (back.madd == M.madd).all()
    assert (back.act_left == M.act_left).all()
    Rc = compatible_ring(M.ring)
    assert (Mc.ring.mul == Rc.mul).all()


def test_compatible_module_needs_bijective_beta():
    with pytest.raises(PreconditionError):
        compatible_module(catalog.module("z4_2x_over_f2"))


def test_decomposition_of_simple_module():
    report = semisimple_decomposition(catalog.module("f2c3_augmentation"))
    assert report.module_simple
    assert report.generator == 1 and report.orbit_length == 1
    assert report.summands == [[0, 1]]
    assert report.direct and report.covers
    assert report.summands_simple == [True]


def test_decomposition_of_non_simple_module():
    report = semisimple_decomposition(catalog.module("f2c3_regular"))
    assert not report.module_simple
    assert len(report.summands) == report.orbit_length


@pytest.mark.parametrize("name,simple,semisimple", [("f2", True, True), ("f2c3_twist", False, True),
                                                    ("z6_3x", False, False)])
def test_ring_simplicity(name, simple, semisimple):
    report = hom_ring_simplicity(catalog.ring(name))
    assert report.status == "complete"
    assert report.is_simple is simple
    assert report.is_semisimple is semisimple


def test_twisted_group_ring_splits_into_two_ideals():
    report = hom_ring_simplicity(catalog.ring("f2c3_twist"))
    assert report.simple_summands == [[0, 7], [0, 3, 5, 6]]


def test_non_unitary_ring_is_noted():
    report = hom_ring_simplicity(catalog.ring("z6_3x"))
    assert report.note == "ring is not unitary; only the submodule lattice is used"


def test_module_homomorphism_readings():
    M = catalog.module("f2c3_regular")
    alpha = M.ring.alpha
    twisted = is_module_homomorphism(alpha, M, M, "twisted")
    assert twisted.passed
    assert [v.name for v in twisted.derived] == ["kernel-submodule", "image-submodule"]
    assert not is_module_homomorphism(alpha, M, M, "plain").passed
    identity = np.arange(8)
    assert is_module_homomorphism(identity, M, M, "plain").passed
    assert not is_module_homomorphism(identity, M, M, "twisted").passed


def test_unbalanced_bilinear_map():
    M = catalog.module("f2c3_regular")
    idx = np.arange(8)
    f = np.outer(idx % 2, idx % 2)
    report = hom_R_bilinear_check(M, M, catalog.group("z2"), f)
    names = {v.name: v.status for v in report.identities}
    assert names["left-additive"] == names["right-additive"] == "pass"
    assert names["balanced"] == "fail"
    assert not report.bilinear


def test_tensor_over_field():
    result = tensor_over_R_oracle(catalog.module("f2_regular"), catalog.module("f2_regular"))
    assert result.candidate.order == 2
    assert result.bilinear.bilinear
    assert result.left_action.status == "pass"
