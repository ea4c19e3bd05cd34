import numpy as np
import pytest

from homcat.errors import PreconditionError, StructuralError
from homcat.services import catalog
from homcat.services.homgroup import FiniteHomGroup, HomMap, check_hom_group, enumerate_homomorphisms
from homcat.services.structure import (SubSet, abelianization, abelianization_universal_check, canonical_subgroups,
                                       commutator_subgroup, generated_hom_subgroup, is_hom_subgroup, is_normal,
                                       kernel, normal_lattice, pushforward_pullback_check, quotient)


def test_kernel_of_alpha_is_normal_in_non_regular_group():
    G = catalog.group("z4_2x")
    alpha = HomMap.build(G, G, G.alpha)
    K = kernel(alpha)
    assert K.sorted() == [0, 2]
    verdict = is_normal(G, K)
    assert verdict.holds and verdict.coset_criterion
    assert "not bijective" in verdict.reason


def test_subgroup_verdicts_carry_witnesses():
    G = catalog.group("z6")
    assert not is_hom_subgroup(G, SubSet.of(G, [1]))
    verdict = is_hom_subgroup(G, SubSet.of(G, [0, 1]))
    assert verdict.witness == [1, 1, 2]
    assert generated_hom_subgroup(G, [2]).sorted() == [0, 2, 4]
    with pytest.raises(StructuralError):
        SubSet.of(G, [6])
    with pytest.raises(PreconditionError):
        is_normal(G, SubSet.of(G, [0, 1]))


def test_simple_group_with_collapsing_twist_is_reported_not_raised():
    # {e, x} with x·x = x and α ≡ e passes every axiom but Ker α is everything
    G = FiniteHomGroup.from_tables([[0, 0], [0, 1]], [0, 0], 0, [0, 1], name="collapse2")
    assert check_hom_group(G).passed
    assert not G.regular
    report, normals = normal_lattice(G)
    assert report.normal == [[0], [0, 1]]
    assert report.is_simple and not report.regular
    assert report.finding == "simple Hom-group whose twist is not bijective"
    assert [S.sorted() for S in normals] == report.normal


def test_twisted_s3_lattice():
    report, normals = normal_lattice(catalog.group("s3_twisted"))
    assert report.status == "complete" and report.authoritative
    assert report.normal == [[0], [0, 3, 4], [0, 1, 2, 3, 4, 5]]
    assert report.maximal == [[0, 3, 4]]
    assert not report.is_simple
    assert report.cross_check_mismatches == []
    assert len(normals) == 3


@pytest.mark.parametrize("name,simple", [("z2", True), ("z3", True), ("z6", False), ("z6_5x", False)])
def test_simplicity_of_cyclic_groups(name, simple):
    report, _ = normal_lattice(catalog.group(name))
    assert report.is_simple is simple
    assert report.cross_check_mismatches == []


def test_z6_maximal_normal_subgroups():
    report, _ = normal_lattice(catalog.group("z6"))
    assert report.normal == [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]]
    assert report.maximal == [[0, 3], [0, 2, 4]]


def test_non_regular_lattice():
    report, _ = normal_lattice(catalog.group("z4_2x"))
    assert report.regular is False
    assert report.normal == [[0], [0, 2], [0, 1, 2, 3]]
    assert report.cross_check_mismatches == []


def test_quotient_by_normal_subgroup():
    G = catalog.group("z6")
    Q = quotient(G, SubSet.of(G, [0, 3]))
    assert Q.group.n == 3
    assert check_hom_group(Q.group).passed
    pi = Q.projection()
    assert pi.is_homomorphism and pi.unit_preserving
    assert Q.coset_of[4] == Q.coset_of[1]


def test_quotient_preconditions():
    with pytest.raises(PreconditionError):
        quotient(catalog.group("z4_2x"), SubSet.of(catalog.group("z4_2x"), [0, 2]))
    G = catalog.group("z6")
    with pytest.raises(PreconditionError):
        quotient(G, SubSet.of(G, [0, 1]))


def test_abelianization_of_twisted_s3():
    ab = abelianization(catalog.group("s3_twisted"))
    report = ab.to_report()
    assert report.quotient_order == 2
    assert report.abelian and report.minimal
    assert report.commutator_subgroup == [0, 3, 4]


def test_abelianization_of_abelian_group_is_trivial_quotient():
    G = catalog.group("z6_5x")
    N, _ = commutator_subgroup(G)
    assert N.sorted() == [0]
    assert abelianization(G).quotient.group.n == 6


def test_abelianization_universal_property():
    G, H = catalog.group("s3_twisted"), catalog.group("z2")
    maps = enumerate_homomorphisms(G, H).maps
    assert len(maps) >= 1
    for f in maps:
        verdict = abelianization_universal_check(G, H, f)
        assert verdict.status == "satisfied"
        assert verdict.factorizations == 1


def test_universal_check_needs_abelian_regular_target():
    G = catalog.group("z6")
    f = HomMap.build(G, catalog.group("s3"), np.zeros(6, dtype=np.int64))
    with pytest.raises(PreconditionError):
        abelianization_universal_check(G, catalog.group("s3"), f)


def test_canonical_subgroups():
    result = canonical_subgroups(catalog.group("z6_5x"))
    assert result.center == list(range(6))
    assert all(v.status == "pass" for v in result.checks)
    G = catalog.group("s3_twisted")
    result = canonical_subgroups(G, SubSet.of(G, [0, 3, 4]))
    assert result.normalizer == list(range(6))
    assert all(v.status == "pass" for v in result.checks[:4])


def test_pushforward_pullback():
    G = catalog.group("z6")
    identity = HomMap.build(G, G, np.arange(6))
    report = pushforward_pullback_check(identity, SubSet.of(G, [0, 3]), SubSet.of(G, [0, 2, 4]))
    assert report.passed
