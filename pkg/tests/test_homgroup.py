import numpy as np
import pytest

from homcat.errors import PreconditionError, StructuralError
from homcat.services import catalog
from homcat.services.homgroup import (FiniteHomGroup, HomMap, alpha_power, check_hom_group,
                                      check_structure_identities, direct_product, enumerate_homomorphisms,
                                      find_isomorphism, hom_group_of_homomorphisms, inverse_and_index,
                                      q_additive_window, twist_group)


@pytest.mark.parametrize("name", catalog.names("group"))
def test_catalog_groups_are_hom_groups(name):
    report = check_hom_group(catalog.group(name))
    assert report.passed, report.failures


def test_twisted_cyclic_group():
    G = catalog.group("z6_5x")
    report = check_hom_group(G)
    assert report.passed
    assert report.regular and report.abelian
    assert report.inv_index == [0] * 6
    assert report.verdict("left-cancellation").status == "pass"


def test_non_regular_group_passes_without_cancellation():
    report = check_hom_group(catalog.group("z4_2x"))
    assert report.passed
    assert report.regular is False
    assert report.verdict("left-cancellation").status == "not_applicable"


def test_mutated_table_reports_first_witness():
    G = catalog.group("z6_5x")
    mul = G.mul.copy()
    mul[2, 3] = 0
    broken = FiniteHomGroup.from_tables(mul, G.alpha, G.e, G.inv)
    report = check_hom_group(broken)
    assert not report.passed
    assert report.verdict("alpha-multiplicative").witness == [2, 3]
    assert report.verdict("hom-associativity").status == "fail"
    assert report.derived == []


def test_table_validation():
    with pytest.raises(StructuralError):
        FiniteHomGroup.from_tables([[0, 1], [1, 2]], [0, 1], 0)
    with pytest.raises(StructuralError):
        FiniteHomGroup.from_tables([[0, 0], [0, 0]], [0, 0], 0)
    with pytest.raises(StructuralError):
        FiniteHomGroup.from_tables([[0]], [0], 1)


def test_twist_needs_a_group_endomorphism():
    with pytest.raises(PreconditionError):
        twist_group(catalog.cyclic_table(3), [0, 2, 2])
    with pytest.raises(PreconditionError):
        twist_group([[0, 0], [0, 1]], [0, 1])


def test_alpha_powers_and_inverses():
    G = catalog.group("z6_5x")
    assert alpha_power(G, 1, 1) == 5
    assert alpha_power(G, 1, 2) == 1
    assert alpha_power(G, 1, -1) == 5
    assert inverse_and_index(G, 2) == (4, 0)
    with pytest.raises(PreconditionError):
        alpha_power(catalog.group("z4_2x"), 1, -1)
    with pytest.raises(StructuralError):
        inverse_and_index(G, 6)


@pytest.mark.parametrize("name", ["z6_5x", "s3_twisted", "s3"])
def test_structure_identities(name):
    report = check_structure_identities(catalog.group(name))
    assert report.passed, report.failures


def test_squaring_distinguishes_abelian_groups():
    abelian = check_structure_identities(catalog.group("z6_5x")).verdict("squaring-homomorphism")
    twisted = check_structure_identities(catalog.group("s3_twisted")).verdict("squaring-homomorphism")
    assert abelian.note == "squaring is a homomorphism"
    assert twisted.note == "squaring is not a homomorphism"


@pytest.mark.parametrize("q,regular", [(1, True), (-1, True), (2, False), (3, False)])
def test_q_additive_window(q, regular):
    window, report = q_additive_window(q, 6)
    assert report.failures == 0
    assert report.regular is regular
    assert report.unit_law and report.inverse_law
    assert window.add(1, 2) == 3 * q
    if not regular:
        assert report.skipped > 0


def test_q_additive_window_arguments():
    with pytest.raises(PreconditionError):
        q_additive_window(0, 3)
    with pytest.raises(PreconditionError):
        q_additive_window(2, -1)


@pytest.mark.parametrize("source,target,count", [("z2", "z2", 2), ("z3", "z2", 1), ("z6", "z3", 3),
                                                 ("z6", "z6_5x", 2)])
def test_homomorphism_counts(source, target, count):
    search = enumerate_homomorphisms(catalog.group(source), catalog.group(target))
    assert search.status == "complete"
    assert len(search.maps) == count
    assert all(m.is_homomorphism and m.unit_preserving for m in search.maps)


def test_isomorphisms():
    G = catalog.group("z6_5x")
    iso = find_isomorphism(G, G)
    assert iso is not None and iso.injective
    assert find_isomorphism(catalog.group("z6"), G) is None
    assert find_isomorphism(catalog.group("z2"), catalog.group("z3")) is None
    product = direct_product(catalog.group("z2"), catalog.group("z3"))
    assert product.n == 6 and product.abelian
    assert find_isomorphism(product, catalog.group("z6")) is not None


def test_hom_group_of_homomorphisms():
    H, maps = hom_group_of_homomorphisms(catalog.group("z6"), catalog.group("z3"))
    assert H.n == 3 == len(maps)
    assert check_hom_group(H).passed
    assert H.abelian and H.regular
    with pytest.raises(PreconditionError):
        hom_group_of_homomorphisms(catalog.group("z4_2x"), catalog.group("z2"))


def test_hom_map_flags():
    G = catalog.group("z6_5x")
    double = HomMap.build(G, G, (2 * np.arange(6)) % 6)
    assert double.is_homomorphism and not double.injective
    shift = HomMap.build(G, G, (np.arange(6) + 1) % 6)
    assert not shift.unit_preserving
    assert double.verify() is double
