"""Hom-subgroups, normality, quotients, commutators and normal lattices."""
from __future__ import annotations
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional
import logging

import numpy as np

from ..config import settings
from ..errors import InvariantViolation, PreconditionError, StructuralError
from ..models.schemas import (AbelianizationReport, AxiomReport, AxiomVerdict, CanonicalSubgroups, LatticeReport,
                              SubgroupVerdict, UniversalVerdict)
from ..utils.tables import first_failure, members_mask
from .homgroup import FiniteHomGroup, HomMap, check_hom_group, enumerate_homomorphisms

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SubSet:
    owner: FiniteHomGroup
    members: frozenset[int]

    @classmethod
    def of(cls, G: FiniteHomGroup, members: Iterable[int]) -> "SubSet":
        items = frozenset(int(m) for m in members)
        bad = [m for m in items if not 0 <= m < G.n]
        if bad:
            raise StructuralError(f"subset member {min(bad)} out of range [0, {G.n})", witness=(min(bad),))
        return cls(G, items)

    @property
    def mask(self) -> np.ndarray:
        return members_mask(self.members, self.owner.n)

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def __le__(self, other: "SubSet") -> bool:
        return self.members <= other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubSet) and self.members == other.members


def is_hom_subgroup(G: FiniteHomGroup, S: SubSet) -> SubgroupVerdict:
    if G.e not in S:
        return SubgroupVerdict(holds=False, witness=[G.e], reason="identity missing")
    idx = np.array(S.sorted())
    mask = S.mask
    products = G.mul[np.ix_(idx, idx)]
    bad = first_failure(mask[products])
    if bad is not None:
        g, h = int(idx[bad[0]]), int(idx[bad[1]])
        return SubgroupVerdict(holds=False, witness=[g, h, int(G.mul[g, h])], reason="not closed under products")
    bad = first_failure(mask[G.inv[idx]])
    if bad is not None:
        g = int(idx[bad[0]])
        return SubgroupVerdict(holds=False, witness=[g, int(G.inv[g])], reason="not closed under inverses")
    if not mask[G.alpha[idx]].all():
        # α(g) = g·e lies in S once S holds e and is closed under products
        raise InvariantViolation("product-closed subset containing e is not alpha-stable")
    return SubgroupVerdict(holds=True)


def generated_hom_subgroup(G: FiniteHomGroup, seeds: Iterable[int]) -> SubSet:
    mask = members_mask(list(seeds) + [G.e], G.n)
    while True:
        idx = np.flatnonzero(mask)
        grown = mask.copy()
        grown[G.mul[np.ix_(idx, idx)].ravel()] = True
        grown[G.inv[idx]] = True
        grown[G.alpha[idx]] = True
        if (grown == mask).all():
            return SubSet(G, frozenset(int(i) for i in idx))
        mask = grown


def _coset_criterion(G: FiniteHomGroup, H: SubSet, ambient: Iterable[int]) -> tuple[bool, Optional[list[int]]]:
    idx = H.sorted()
    for g in sorted(ambient):
        left = set(G.mul[g, idx].tolist())
        right = set(G.mul[idx, g].tolist())
        if left != right:
            return False, [g]
    return True, None


def is_normal(G: FiniteHomGroup, H: SubSet, ambient: Optional[SubSet] = None) -> SubgroupVerdict:
    """Normality of H, conjugating by the elements of ``ambient`` (all of G by default)."""
    check = is_hom_subgroup(G, H)
    if not check:
        raise PreconditionError(f"not a Hom-subgroup: {check.reason}", witness=check.witness)
    outer = ambient.sorted() if ambient is not None else list(range(G.n))
    cosets_ok, coset_witness = _coset_criterion(G, H, outer)
    if not G.regular:
        return SubgroupVerdict(holds=cosets_ok, witness=coset_witness, coset_criterion=cosets_ok,
                               reason="alpha is not bijective; decided by gH = Hg")
    g = np.array(outer)[:, None]
    h = np.array(H.sorted())[None, :]
    conj = G.mul[G.mul[g, h], G.alpha[G.inv[g]]]
    bad = first_failure(H.mask[conj])
    holds = bad is None
    if holds != cosets_ok:
        logger.warning(f"conjugation and coset criteria disagree on {H.sorted()}")
    if holds:
        return SubgroupVerdict(holds=True, coset_criterion=cosets_ok)
    gi, hi = int(g[bad[0], 0]), int(h[0, bad[1]])
    return SubgroupVerdict(holds=False, witness=[gi, hi, int(conj[bad])], coset_criterion=cosets_ok,
                           reason="(gh)α(g⁻¹) leaves the subgroup")


def image(f: HomMap) -> SubSet:
    return SubSet(f.target, frozenset(int(v) for v in f.table))


def kernel(f: HomMap) -> SubSet:
    return SubSet(f.source, frozenset(int(g) for g in np.flatnonzero(f.table == f.target.e)))


def preimage(f: HomMap, M: SubSet) -> SubSet:
    return SubSet(f.source, frozenset(int(g) for g in np.flatnonzero(M.mask[f.table])))


def left_cosets(G: FiniteHomGroup, H: SubSet) -> list[frozenset[int]]:
    """Left cosets gH, indexed by g."""
    idx = H.sorted()
    return [frozenset(G.mul[g, idx].tolist()) for g in range(G.n)]


def right_cosets(G: FiniteHomGroup, H: SubSet) -> list[frozenset[int]]:
    idx = H.sorted()
    return [frozenset(G.mul[idx, g].tolist()) for g in range(G.n)]


def _membership(G: FiniteHomGroup, H: SubSet, name: str) -> AxiomVerdict:
    check = is_hom_subgroup(G, H)
    if check:
        return AxiomVerdict(name=name)
    return AxiomVerdict(name=name, status="fail", witness=check.witness, note=check.reason)


def _normal_verdict(G: FiniteHomGroup, H: SubSet, name: str, ambient: Optional[SubSet] = None) -> AxiomVerdict:
    if not is_hom_subgroup(G, H):
        return AxiomVerdict(name=name, status="not_applicable", note="not a Hom-subgroup")
    verdict = is_normal(G, H, ambient)
    if verdict:
        return AxiomVerdict(name=name)
    return AxiomVerdict(name=name, status="fail", witness=verdict.witness, note=verdict.reason)


def canonical_subgroups(G: FiniteHomGroup, H: Optional[SubSet] = None) -> CanonicalSubgroups:
    M, A, I = G.mul, G.alpha, G.inv
    center = SubSet(G, frozenset(int(g) for g in np.flatnonzero((M == M.T).all(axis=1))))
    alpha_center = SubSet(G, frozenset(int(g) for g in np.flatnonzero((A[M] == A[M.T]).all(axis=1))))
    checks = [_membership(G, center, "center-subgroup")]
    stable = first_failure(center.mask[A[center.sorted()]])
    checks.append(AxiomVerdict(name="center-alpha-stable") if stable is None else
                  AxiomVerdict(name="center-alpha-stable", status="fail", witness=[center.sorted()[stable[0]]]))
    if G.regular:
        checks.append(_normal_verdict(G, center, "center-normal"))
        same = center == alpha_center
        checks.append(AxiomVerdict(name="center-equals-alpha-center", status="pass" if same else "fail",
                                   witness=None if same else sorted(center.members ^ alpha_center.members)[:1]))
    else:
        checks.append(AxiomVerdict(name="center-normal", status="not_applicable", note="alpha is not bijective"))
    result = CanonicalSubgroups(center=center.sorted(), alpha_center=alpha_center.sorted(), checks=checks)
    if H is None:
        return result
    if not G.regular:
        result.checks.append(AxiomVerdict(name="centralizer", status="not_applicable",
                                          note="centralizer and normalizer need a regular Hom-group"))
        return result
    if not is_hom_subgroup(G, H):
        raise PreconditionError("H is not a Hom-subgroup")
    g = np.arange(G.n)[:, None]
    h = np.array(H.sorted())[None, :]
    conj = M[M[g, h], A[I[g]]]
    A2 = A[A]
    centralizer = SubSet(G, frozenset(int(x) for x in np.flatnonzero((conj == A2[h]).all(axis=1))))
    normalizer = SubSet(G, frozenset(int(x) for x in np.flatnonzero(H.mask[conj].all(axis=1))))
    result.checks.append(_membership(G, centralizer, "centralizer-subgroup"))
    result.checks.append(_membership(G, normalizer, "normalizer-subgroup"))
    if is_hom_subgroup(G, normalizer) and is_hom_subgroup(G, centralizer):
        result.checks.append(_normal_verdict(G, centralizer, "centralizer-normal-in-normalizer", ambient=normalizer))
    result.centralizer = centralizer.sorted()
    result.normalizer = normalizer.sorted()
    return result


# ---------------------------------------------------------------- quotients

@dataclass(frozen=True, eq=False)
class QuotientHomGroup:
    group: FiniteHomGroup
    subgroup: SubSet
    representatives: tuple[int, ...]
    coset_of: np.ndarray
    cosets: tuple[frozenset[int], ...]

    def projection(self) -> HomMap:
        return HomMap.build(self.subgroup.owner, self.group, self.coset_of)


def quotient(G: FiniteHomGroup, H: SubSet) -> QuotientHomGroup:
    if not G.regular:
        raise PreconditionError("quotients need a regular Hom-group")
    if not is_normal(G, H):
        raise PreconditionError(f"{H.sorted()} is not normal")
    named = left_cosets(G, H)
    cosets: list[frozenset[int]] = []
    for c in named:
        if c not in cosets:
            cosets.append(c)
    covered: set[int] = set()
    for c in cosets:
        overlap = covered & c
        if overlap:
            raise StructuralError("left cosets overlap without coinciding", witness=(min(overlap),))
        covered |= c
    if len(covered) != G.n:
        missing = min(set(range(G.n)) - covered)
        raise StructuralError("left cosets do not cover the group", witness=(missing,))
    position = {c: i for i, c in enumerate(cosets)}
    coset_of = np.array([position[c] for c in named], dtype=np.int64)
    reps = tuple(int(np.flatnonzero(coset_of == i).min()) for i in range(len(cosets)))
    r = np.array(reps)

    qmul = coset_of[G.mul[r[:, None], r[None, :]]]
    bad = first_failure(coset_of[G.mul] == qmul[coset_of[:, None], coset_of[None, :]])
    if bad is not None:
        raise StructuralError("coset product is not well defined", witness=bad)
    qalpha = coset_of[G.alpha[r]]
    bad = first_failure(coset_of[G.alpha] == qalpha[coset_of])
    if bad is not None:
        raise StructuralError("alpha is not well defined on cosets", witness=bad)
    qinv = coset_of[G.inv[r]]
    bad = first_failure(coset_of[G.inv] == qinv[coset_of])
    if bad is not None:
        raise StructuralError("inverse is not well defined on cosets", witness=bad)

    if set(G.alpha[H.sorted()].tolist()) == H.members:
        same = coset_of[:, None] == coset_of[None, :]
        criterion = H.mask[G.mul[G.inv[:, None], np.arange(G.n)[None, :]]]
        bad = first_failure(same == criterion)
        if bad is not None:
            raise InvariantViolation("gH = g'H disagrees with g⁻¹g' ∈ H", witness=bad)

    Q = FiniteHomGroup.from_tables(qmul, qalpha, int(coset_of[G.e]), qinv,
                                   name=f"{G.name or 'G'}/{len(H)}")
    report = check_hom_group(Q)
    if not report.passed:
        first = report.failures[0]
        raise InvariantViolation(f"quotient fails {first.name}", witness=first.witness)
    logger.info(f"quotient of {G!r} by a subgroup of order {len(H)} has order {Q.n}")
    return QuotientHomGroup(Q, H, reps, coset_of, tuple(cosets))


# ---------------------------------------------------------------- commutators

def commutator(G: FiniteHomGroup, g: int, h: int) -> int:
    """[g, h] = (g⁻¹h⁻¹)(gh)."""
    return int(G.mul[G.mul[G.inv[g], G.inv[h]], G.mul[g, h]])


def commutator_subgroup(G: FiniteHomGroup) -> tuple[SubSet, bool]:
    if not G.regular:
        raise PreconditionError("the commutator subgroup needs a regular Hom-group")
    I, M = G.inv, G.mul
    bare = frozenset(M[M[I[:, None], I[None, :]], M].ravel().tolist())
    closed = generated_hom_subgroup(G, bare)
    bare_closed = bool(is_hom_subgroup(G, SubSet(G, bare)))
    if not is_normal(G, closed):
        raise InvariantViolation("commutator subgroup is not normal", witness=tuple(closed.sorted()))
    return closed, bare_closed


@dataclass(frozen=True, eq=False)
class Abelianization:
    quotient: QuotientHomGroup
    projection: HomMap
    commutators: SubSet
    bare_closed: bool
    minimal: bool

    def to_report(self) -> AbelianizationReport:
        Q = self.quotient.group
        return AbelianizationReport(order=self.quotient.subgroup.owner.n, commutator_subgroup=self.commutators.sorted(),
                                    bare_set_closed=self.bare_closed, quotient_order=Q.n, abelian=Q.abelian,
                                    projection=self.projection.table.tolist(), minimal=self.minimal)


def abelianization(G: FiniteHomGroup) -> Abelianization:
    N, bare_closed = commutator_subgroup(G)
    Q = quotient(G, N)
    if not Q.group.abelian:
        raise InvariantViolation("abelianization is not abelian")
    pi = Q.projection()
    if not (pi.is_homomorphism and pi.unit_preserving):
        raise InvariantViolation("canonical projection is not a homomorphism")
    minimal = True
    if G.n <= settings.lattice_order_bound:
        for H in normal_subgroups(G)[0]:
            if quotient(G, H).group.abelian and not N <= H:
                minimal = False
                logger.warning(f"abelian quotient by {H.sorted()} without containing [G,G]")
    return Abelianization(Q, pi, N, bare_closed, minimal)


def abelianization_universal_check(G: FiniteHomGroup, H: FiniteHomGroup, f: HomMap,
                                   budget: Optional[int] = None) -> UniversalVerdict:
    if not f.is_homomorphism:
        raise PreconditionError("f is not a Hom-group homomorphism")
    if not (H.abelian and H.regular):
        raise PreconditionError("target must be an abelian regular Hom-group")
    ab = abelianization(G)
    Q = ab.quotient
    reps = np.array(Q.representatives)
    induced = f.table[reps]
    bad = first_failure(f.table == induced[Q.coset_of])
    if bad is not None:
        return UniversalVerdict(status="violated", witness=list(bad), note="f is not constant on cosets")
    lifted = HomMap.build(Q.group, H, induced)
    if not lifted.is_homomorphism:
        return UniversalVerdict(status="violated", witness=induced.tolist(), note="induced map is not a homomorphism")
    search = enumerate_homomorphisms(Q.group, H, budget)
    factoring = [m for m in search.maps if (m.table[Q.coset_of] == f.table).all()]
    if search.status != "complete":
        return UniversalVerdict(status="truncated", factorizations=len(factoring))
    if len(factoring) != 1:
        return UniversalVerdict(status="violated", factorizations=len(factoring),
                                note="factorization is not unique")
    return UniversalVerdict(status="satisfied", factorizations=1, witness=induced.tolist())


# ---------------------------------------------------------------- lattices

def hom_subgroups(G: FiniteHomGroup, generator_size: Optional[int] = None,
                  budget: Optional[int] = None) -> tuple[list[SubSet], bool]:
    """All Hom-subgroups: closures of small generating sets, saturated under joins."""
    size = generator_size or settings.lattice_generator_size
    budget = budget or settings.closures
    found: dict[frozenset[int], SubSet] = {}
    closures = 0
    truncated = False
    for k in range(0, size + 1):
        for seeds in combinations(range(G.n), k):
            if closures >= budget:
                truncated = True
                break
            closures += 1
            S = generated_hom_subgroup(G, seeds)
            found.setdefault(S.members, S)
    frontier = list(found.values())
    while frontier and not truncated:
        fresh: list[SubSet] = []
        known = list(found.values())
        for A in frontier:
            for B in known:
                if A <= B or B <= A:
                    continue
                if closures >= budget:
                    truncated = True
                    break
                closures += 1
                J = generated_hom_subgroup(G, A.members | B.members)
                if J.members not in found:
                    found[J.members] = J
                    fresh.append(J)
        frontier = fresh
    subgroups = sorted(found.values(), key=lambda S: (len(S), S.sorted()))
    if truncated:
        logger.warning(f"subgroup enumeration truncated after {closures} closures")
    return subgroups, truncated


def normal_subgroups(G: FiniteHomGroup) -> tuple[list[SubSet], bool]:
    subgroups, truncated = hom_subgroups(G)
    return [S for S in subgroups if is_normal(G, S)], truncated


def _maximal(normals: list[SubSet], n: int) -> list[SubSet]:
    proper = [S for S in normals if len(S) < n]
    return [S for S in proper if not any(S.members < T.members for T in proper)]


def normal_lattice(G: FiniteHomGroup, cross_check: bool = True) -> tuple[LatticeReport, list[SubSet]]:
    note = None
    if G.n > settings.lattice_order_bound:
        subgroups, _ = hom_subgroups(G, generator_size=1)
        truncated = True
        note = f"order {G.n} exceeds the lattice bound; only cyclic closures and their joins"
    else:
        subgroups, truncated = hom_subgroups(G)
    normals = [S for S in subgroups if is_normal(G, S)]
    is_simple = len(normals) == 2
    finding = None
    if is_simple and not G.regular:
        finding = "simple Hom-group whose twist is not bijective"
        logger.warning(f"{G!r}: {finding}; ker alpha = {sorted(np.flatnonzero(G.alpha == G.e).tolist())}")
    maximal = _maximal(normals, G.n)
    mismatches: list[list[int]] = []
    if cross_check and G.regular and not truncated:
        for S in normals:
            if len(S) == G.n:
                continue
            simple_quotient = normal_lattice(quotient(G, S).group, cross_check=False)[0].is_simple
            if simple_quotient != (S in maximal):
                mismatches.append(S.sorted())
                logger.warning(f"maximality and simple quotient disagree on {S.sorted()}")
    report = LatticeReport(order=G.n, status="truncated" if truncated else "complete",
                           authoritative=not truncated, subgroups=len(subgroups),
                           normal=[S.sorted() for S in normals], maximal=[S.sorted() for S in maximal],
                           is_simple=is_simple, regular=G.regular, cross_check_mismatches=mismatches, note=note,
                           finding=finding)
    logger.info(f"normal lattice of {G!r}: {len(normals)} normal of {len(subgroups)} subgroups, simple={is_simple}")
    return report, normals


def pushforward_pullback_check(f: HomMap, N: SubSet, M: SubSet) -> AxiomReport:
    G, H = f.source, f.target
    if not f.unit_preserving:
        raise PreconditionError("f must send e to e")
    if not f.is_homomorphism:
        raise PreconditionError("f is not a Hom-group homomorphism")
    fG = image(f)
    if not is_normal(G, N):
        raise PreconditionError("N is not normal in the source")
    if not is_hom_subgroup(H, fG) or not is_normal(H, M, ambient=fG):
        raise PreconditionError("M is not normal in the image of f")
    pushed = SubSet(H, frozenset(int(v) for v in f.table[N.sorted()]))
    checks = [
        _normal_verdict(H, pushed, "image-normal-in-image", ambient=fG),
        _normal_verdict(G, preimage(f, M), "preimage-normal"),
        _normal_verdict(G, kernel(f), "kernel-normal"),
    ]
    return AxiomReport(structure="pushforward-pullback", order=G.n, axioms=checks, regular=G.regular)
