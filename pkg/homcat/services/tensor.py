"""Hom-bilinear maps and two candidates for the tensor product A⊗B.

The product construction takes the direct product of the abelianizations.
The oracle presents the abelian group generated by symbols t(a, b) subject
to the relations that make t Hom-bilinear, twists it by the automorphism
t(a, b) ↦ t(α a, α b), and lets the universal-property check decide between
the two.
"""
from __future__ import annotations
from collections import deque
from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Optional, Sequence
import logging

import numpy as np

from ..config import settings
from ..errors import BudgetExceeded, InvariantViolation, PreconditionError, StructuralError
from ..models.schemas import AxiomReport, AxiomVerdict, BilinearReport, TensorVerdict
from ..utils.search import TableSearch
from ..utils.smith import diagonalize, invariant_factors
from ..utils.tables import as_table, axiom_verdict
from .homgroup import FiniteHomGroup, HomMap, direct_product, enumerate_homomorphisms, twist_group
from .structure import abelianization

logger = logging.getLogger(__name__)


def _require_regular(*groups: FiniteHomGroup) -> None:
    for G in groups:
        if not G.regular:
            raise PreconditionError(f"{G!r} is not regular")


def is_hom_bilinear(A: FiniteHomGroup, B: FiniteHomGroup, C: FiniteHomGroup, f: Sequence) -> BilinearReport:
    _require_regular(A, B, C)
    F = as_table(f, (A.n, B.n), C.n, "bilinear map")
    MA, MB, MC = A.mul, B.mul, C.mul
    identities = [
        axiom_verdict("left-additive", F[MA[:, :, None], B.alpha[None, None, :]] == MC[F[:, None, :], F[None, :, :]]),
        axiom_verdict("right-additive", F[A.alpha[:, None, None], MB[None, :, :]] == MC[F[:, :, None], F[:, None, :]]),
        axiom_verdict("alpha-compatible", F[A.alpha[:, None], B.alpha[None, :]] == C.alpha[F]),
    ]
    report = BilinearReport(identities=identities)
    if not report.bilinear:
        return report
    values = np.unique(F)
    comm = np.unique(MA[MA[A.inv[:, None], A.inv[None, :]], MA])
    report.lemmas = [
        axiom_verdict("unit-annihilation", np.concatenate([F[A.e, :], F[:, B.e]]) == C.e),
        axiom_verdict("inverse-rule", F[A.inv, :] == C.inv[F]),
        axiom_verdict("image-commutation", MC[values[:, None], values[None, :]] == MC[values[None, :], values[:, None]]),
        axiom_verdict("commutator-kernel", F[comm, :] == C.e),
    ]
    for lemma in report.lemmas:
        if lemma.failed:
            logger.warning(f"bilinear map satisfies the definition but fails {lemma.name} at {lemma.witness}")
    return report


def _bilinear_search(A: FiniteHomGroup, B: FiniteHomGroup, C: FiniteHomGroup) -> TableSearch:
    def cell(a: int, b: int) -> int:
        return int(a) * B.n + int(b)

    search = TableSearch(A.n * B.n, C.n)
    mul_c = C.mul.tolist()
    for a1, a2, b in product(range(A.n), range(A.n), range(B.n)):
        search.add_binary(cell(A.mul[a1, a2], B.alpha[b]), cell(a1, b), cell(a2, b), mul_c)
    for a, b1, b2 in product(range(A.n), range(B.n), range(B.n)):
        search.add_binary(cell(A.alpha[a], B.mul[b1, b2]), cell(a, b1), cell(a, b2), mul_c)
    for a, b in product(range(A.n), range(B.n)):
        search.add_unary(cell(A.alpha[a], B.alpha[b]), cell(a, b), C.alpha)
    return search


def enumerate_bilinear_maps(A: FiniteHomGroup, B: FiniteHomGroup, C: FiniteHomGroup,
                            budget: Optional[int] = None) -> tuple[list[np.ndarray], str]:
    _require_regular(A, B, C)
    outcome = _bilinear_search(A, B, C).solve(budget or settings.search_budget)
    maps = [np.array(sol, dtype=np.int64).reshape(A.n, B.n) for sol in sorted(outcome.solutions)]
    return maps, outcome.status


@dataclass(frozen=True, eq=False)
class TensorCandidate:
    A: FiniteHomGroup
    B: FiniteHomGroup
    carrier: FiniteHomGroup
    tau: np.ndarray
    tag: str
    factors: Optional[list[int]] = None
    add: Optional[np.ndarray] = None

    @property
    def order(self) -> int:
        return self.carrier.n


def tensor_abelianized(A: FiniteHomGroup, B: FiniteHomGroup) -> TensorCandidate:
    _require_regular(A, B)
    ab_a, ab_b = abelianization(A), abelianization(B)
    carrier = direct_product(ab_a.quotient.group, ab_b.quotient.group)
    nb = ab_b.quotient.group.n
    tau = ab_a.projection.table[:, None] * nb + ab_b.projection.table[None, :]
    logger.info(f"product-of-abelianizations candidate has order {carrier.n}")
    return TensorCandidate(A, B, carrier, tau, "paper-construction")


def bilinear_relations(A: FiniteHomGroup, B: FiniteHomGroup) -> list[list[int]]:
    nb = B.n
    size = A.n * nb
    rows: list[list[int]] = []

    def relation(*terms: tuple[int, int, int]) -> None:
        row = [0] * size
        for coeff, a, b in terms:
            row[int(a) * nb + int(b)] += coeff
        if any(row):
            rows.append(row)

    for a1, a2, b in product(range(A.n), range(A.n), range(nb)):
        relation((1, A.mul[a1, a2], B.alpha[b]), (-1, A.alpha[a1], B.alpha[b]), (-1, A.alpha[a2], B.alpha[b]))
    for a, b1, b2 in product(range(A.n), range(nb), range(nb)):
        relation((1, A.alpha[a], B.mul[b1, b2]), (-1, A.alpha[a], B.alpha[b1]), (-1, A.alpha[a], B.alpha[b2]))
    return rows


@dataclass(frozen=True, eq=False)
class Presentation:
    """A finite abelian group given by generators and relations, twisted by θ."""

    carrier: FiniteHomGroup
    generators: np.ndarray
    moduli: list[int]
    add: np.ndarray


def present_twisted(size: int, rows: list[list[int]], theta_of: Sequence[int], name: str,
                    bound: Optional[int] = None) -> Presentation:
    """Quotient ℤ^size / rows, twisted by the endomorphism sending generator k to generator theta_of[k]."""
    bound = bound or settings.tensor_bound
    if size > bound:
        raise BudgetExceeded(f"{size} tensor generators exceed the bound {bound}")
    diag, T = diagonalize(rows, size)
    if any(d == 0 for d in diag):
        raise StructuralError("relation module has a free summand; the carrier would be infinite")
    keep = [j for j, d in enumerate(diag) if abs(d) > 1]
    moduli = [abs(diag[j]) for j in keep]
    order = prod(moduli)
    if order > bound:
        raise BudgetExceeded(f"tensor carrier of order {order} exceeds the bound {bound}")

    gens = [tuple(T[k][j] % d for j, d in zip(keep, moduli)) for k in range(size)]
    zero = tuple(0 for _ in moduli)

    def plus(x: tuple, y: tuple) -> tuple:
        return tuple((u + v) % d for u, v, d in zip(x, y, moduli))

    # θ on generators, extended additively along a BFS from 0
    image_of = [gens[int(t)] for t in theta_of]
    theta = {zero: zero}
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for g, tg in zip(gens, image_of):
            y, ty = plus(x, g), plus(theta[x], tg)
            if y not in theta:
                theta[y] = ty
                queue.append(y)
            elif theta[y] != ty:
                raise InvariantViolation("twist on the tensor carrier is not well defined", witness=y)
    elements = sorted(theta)
    if len(elements) != order:
        raise InvariantViolation(f"generators reach {len(elements)} of {order} carrier elements")
    index = {x: i for i, x in enumerate(elements)}
    add = np.array([[index[plus(x, y)] for y in elements] for x in elements], dtype=np.int64)
    endo = np.array([index[theta[x]] for x in elements], dtype=np.int64)
    carrier = twist_group(add, endo, name=name)
    generators = np.array([index[g] for g in gens], dtype=np.int64)
    return Presentation(carrier, generators, moduli, add)


def tensor_oracle(A: FiniteHomGroup, B: FiniteHomGroup, bound: Optional[int] = None) -> TensorCandidate:
    _require_regular(A, B)
    theta_of = [int(A.alpha[k // B.n]) * B.n + int(B.alpha[k % B.n]) for k in range(A.n * B.n)]
    pres = present_twisted(A.n * B.n, bilinear_relations(A, B), theta_of, f"{A.name or 'A'}⊗{B.name or 'B'}", bound)
    tau = pres.generators.reshape(A.n, B.n)
    check = is_hom_bilinear(A, B, pres.carrier, tau)
    if not check.bilinear:
        first = next(v for v in check.identities if v.failed)
        raise InvariantViolation(f"oracle canonical map fails {first.name}", witness=tuple(first.witness))
    factors = invariant_factors(pres.moduli)
    logger.info(f"oracle tensor carrier of order {pres.carrier.n}, invariant factors {factors}")
    return TensorCandidate(A, B, pres.carrier, tau, "oracle", factors, pres.add)


def universal_property_check(cand: TensorCandidate, targets: Sequence[FiniteHomGroup],
                             budget: Optional[int] = None) -> list[TensorVerdict]:
    A, B, T = cand.A, cand.B, cand.carrier
    verdicts: list[TensorVerdict] = []
    tau_check = is_hom_bilinear(A, B, T, cand.tau)
    for C in targets:
        _require_regular(C)
        target = C.name or f"order-{C.n}"
        if not tau_check.bilinear:
            first = next(v for v in tau_check.identities if v.failed)
            verdicts.append(TensorVerdict(candidate=cand.tag, target=target, status="violated",
                                          witness={"reason": "canonical map is not Hom-bilinear",
                                                   "identity": first.name, "tuple": first.witness}))
            continue
        maps, status = enumerate_bilinear_maps(A, B, C, budget)
        homs = enumerate_homomorphisms(T, C, budget)
        if status != "complete" or homs.status != "complete":
            verdicts.append(TensorVerdict(candidate=cand.tag, target=target, status="truncated"))
            continue
        verdict = TensorVerdict(candidate=cand.tag, target=target, status="satisfied")
        for f in maps:
            count = sum(1 for h in homs.maps if (h.table[cand.tau] == f).all())
            if count != 1:
                verdict = TensorVerdict(candidate=cand.tag, target=target, status="violated",
                                        witness={"reason": "factorization count", "factorizations": count,
                                                 "map": f.tolist()})
                break
        verdicts.append(verdict)
        logger.info(f"universal property of {cand.tag} against {target}: {verdict.status}")
    return verdicts


def symmetry_check(A: FiniteHomGroup, B: FiniteHomGroup) -> AxiomReport:
    left, right = tensor_oracle(A, B), tensor_oracle(B, A)
    swap = {int(left.carrier.e): int(right.carrier.e)}
    queue = deque([int(left.carrier.e)])
    pairs = [(int(left.tau[a, b]), int(right.tau[b, a])) for a in range(A.n) for b in range(B.n)]
    consistent = True
    witness: Optional[list[int]] = None
    while queue and consistent:
        x = queue.popleft()
        for g, h in pairs:
            y, sy = int(left.add[x, g]), int(right.add[swap[x], h])
            if y not in swap:
                swap[y] = sy
                queue.append(y)
            elif swap[y] != sy:
                consistent, witness = False, [y]
                break
    checks = [AxiomVerdict(name="swap-well-defined") if consistent else
              AxiomVerdict(name="swap-well-defined", status="fail", witness=witness)]
    if consistent:
        table = [swap[x] for x in range(left.order)]
        f = HomMap.build(left.carrier, right.carrier, table)
        checks.append(AxiomVerdict(name="swap-bijective", status="pass" if f.injective and left.order == right.order
                                   else "fail"))
        checks.append(AxiomVerdict(name="swap-homomorphism", status="pass" if f.is_homomorphism else "fail"))
    same = left.factors == right.factors
    checks.append(AxiomVerdict(name="invariant-factors", status="pass" if same else "fail",
                               note=f"{left.factors} vs {right.factors}"))
    return AxiomReport(structure="tensor-symmetry", order=left.order, axioms=checks)
