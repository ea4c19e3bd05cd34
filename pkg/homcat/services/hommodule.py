"""Modules over unitary α-Hom-rings of type (1).

A module is an abelian Hom-group (M, +, β) with a left action, a right action
or both. Submodules are the subsets closed under +, additive inverse, β and
every ring action; they are represented as SubSets of the additive Hom-group.
"""
from __future__ import annotations
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Literal, Optional, Sequence
import logging

import numpy as np

from ..config import settings
from ..errors import InvariantViolation, PreconditionError, StructuralError
from ..models.schemas import (AxiomReport, AxiomVerdict, BilinearReport, DecompositionReport, HomModuleSpec,
                              ModuleReport, SimplicityReport, SubgroupVerdict, SubmoduleReport)
from ..utils.tables import (as_table, axiom_verdict, first_failure, identity_table, inverse_permutation,
                            is_bijective, members_mask)
from .homgroup import FiniteHomGroup, check_hom_group, derive_inverse
from .homring import FiniteHomRing, compatible_ring, require_hom_ring
from .structure import SubSet
from .tensor import TensorCandidate, bilinear_relations, is_hom_bilinear, present_twisted
from ..utils.smith import invariant_factors

logger = logging.getLogger(__name__)

Side = Literal["left", "right", "bi"]
Reading = Literal["twisted", "plain"]


@dataclass(frozen=True, eq=False)
class FiniteHomModule:
    ring: FiniteHomRing
    madd: np.ndarray
    mzero: int
    beta: np.ndarray
    madd_inv: np.ndarray
    act_left: Optional[np.ndarray] = None
    act_right: Optional[np.ndarray] = None
    name: str = ""

    @classmethod
    def from_tables(cls, ring: FiniteHomRing, madd: Sequence, mzero: int, beta: Sequence,
                    act_left: Optional[Sequence] = None, act_right: Optional[Sequence] = None,
                    madd_inv: Optional[Sequence] = None, name: str = "") -> "FiniteHomModule":
        m = len(beta)
        if m == 0:
            raise StructuralError("a module needs at least one element")
        if act_left is None and act_right is None:
            raise StructuralError("a module needs a left or a right action")
        madd_t = as_table(madd, (m, m), m, "madd")
        beta_t = as_table(beta, (m,), m, "beta")
        if not 0 <= int(mzero) < m:
            raise StructuralError(f"mzero {mzero} out of range [0, {m})", witness=(int(mzero),))
        left = as_table(act_left, (ring.n, m), m, "act_left") if act_left is not None else None
        right = as_table(act_right, (m, ring.n), m, "act_right") if act_right is not None else None
        if madd_inv is None:
            inv = derive_inverse(madd_t, beta_t, int(mzero))
        else:
            inv = as_table(madd_inv, (m,), m, "madd_inv")
        return cls(ring, madd_t, int(mzero), beta_t, inv, left, right, name)

    @classmethod
    def from_spec(cls, spec: HomModuleSpec, ring: FiniteHomRing) -> "FiniteHomModule":
        return cls.from_tables(ring, spec.madd, spec.mzero, spec.beta, spec.act_left, spec.act_right,
                               spec.madd_inv, spec.name or "")

    def to_spec(self) -> HomModuleSpec:
        return HomModuleSpec(
            ring=self.ring.to_spec(), m=self.m, mzero=self.mzero, madd=self.madd.tolist(), beta=self.beta.tolist(),
            act_left=self.act_left.tolist() if self.act_left is not None else None,
            act_right=self.act_right.tolist() if self.act_right is not None else None,
            madd_inv=self.madd_inv.tolist(), name=self.name or None,
        )

    @property
    def m(self) -> int:
        return len(self.beta)

    @cached_property
    def regular(self) -> bool:
        return is_bijective(self.beta)

    @cached_property
    def additive(self) -> FiniteHomGroup:
        return FiniteHomGroup(self.madd, self.beta, self.mzero, self.madd_inv, name=f"({self.name or 'M'},+)")

    @property
    def side(self) -> Side:
        if self.act_left is not None and self.act_right is not None:
            return "bi"
        return "left" if self.act_left is not None else "right"

    def __repr__(self) -> str:
        return f"<{self.name or 'HomModule'} m={self.m} side={self.side} regular={self.regular}>"


def _require_ring(A: FiniteHomRing) -> None:
    if A.ring_type != 1 or not A.unitary or not A.single_twist:
        raise PreconditionError("modules are defined over unitary α-Hom-rings of type (1)")
    require_hom_ring(A, "module ring")


def _same_ring(A: FiniteHomRing, B: FiniteHomRing) -> bool:
    if A is B:
        return True
    return A.n == B.n and all((getattr(A, t) == getattr(B, t)).all() for t in ("add", "mul", "alpha", "beta"))


# ---------------------------------------------------------------- axioms

def _left_axioms(M: FiniteHomModule) -> tuple[list[AxiomVerdict], list[AxiomVerdict]]:
    A, L, Mp, bt = M.ring, M.act_left, M.madd, M.beta
    S, P, al = A.add, A.mul, A.alpha
    ia, im = np.arange(A.n), np.arange(M.m)
    a, m1, m2 = ia[:, None, None], im[None, :, None], im[None, None, :]
    b, m = ia[None, :, None], im[None, None, :]
    axioms = [
        axiom_verdict("left-action-additive", L[al[a], Mp[m1, m2]] == Mp[L[a, m1], L[a, m2]]),
        axiom_verdict("left-scalar-additive", L[S[a, b], bt[m]] == Mp[L[a, m], L[b, m]]),
        axiom_verdict("left-hom-associativity", L[P[a, b], bt[m]] == L[al[a], L[b, m]]),
        axiom_verdict("left-unit", L[A.one, :] == bt),
    ]
    a2, m2d = ia[:, None], im[None, :]
    equivariance = axiom_verdict("left-twist-equivariance", bt[L[a2, m2d]] == L[al[a2], bt[m2d]])
    if not axioms[2].failed and not axioms[3].failed and equivariance.failed:
        raise InvariantViolation("beta(am) = alpha(a)beta(m) fails although it follows from the associativity "
                                 "and unit laws", witness=tuple(equivariance.witness))
    derived = [equivariance]
    if M.regular:
        derived.append(axiom_verdict("left-zero-action", L[A.zero, :] == M.mzero))
    else:
        derived.append(AxiomVerdict(name="left-zero-action", status="not_applicable", note="beta is not bijective"))
    return axioms, derived


def _right_axioms(M: FiniteHomModule) -> tuple[list[AxiomVerdict], list[AxiomVerdict]]:
    A, R, Mp, bt = M.ring, M.act_right, M.madd, M.beta
    S, P, al = A.add, A.mul, A.alpha
    ia, im = np.arange(A.n), np.arange(M.m)
    m1, m2, a = im[:, None, None], im[None, :, None], ia[None, None, :]
    m, a1, b = im[:, None, None], ia[None, :, None], ia[None, None, :]
    axioms = [
        axiom_verdict("right-action-additive", R[Mp[m1, m2], al[a]] == Mp[R[m1, a], R[m2, a]]),
        axiom_verdict("right-scalar-additive", R[bt[m], S[a1, b]] == Mp[R[m, a1], R[m, b]]),
        axiom_verdict("right-hom-associativity", R[bt[m], P[a1, b]] == R[R[m, a1], al[b]]),
        axiom_verdict("right-unit", R[:, A.one] == bt),
    ]
    m2d, a2d = im[:, None], ia[None, :]
    equivariance = axiom_verdict("right-twist-equivariance", bt[R[m2d, a2d]] == R[bt[m2d], al[a2d]])
    if not axioms[2].failed and not axioms[3].failed and equivariance.failed:
        raise InvariantViolation("beta(ma) = beta(m)alpha(a) fails although it follows from the associativity "
                                 "and unit laws", witness=tuple(equivariance.witness))
    derived = [equivariance]
    if M.regular:
        derived.append(axiom_verdict("right-zero-action", R[:, A.zero] == M.mzero))
    else:
        derived.append(AxiomVerdict(name="right-zero-action", status="not_applicable", note="beta is not bijective"))
    return axioms, derived


def _compatibility(left: np.ndarray, right: np.ndarray, alpha_r: np.ndarray, alpha_s: np.ndarray,
                   name: str) -> AxiomVerdict:
    r = np.arange(left.shape[0])[:, None, None]
    m = np.arange(left.shape[1])[None, :, None]
    s = np.arange(right.shape[1])[None, None, :]
    return axiom_verdict(name, right[left[r, m], alpha_s[s]] == left[alpha_r[r], right[m, s]])


def check_module(M: FiniteHomModule, side: Optional[Side] = None) -> ModuleReport:
    side = side or M.side
    _require_ring(M.ring)
    if side in ("left", "bi") and M.act_left is None:
        raise StructuralError("module has no left action")
    if side in ("right", "bi") and M.act_right is None:
        raise StructuralError("module has no right action")
    additive = check_hom_group(M.additive)
    axioms = [axiom_verdict("additive-abelian", M.madd == M.madd.T)]
    derived: list[AxiomVerdict] = []
    if side in ("left", "bi"):
        ax, dv = _left_axioms(M)
        axioms += ax
        derived += dv
    if side in ("right", "bi"):
        ax, dv = _right_axioms(M)
        axioms += ax
        derived += dv
    if side == "bi":
        alpha = M.ring.alpha
        axioms.append(_compatibility(M.act_left, M.act_right, alpha, alpha, "bimodule-compatibility"))
    report = ModuleReport(side=side, order=M.m, regular=M.regular, additive=additive, axioms=axioms,
                          derived=derived)
    logger.info(f"checked {M!r} as a {side} module: {len(report.failures)} failing laws")
    return report


def check_bimodule_rs(left: FiniteHomModule, right: FiniteHomModule) -> ModuleReport:
    """An R-S-bimodule: left action over left.ring, right action over right.ring, same carrier."""
    if left.m != right.m or not ((left.madd == right.madd).all() and (left.beta == right.beta).all()):
        raise PreconditionError("the two modules must share their additive Hom-group")
    lr, rr = check_module(left, "left"), check_module(right, "right")
    axioms = lr.axioms + [v for v in rr.axioms if v.name != "additive-abelian"]
    axioms.append(_compatibility(left.act_left, right.act_right, left.ring.alpha, right.ring.alpha,
                                 "rs-bimodule-compatibility"))
    return ModuleReport(side="bi", order=left.m, regular=left.regular, additive=lr.additive, axioms=axioms,
                        derived=lr.derived + rr.derived)


# ---------------------------------------------------------------- constructions

def regular_module(A: FiniteHomRing) -> FiniteHomModule:
    """A acting on itself by multiplication on both sides."""
    return FiniteHomModule(A, A.add, A.zero, A.beta, A.add_inv, A.mul, A.mul, name=f"{A.name or 'A'}-regular")


def right_as_left(M: FiniteHomModule) -> FiniteHomModule:
    if M.act_right is None:
        raise PreconditionError("module has no right action")
    if not M.ring.commutative:
        raise PreconditionError("right modules read as left modules need a commutative ring")
    return FiniteHomModule(M.ring, M.madd, M.mzero, M.beta, M.madd_inv, M.act_right.T.copy(), None,
                           name=f"{M.name or 'M'}-as-left")


def direct_sum(M: FiniteHomModule, N: FiniteHomModule) -> FiniteHomModule:
    if not _same_ring(M.ring, N.ring):
        raise PreconditionError("direct sums need modules over the same ring")
    k = N.m
    idx = np.arange(M.m * k)
    x, y = idx // k, idx % k
    madd = M.madd[x[:, None], x[None, :]] * k + N.madd[y[:, None], y[None, :]]
    beta = M.beta[x] * k + N.beta[y]
    inv = M.madd_inv[x] * k + N.madd_inv[y]
    left = right = None
    if M.act_left is not None and N.act_left is not None:
        left = M.act_left[:, x] * k + N.act_left[:, y]
    if M.act_right is not None and N.act_right is not None:
        right = M.act_right[x, :] * k + N.act_right[y, :]
    if left is None and right is None:
        raise PreconditionError("summands share no action side")
    S = FiniteHomModule.from_tables(M.ring, madd, M.mzero * k + N.mzero, beta, left, right, inv,
                                    name=f"{M.name or 'M'}⊕{N.name or 'N'}")
    if not ((S.beta // k == M.beta[x]) & (S.beta % k == N.beta[y])).all():
        raise InvariantViolation("beta of the direct sum is not the pair of betas")
    return S


# ---------------------------------------------------------------- submodules

def generated_submodule(M: FiniteHomModule, seeds: Sequence[int]) -> SubSet:
    mask = members_mask(list(seeds) + [M.mzero], M.m)
    while True:
        idx = np.flatnonzero(mask)
        grown = mask.copy()
        grown[M.madd[np.ix_(idx, idx)].ravel()] = True
        grown[M.madd_inv[idx]] = True
        grown[M.beta[idx]] = True
        if M.act_left is not None:
            grown[M.act_left[:, idx].ravel()] = True
        if M.act_right is not None:
            grown[M.act_right[idx, :].ravel()] = True
        if (grown == mask).all():
            return SubSet(M.additive, frozenset(int(i) for i in idx))
        mask = grown


def is_submodule(M: FiniteHomModule, S: SubSet) -> SubgroupVerdict:
    if M.mzero not in S:
        return SubgroupVerdict(holds=False, witness=[M.mzero], reason="zero missing")
    idx = np.array(S.sorted())
    mask = S.mask
    bad = first_failure(mask[M.madd[np.ix_(idx, idx)]])
    if bad is not None:
        x, y = int(idx[bad[0]]), int(idx[bad[1]])
        return SubgroupVerdict(holds=False, witness=[x, y, int(M.madd[x, y])], reason="not closed under addition")
    for label, image in (("additive inverse", M.madd_inv[idx]), ("beta", M.beta[idx])):
        bad = first_failure(mask[image])
        if bad is not None:
            return SubgroupVerdict(holds=False, witness=[int(idx[bad[0]])], reason=f"not closed under {label}")
    if M.act_left is not None:
        bad = first_failure(mask[M.act_left[:, idx]])
        if bad is not None:
            return SubgroupVerdict(holds=False, witness=[bad[0], int(idx[bad[1]])], reason="not closed under am")
    if M.act_right is not None:
        bad = first_failure(mask[M.act_right[idx, :]])
        if bad is not None:
            return SubgroupVerdict(holds=False, witness=[int(idx[bad[0]]), bad[1]], reason="not closed under ma")
    return SubgroupVerdict(holds=True)


def submodules(M: FiniteHomModule, budget: Optional[int] = None) -> tuple[list[SubSet], bool]:
    """Every submodule is the join of the cyclic submodules of its elements."""
    budget = budget or settings.closures
    found: dict[frozenset[int], SubSet] = {}
    closures = 0
    truncated = False
    for seed in range(M.m):
        closures += 1
        S = generated_submodule(M, [seed])
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
                J = generated_submodule(M, sorted(A.members | B.members))
                if J.members not in found:
                    found[J.members] = J
                    fresh.append(J)
            if truncated:
                break
        frontier = fresh
    if truncated:
        logger.warning(f"submodule enumeration of {M!r} truncated after {closures} closures")
    return sorted(found.values(), key=lambda S: (len(S), S.sorted())), truncated


def ker_beta(M: FiniteHomModule) -> SubSet:
    return SubSet(M.additive, frozenset(int(x) for x in np.flatnonzero(M.beta == M.mzero)))


def _certified(M: FiniteHomModule) -> bool:
    try:
        return check_module(M).passed
    except PreconditionError:
        return False


def restrict_module(M: FiniteHomModule, S: SubSet) -> FiniteHomModule:
    check = is_submodule(M, S)
    if not check:
        raise PreconditionError(f"not a submodule: {check.reason}", witness=check.witness)
    members = np.array(S.sorted())
    position = np.full(M.m, -1, dtype=np.int64)
    position[members] = np.arange(len(members))
    left = position[M.act_left[:, members]] if M.act_left is not None else None
    right = position[M.act_right[members, :]] if M.act_right is not None else None
    return FiniteHomModule.from_tables(M.ring, position[M.madd[np.ix_(members, members)]], int(position[M.mzero]),
                                       position[M.beta[members]], left, right, position[M.madd_inv[members]],
                                       name=f"{M.name or 'M'}|{len(members)}")


def submodule_analysis(M: FiniteHomModule, budget: Optional[int] = None) -> tuple[SubmoduleReport, list[SubSet]]:
    subs, truncated = submodules(M, budget)
    kernel = ker_beta(M)
    ker_ok = bool(is_submodule(M, kernel))
    if not ker_ok and _certified(M):
        raise InvariantViolation("ker beta of a certified module is not a submodule", witness=tuple(kernel.sorted()))
    is_simple = M.m > 1 and len(subs) == 2 and not truncated
    finding = None
    if is_simple and not M.regular:
        finding = "simple module whose beta is not bijective"
        logger.warning(f"{M!r}: {finding}; ker beta = {kernel.sorted()}")
    report = SubmoduleReport(order=M.m, status="truncated" if truncated else "complete",
                             submodules=[S.sorted() for S in subs], ker_beta=kernel.sorted(),
                             ker_beta_is_submodule=ker_ok, is_simple=is_simple, regular=M.regular, finding=finding)
    logger.info(f"{M!r} has {len(subs)} submodules, simple={is_simple}")
    return report, subs


def _is_simple_sub(M: FiniteHomModule, S: SubSet) -> bool:
    if len(S) < 2:
        return False
    return all(generated_submodule(M, [y]).members == S.members for y in S.members if y != M.mzero)


# ---------------------------------------------------------------- compatible modules

def compatibility_verdict(Mc: FiniteHomModule, alpha: np.ndarray, beta: np.ndarray) -> AxiomVerdict:
    """β(a⊳m) = α(a)⊳β(m) on every pair."""
    a = np.arange(Mc.ring.n)[:, None]
    m = np.arange(Mc.m)[None, :]
    L = Mc.act_left
    return axiom_verdict("compatibility", beta[L[a, m]] == L[alpha[a], beta[m]])


def hom_module_from_compatible(Mc: FiniteHomModule, beta: Sequence, ring: FiniteHomRing) -> FiniteHomModule:
    """Rebuild a Hom-module from an ordinary module over the compatible ring and an automorphism β."""
    if Mc.act_left is None:
        raise PreconditionError("the compatible module needs a left action")
    Rc = compatible_ring(ring)
    if not (Rc.n == Mc.ring.n and (Rc.add == Mc.ring.add).all() and (Rc.mul == Mc.ring.mul).all()):
        raise PreconditionError("module is not over the compatible ring of the given Hom-ring")
    b = as_table(beta, (Mc.m,), Mc.m, "beta")
    if not is_bijective(b):
        raise PreconditionError("beta must be bijective")
    bad = first_failure(b[Mc.madd] == Mc.madd[b[:, None], b[None, :]])
    if bad is not None:
        raise PreconditionError(f"beta is not additive at {bad}", witness=bad)
    compat = compatibility_verdict(Mc, ring.alpha, b)
    if compat.failed:
        raise PreconditionError("beta(a⊳m) = alpha(a)⊳beta(m) fails", witness=compat.witness)
    M = FiniteHomModule.from_tables(ring, b[Mc.madd], Mc.mzero, b, act_left=b[Mc.act_left],
                                    madd_inv=Mc.madd_inv, name=(Mc.name or "M").rstrip("'"))
    report = check_module(M, "left")
    if not report.passed:
        first = report.failures[0]
        raise InvariantViolation(f"rebuilt Hom-module fails {first.name}", witness=first.witness)
    return M


def compatible_module(M: FiniteHomModule) -> FiniteHomModule:
    """The ordinary module (M, β⁻¹∘+) over the compatible ring with a⊳m = β⁻¹(am)."""
    if M.act_left is None:
        raise PreconditionError("the compatible module is built from a left action")
    if not (M.regular and M.ring.regular):
        raise PreconditionError("the compatible module needs bijective beta and a regular ring")
    report = check_module(M, "left")
    if not report.passed:
        first = report.failures[0]
        raise PreconditionError(f"input is not a left module: {first.name} fails", witness=first.witness)
    Rc = compatible_ring(M.ring)
    b_inv = inverse_permutation(M.beta)
    Mc = FiniteHomModule.from_tables(Rc, b_inv[M.madd], M.mzero, identity_table(M.m), act_left=b_inv[M.act_left],
                                     madd_inv=M.madd_inv, name=f"{M.name or 'M'}'")
    ordinary = check_module(Mc, "left")
    if not ordinary.passed:
        first = ordinary.failures[0]
        raise InvariantViolation(f"compatible module fails {first.name}", witness=first.witness)
    back = hom_module_from_compatible(Mc, M.beta, M.ring)
    for label in ("madd", "act_left"):
        bad = first_failure(getattr(back, label) == getattr(M, label))
        if bad is not None:
            raise InvariantViolation(f"round trip through the compatible module differs in {label}", witness=bad)
    return Mc


# ---------------------------------------------------------------- semisimplicity

def _orbit_length(beta: np.ndarray, x: int) -> int:
    k, y = 1, int(beta[x])
    while y != x:
        y = int(beta[y])
        k += 1
    return k


def _internal_sum(Mc: FiniteHomModule, summands: list[SubSet]) -> tuple[bool, bool, Optional[list[int]]]:
    partial = SubSet(Mc.additive, frozenset([Mc.mzero]))
    direct, witness = True, None
    for i, S in enumerate(summands):
        overlap = sorted((S.members & partial.members) - {Mc.mzero})
        if overlap and direct:
            direct, witness = False, [i, overlap[0]]
        partial = generated_submodule(Mc, sorted(partial.members | S.members))
    return direct, len(partial) == Mc.m, witness


def semisimple_decomposition(M: FiniteHomModule) -> DecompositionReport:
    """Split the compatible module along the β-orbit of one generator: A⊳m ⊕ A⊳β(m) ⊕ ... ."""
    analysis, _ = submodule_analysis(M)
    if not analysis.is_simple:
        logger.warning(f"{M!r} is not simple; decomposing without that hypothesis")
    Mc = compatible_module(M)
    nonzero = [x for x in range(M.m) if x != M.mzero]
    if not nonzero:
        raise PreconditionError("the zero module has no generator to decompose along")
    candidates = sorted(nonzero, key=lambda x: (-_orbit_length(M.beta, x), x))
    rejected: list[dict[str, object]] = []
    fallback = None
    chosen = None
    for x in candidates:
        k = _orbit_length(M.beta, x)
        orbit, y = [], x
        for _ in range(k):
            orbit.append(y)
            y = int(M.beta[y])
        summands = [generated_submodule(Mc, [y]) for y in orbit]
        direct, covers, witness = _internal_sum(Mc, summands)
        if direct and covers:
            chosen = (x, k, summands, direct, covers, witness)
            break
        if fallback is None:
            fallback = (x, k, summands, direct, covers, witness)
        else:
            rejected.append({"generator": x, "orbit_length": k, "covers": covers, "overlap": witness})
    if chosen is None:
        chosen = fallback
        logger.warning(f"no generator of {M!r} gives an internal direct sum; overlap {fallback[5]}")
    elif fallback is not None:
        x0, k0, _, _, covers0, witness0 = fallback
        rejected.insert(0, {"generator": x0, "orbit_length": k0, "covers": covers0, "overlap": witness0})
    x, k, summands, direct, covers, witness = chosen
    report = DecompositionReport(generator=x, module_simple=analysis.is_simple, orbit_length=k,
                                 summands=[S.sorted() for S in summands], direct=direct, covers=covers,
                                 summands_simple=[_is_simple_sub(Mc, S) for S in summands],
                                 rejected=rejected, overlap_witness=witness)
    logger.info(f"decomposition of {M!r} along {x}: {len(summands)} summands, direct={direct}")
    return report


def hom_ring_simplicity(A: FiniteHomRing, budget: Optional[int] = None) -> SimplicityReport:
    """Simplicity and semisimplicity of A over itself, acting on both sides."""
    M = regular_module(A)
    analysis, subs = submodule_analysis(M, budget)
    note = None if A.unitary else "ring is not unitary; only the submodule lattice is used"
    if analysis.status == "truncated":
        return SimplicityReport(status="inconclusive", is_simple=False, is_semisimple=False, regular=A.regular,
                                submodules=len(subs), note="submodule lattice truncated")
    if analysis.is_simple and not A.regular:
        note = "simple Hom-ring whose twist is not bijective"
        logger.warning(f"{A!r}: {note}")
    simples = [S for S in subs if _is_simple_sub(M, S)]
    total = SubSet(M.additive, frozenset([M.mzero]))
    chosen: list[SubSet] = []
    for T in simples:
        if len(T.members & total.members) > 1:
            continue
        joined = generated_submodule(M, sorted(total.members | T.members))
        if len(joined) == len(total) * len(T):
            chosen.append(T)
            total = joined
    semisimple = len(total) == A.n
    report = SimplicityReport(status="complete", is_simple=analysis.is_simple, is_semisimple=semisimple,
                              regular=A.regular, simple_summands=[S.sorted() for S in chosen] if semisimple else [],
                              submodules=len(subs), note=note)
    logger.info(f"{A!r}: simple={report.is_simple}, semisimple={semisimple}")
    return report


# ---------------------------------------------------------------- homomorphisms

def is_module_homomorphism(f: Sequence, M: FiniteHomModule, N: FiniteHomModule,
                           reading: Reading = "twisted") -> AxiomReport:
    """Additive, β-equivariant, and f(am) = α(a)f(m) (twisted) or f(am) = a f(m) (plain)."""
    if not _same_ring(M.ring, N.ring):
        raise PreconditionError("homomorphisms need modules over the same ring")
    if M.act_left is None or N.act_left is None:
        raise PreconditionError("module homomorphisms are checked on left actions")
    F = as_table(f, (M.m,), N.m, "f")
    x, y = np.arange(M.m)[:, None], np.arange(M.m)[None, :]
    a = np.arange(M.ring.n)[:, None]
    scalar = M.ring.alpha[a] if reading == "twisted" else a
    axioms = [
        axiom_verdict("additive", F[M.madd[x, y]] == N.madd[F[x], F[y]]),
        axiom_verdict("beta-equivariant", F[M.beta] == N.beta[F]),
        axiom_verdict(f"action-{reading}", F[M.act_left[a, y]] == N.act_left[scalar, F[y]]),
    ]
    derived: list[AxiomVerdict] = []
    if not any(v.failed for v in axioms):
        kernel = SubSet(M.additive, frozenset(int(v) for v in np.flatnonzero(F == N.mzero)))
        image = SubSet(N.additive, frozenset(int(v) for v in F))
        for name, owner, S in (("kernel-submodule", M, kernel), ("image-submodule", N, image)):
            verdict = is_submodule(owner, S)
            derived.append(AxiomVerdict(name=name, status="pass" if verdict else "fail", witness=verdict.witness,
                                        note=verdict.reason))
    return AxiomReport(structure=f"module-homomorphism-{reading}", order=M.m, axioms=axioms, derived=derived,
                       regular=M.regular)


# ---------------------------------------------------------------- tensor products over R

def hom_R_bilinear_check(M: FiniteHomModule, N: FiniteHomModule, C: FiniteHomGroup, f: Sequence) -> BilinearReport:
    """Bilinearity over R for a right module M and a left module N, including the balanced identity."""
    if M.act_right is None or N.act_left is None:
        raise PreconditionError("need a right module on the left and a left module on the right")
    if not _same_ring(M.ring, N.ring):
        raise PreconditionError("both modules must be over the same ring")
    F = as_table(f, (M.m, N.m), C.n, "bilinear map")
    report = is_hom_bilinear(M.additive, N.additive, C, F)
    a = np.arange(M.m)[:, None, None]
    r = np.arange(M.ring.n)[None, :, None]
    b = np.arange(N.m)[None, None, :]
    report.identities.append(axiom_verdict("balanced", F[M.act_right[a, r], N.beta[b]]
                                           == F[M.beta[a], N.act_left[r, b]]))
    return report


@dataclass(frozen=True, eq=False)
class ModuleTensor:
    candidate: TensorCandidate
    bilinear: BilinearReport
    left_action: Optional[AxiomVerdict] = None


def tensor_over_R_oracle(M: FiniteHomModule, N: FiniteHomModule, bound: Optional[int] = None) -> ModuleTensor:
    if M.act_right is None or N.act_left is None:
        raise PreconditionError("need a right module on the left and a left module on the right")
    if not _same_ring(M.ring, N.ring):
        raise PreconditionError("both modules must be over the same ring")
    if not (M.regular and N.regular):
        raise PreconditionError("tensor products over R need regular modules")
    A, B = M.additive, N.additive
    rows = bilinear_relations(A, B)
    size = M.m * N.m
    for a, r, b in product(range(M.m), range(M.ring.n), range(N.m)):
        row = [0] * size
        row[int(M.act_right[a, r]) * N.m + int(N.beta[b])] += 1
        row[int(M.beta[a]) * N.m + int(N.act_left[r, b])] -= 1
        if any(row):
            rows.append(row)
    theta_of = [int(M.beta[k // N.m]) * N.m + int(N.beta[k % N.m]) for k in range(size)]
    pres = present_twisted(size, rows, theta_of, f"{M.name or 'M'}⊗R{N.name or 'N'}", bound)
    tau = pres.generators.reshape(M.m, N.m)
    report = hom_R_bilinear_check(M, N, pres.carrier, tau)
    if not report.bilinear:
        first = next(v for v in report.identities if v.failed)
        raise InvariantViolation(f"canonical map over R fails {first.name}", witness=tuple(first.witness))

    left_action = None
    if M.act_left is not None:
        # r(a⊗b) = (ra)⊗b must not depend on the pure tensor chosen
        left_action = AxiomVerdict(name="left-action-well-defined")
        for r in range(M.ring.n):
            image: dict[int, int] = {}
            for a, b in product(range(M.m), range(N.m)):
                t, moved = int(tau[a, b]), int(tau[M.act_left[r, a], b])
                if image.setdefault(t, moved) != moved:
                    left_action = AxiomVerdict(name="left-action-well-defined", status="fail", witness=[r, a, b])
                    break
            if left_action.failed:
                break
    cand = TensorCandidate(A, B, pres.carrier, tau, "oracle", invariant_factors(pres.moduli), pres.add)
    logger.info(f"tensor product over R has order {cand.order}")
    return ModuleTensor(cand, report, left_action)
