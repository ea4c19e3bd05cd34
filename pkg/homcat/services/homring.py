"""Finite Hom-rings of type (1) and (2).

A Hom-ring carries two twists: α deforms the abelian Hom-group of the
addition and β deforms associativity of the product. Ordinary rings are the
case α = β = id. All checks broadcast over every pair or triple of elements.
"""
from __future__ import annotations
from dataclasses import dataclass
from functools import cached_property
from typing import Literal, Optional, Sequence
import logging

import numpy as np

from ..config import settings
from ..errors import BudgetExceeded, InvariantViolation, PreconditionError, StructuralError
from ..models.schemas import AxiomReport, AxiomVerdict, CenterReport, HomRingSpec, RingReport
from ..utils.tables import as_table, axiom_verdict, first_failure, identity_table, inverse_permutation, is_bijective
from .homgroup import FiniteHomGroup, HomMap, check_hom_group, derive_inverse, enumerate_homomorphisms, require_hom_group

logger = logging.getLogger(__name__)

RingType = Literal[1, 2]


@dataclass(frozen=True, eq=False)
class FiniteHomRing:
    add: np.ndarray
    mul: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    zero: int
    add_inv: np.ndarray
    one: Optional[int] = None
    ring_type: int = 1
    name: str = ""

    @classmethod
    def from_tables(cls, add: Sequence, mul: Sequence, alpha: Sequence, beta: Sequence, zero: int,
                    one: Optional[int] = None, ring_type: int = 1, add_inv: Optional[Sequence] = None,
                    name: str = "") -> "FiniteHomRing":
        n = len(alpha)
        if n == 0:
            raise StructuralError("a Hom-ring needs at least one element")
        if ring_type not in (1, 2):
            raise StructuralError(f"ring type must be 1 or 2, got {ring_type}")
        add_t = as_table(add, (n, n), n, "add")
        mul_t = as_table(mul, (n, n), n, "mul")
        alpha_t = as_table(alpha, (n,), n, "alpha")
        beta_t = as_table(beta, (n,), n, "beta")
        for label, value in (("zero", zero), ("one", one)):
            if value is not None and not 0 <= int(value) < n:
                raise StructuralError(f"{label} {value} out of range [0, {n})", witness=(int(value),))
        if add_inv is None:
            neg = derive_inverse(add_t, alpha_t, int(zero))
        else:
            neg = as_table(add_inv, (n,), n, "add_inv")
        return cls(add_t, mul_t, alpha_t, beta_t, int(zero), neg, None if one is None else int(one),
                   int(ring_type), name)

    @classmethod
    def from_spec(cls, spec: HomRingSpec) -> "FiniteHomRing":
        return cls.from_tables(spec.add, spec.mul, spec.alpha, spec.beta, spec.zero, spec.one,
                               spec.ring_type, spec.add_inv, spec.name or "")

    def to_spec(self) -> HomRingSpec:
        return HomRingSpec(n=self.n, zero=self.zero, one=self.one, add=self.add.tolist(), mul=self.mul.tolist(),
                           alpha=self.alpha.tolist(), beta=self.beta.tolist(), ring_type=self.ring_type,
                           add_inv=self.add_inv.tolist(), name=self.name or None)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def unitary(self) -> bool:
        return self.one is not None

    @cached_property
    def regular(self) -> bool:
        return is_bijective(self.alpha) and is_bijective(self.beta)

    @cached_property
    def commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    @property
    def single_twist(self) -> bool:
        return bool((self.alpha == self.beta).all())

    @cached_property
    def additive(self) -> FiniteHomGroup:
        return FiniteHomGroup(self.add, self.alpha, self.zero, self.add_inv, name=f"({self.name or 'A'},+)")

    def __repr__(self) -> str:
        label = self.name or "HomRing"
        return f"<{label} n={self.n} type={self.ring_type} unitary={self.unitary} regular={self.regular}>"


def ordinary_ring(add: Sequence, mul: Sequence, zero: int, one: Optional[int] = None,
                  add_inv: Optional[Sequence] = None, name: str = "") -> FiniteHomRing:
    """An ordinary ring, i.e. a Hom-ring with α = β = id."""
    n = len(add)
    ident = identity_table(n)
    return FiniteHomRing.from_tables(add, mul, ident, ident, zero, one, 1, add_inv, name)


def _axes(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    idx = np.arange(n)
    return idx[:, None, None], idx[None, :, None], idx[None, None, :]


def _structure_axioms(A: FiniteHomRing) -> list[AxiomVerdict]:
    S, P, a, b = A.add, A.mul, A.alpha, A.beta
    X, Y, _ = _axes(A.n)
    x, y = X[:, :, 0], Y[:, :, 0]
    return [
        axiom_verdict("additive-abelian", S == S.T),
        axiom_verdict("beta-additive", b[S[x, y]] == S[b[x], b[y]]),
        axiom_verdict("alpha-beta-commute", a[b] == b[a]),
        axiom_verdict("alpha-multiplicative", a[P[x, y]] == P[a[x], a[y]]),
        axiom_verdict("beta-multiplicative", b[P[x, y]] == P[b[x], b[y]]),
    ]


def _type1_axioms(A: FiniteHomRing) -> list[AxiomVerdict]:
    S, P, a, b = A.add, A.mul, A.alpha, A.beta
    X, Y, Z = _axes(A.n)
    axioms = [
        axiom_verdict("hom-associativity", P[b[X], P[Y, Z]] == P[P[X, Y], b[Z]]),
        axiom_verdict("left-distributivity", P[a[X], S[Y, Z]] == S[P[X, Y], P[X, Z]]),
        axiom_verdict("right-distributivity", P[S[Y, Z], a[X]] == S[P[Y, X], P[Z, X]]),
    ]
    if A.unitary:
        u = A.one
        axioms.append(axiom_verdict("unit-law", (P[:, u] == b) & (P[u, :] == b)))
        axioms.append(axiom_verdict("unit-fixed", np.array([a[u] == u, b[u] == u])))
    return axioms


def _type2_axioms(A: FiniteHomRing) -> list[AxiomVerdict]:
    S, P, a, b = A.add, A.mul, A.alpha, A.beta
    X, Y, Z = _axes(A.n)
    a2, b2 = a[a], b[b]
    axioms = [
        axiom_verdict("hom-associativity", P[b[a2[X]], P[b[a[Y]], b2[Z]]] == P[P[a2[X], b[a[Y]]], b2[a[Z]]]),
        axiom_verdict("left-distributivity", P[a2[X], b[S[Y, Z]]] == S[P[a[X], b[Y]], P[a[X], b[Z]]]),
        axiom_verdict("right-distributivity", P[a[S[Y, Z]], a[b[X]]] == S[P[a[Y], b[X]], P[a[Z], b[X]]]),
    ]
    if A.unitary:
        u = A.one
        axioms.append(axiom_verdict("unit-law", (P[:, u] == b) & (P[u, :] == a)))
        axioms.append(axiom_verdict("unit-fixed", np.array([a[u] == u, b[u] == u])))
    return axioms


def check_hom_ring(A: FiniteHomRing) -> RingReport:
    additive = check_hom_group(A.additive)
    axioms = _structure_axioms(A)
    axioms += _type1_axioms(A) if A.ring_type == 1 else _type2_axioms(A)
    by_name = {v.name: v for v in axioms}

    if A.ring_type == 1 and A.unitary:
        premises = ("hom-associativity", "left-distributivity", "unit-law", "unit-fixed", "alpha-multiplicative")
        if all(not by_name[p].failed for p in premises):
            for law in ("beta-additive", "beta-multiplicative"):
                if by_name[law].failed:
                    raise InvariantViolation(f"{law} fails although the unit and associativity laws force it",
                                             witness=tuple(by_name[law].witness))

    derived: list[AxiomVerdict] = []
    if additive.passed and not any(v.failed for v in axioms) and A.unitary and A.regular:
        P, neg, z = A.mul, A.add_inv, A.zero
        idx = np.arange(A.n)
        x, y = idx[:, None], idx[None, :]
        derived.append(axiom_verdict("zero-law", (P[:, z] == z) & (P[z, :] == z)))
        derived.append(axiom_verdict("negation-law", (P[neg[x], y] == neg[P[x, y]]) & (P[x, neg[y]] == neg[P[x, y]])))
        for v in derived:
            if v.failed:
                logger.warning(f"{A!r} passes its axioms but fails {v.name} at {v.witness}")
    else:
        derived = [AxiomVerdict(name=name, status="not_applicable", note="needs a passing unitary regular ring")
                   for name in ("zero-law", "negation-law")]

    report = RingReport(ring_type=A.ring_type, order=A.n, unitary=A.unitary, regular=A.regular,
                        additive=additive, axioms=axioms, derived=derived)
    logger.info(f"checked {A!r} as type ({A.ring_type}): {len(report.failures)} failing laws")
    return report


def require_hom_ring(A: FiniteHomRing, what: str = "input") -> RingReport:
    report = check_hom_ring(A)
    if not report.passed:
        first = report.failures[0]
        raise PreconditionError(f"{what} is not a type ({A.ring_type}) Hom-ring: {first.name} fails",
                                witness=first.witness)
    return report


def _certify(A: FiniteHomRing, what: str) -> FiniteHomRing:
    if A.n > settings.certify_max_order:
        logger.info(f"{what} of order {A.n} exceeds the certification bound; skipping the triple scan")
        return A
    report = check_hom_ring(A)
    if not report.passed:
        first = report.failures[0]
        raise InvariantViolation(f"{what} failed {first.name}", witness=first.witness)
    return A


# ---------------------------------------------------------------- twist and untwist

def _require_ring_endomorphism(R: FiniteHomRing, f: np.ndarray, label: str) -> None:
    idx = np.arange(R.n)
    x, y = idx[:, None], idx[None, :]
    for what, ok in (("additive", f[R.add[x, y]] == R.add[f[x], f[y]]),
                     ("multiplicative", f[R.mul[x, y]] == R.mul[f[x], f[y]])):
        bad = first_failure(ok)
        if bad is not None:
            raise PreconditionError(f"{label} is not {what} at {bad}", witness=bad)


def twist_ring(R: FiniteHomRing, alpha: Sequence, beta: Sequence, ring_type: RingType = 1,
               name: str = "") -> FiniteHomRing:
    """The twist ring R_{α,β}: x +~ y = α(x+y) and x ·~ y = β(xy) (type 1) or β(x)α(y) (type 2)."""
    if not (R.alpha == identity_table(R.n)).all() or not (R.beta == identity_table(R.n)).all():
        raise PreconditionError("twist_ring expects an ordinary ring (identity twists)")
    if R.n <= settings.certify_max_order:
        require_hom_ring(R, "base ring")
    a = as_table(alpha, (R.n,), R.n, "alpha")
    b = as_table(beta, (R.n,), R.n, "beta")
    _require_ring_endomorphism(R, a, "alpha")
    _require_ring_endomorphism(R, b, "beta")
    bad = first_failure(a[b] == b[a])
    if bad is not None:
        raise PreconditionError(f"alpha and beta do not commute at {bad[0]}", witness=bad)

    add = a[R.add]
    mul = b[R.mul] if ring_type == 1 else R.mul[b[:, None], a[None, :]]
    one = R.one if R.one is not None and a[R.one] == R.one and b[R.one] == R.one else None
    if R.one is not None and one is None:
        logger.info("twists move the unit; the twist ring is not unitary")
    A = FiniteHomRing.from_tables(add, mul, a, b, R.zero, one, ring_type, R.add_inv,
                                  name or f"{R.name or 'R'}_twist{ring_type}")
    return _certify(A, "twist ring")


def compatible_ring(A: FiniteHomRing) -> FiniteHomRing:
    """The ordinary ring hidden in a regular Hom-ring, returned with identity twists."""
    if not A.regular:
        raise PreconditionError("the compatible ring needs bijective alpha and beta")
    require_hom_ring(A)
    a_inv, b_inv = inverse_permutation(A.alpha), inverse_permutation(A.beta)
    add = a_inv[A.add]
    if A.ring_type == 1:
        mul = b_inv[A.mul]
    else:
        mul = A.mul[b_inv[:, None], a_inv[None, :]]
    R = ordinary_ring(add, mul, A.zero, A.one, A.add_inv, name=f"{A.name or 'A'}'")
    report = check_hom_ring(R)
    if not report.passed:
        first = report.failures[0]
        raise InvariantViolation(f"compatible ring fails {first.name}", witness=first.witness)
    back = twist_ring(R, A.alpha, A.beta, A.ring_type)
    for label in ("add", "mul"):
        bad = first_failure(getattr(back, label) == getattr(A, label))
        if bad is not None:
            raise InvariantViolation(f"twist of the compatible ring differs in {label}", witness=bad)
    return R


def type_equivalence_check(A: FiniteHomRing) -> AxiomReport:
    """Both families of derived identities on a regular α-Hom-ring."""
    if not A.regular:
        raise PreconditionError("type equivalence needs a regular Hom-ring")
    if not A.single_twist:
        bad = first_failure(A.alpha == A.beta)
        raise PreconditionError("type equivalence needs alpha = beta", witness=bad)
    S, P, a, b = A.add, A.mul, A.alpha, A.beta
    a_inv = inverse_permutation(a)
    X, Y, Z = _axes(A.n)
    a2, b2, b3 = a[a], b[b], b[b[b]]
    ba = b[a]
    identities = [
        # type (2) forms inside a type (1) ring
        axiom_verdict("type2-associativity", P[b[a2[X]], P[ba[Y], b2[Z]]] == P[a[P[a[X], b[Y]]], b3[Z]]),
        axiom_verdict("type2-rebracketing", P[P[a2[X], ba[Y]], b2[a[Z]]] == ba[P[a[X], P[Y, Z]]]),
        axiom_verdict("type2-left-distributivity", P[a2[X], b[S[Y, Z]]] == S[P[a[X], b[Y]], P[a[X], b[Z]]]),
        axiom_verdict("type2-right-distributivity", P[a[S[Y, Z]], a[b[X]]] == S[P[a[Y], b[X]], P[a[Z], b[X]]]),
        # type (1) forms inside a regular type (2) ring
        axiom_verdict("type1-associativity", P[b[X], P[Y, Z]] == P[P[X, Y], a[Z]]),
        axiom_verdict("type1-rebracketing", P[P[X, Y], b[Z]] == P[b[X], P[Y, b[a_inv[Z]]]]),
        axiom_verdict("type1-left-distributivity", P[a[X], S[Y, Z]] == S[P[X, Y], P[X, Z]]),
        axiom_verdict("type1-right-distributivity", P[S[Y, Z], a[X]] == S[P[Y, X], P[Z, X]]),
    ]
    report = AxiomReport(structure="type-equivalence", order=A.n, axioms=identities, regular=True,
                         abelian=A.commutative)
    logger.info(f"type equivalence on {A!r}: {len(report.failures)} failing identities")
    return report


# ---------------------------------------------------------------- center

def ring_center(A: FiniteHomRing) -> CenterReport:
    """Z(A) for type (1), Z'(A) = {x : x·β(a) = α(a)·x} for type (2), with a Hom-subring certificate."""
    if not (A.unitary and A.regular):
        raise PreconditionError("the center is defined for unitary regular Hom-rings")
    P, S, a, b, neg = A.mul, A.add, A.alpha, A.beta, A.add_inv
    if A.ring_type == 1:
        central = (P == P.T).all(axis=1)
    else:
        central = (P[:, b] == P[a, :].T).all(axis=1)
    members = np.flatnonzero(central)
    m = members[:, None], members[None, :]
    certificate = [
        AxiomVerdict(name="contains-zero", status="pass" if central[A.zero] else "fail"),
        AxiomVerdict(name="contains-one", status="pass" if central[A.one] else "fail"),
        axiom_verdict("closed-add", central[S[m]]),
        axiom_verdict("closed-negation", central[neg[members]]),
        axiom_verdict("closed-mul", central[P[m]]),
        axiom_verdict("alpha-stable", central[a[members]]),
        axiom_verdict("beta-stable", central[b[members]]),
    ]
    for v in certificate:
        if v.failed:
            logger.warning(f"center of {A!r} fails {v.name}")
            if v.witness is not None:
                v.witness = [int(members[i]) for i in v.witness]
    report = CenterReport(members=members.tolist(), proper=len(members) < A.n, certificate=certificate)
    logger.info(f"center of {A!r} has order {len(members)}")
    return report


# ---------------------------------------------------------------- endomorphism rings

def endomorphism_hom_ring(M: FiniteHomGroup, budget: Optional[int] = None) -> tuple[FiniteHomRing, list[HomMap]]:
    """(End(M), +, ∘, 0, α_M∘-, id) for an abelian regular Hom-group M.

    The tables follow the construction literally; whether they satisfy the
    type (1) axioms is left to check_hom_ring.
    """
    require_hom_group(M, "module")
    if not (M.abelian and M.regular):
        raise PreconditionError("End(M) needs an abelian regular Hom-group")
    search = enumerate_homomorphisms(M, M, budget)
    if search.status != "complete":
        raise BudgetExceeded(f"endomorphism search truncated after {search.nodes} nodes")
    tables = [h.table for h in search.maps]
    position = {tuple(t.tolist()): i for i, t in enumerate(tables)}

    def lookup(values: np.ndarray) -> int:
        key = tuple(int(v) for v in values)
        if key not in position:
            raise InvariantViolation("End(M) is not closed", witness=key)
        return position[key]

    size = len(tables)
    add = [[lookup(M.mul[tables[i], tables[j]]) for j in range(size)] for i in range(size)]
    mul = [[lookup(tables[i][tables[j]]) for j in range(size)] for i in range(size)]
    alpha = [lookup(M.alpha[t]) for t in tables]
    neg = [lookup(M.inv[t]) for t in tables]
    zero = lookup(np.full(M.n, M.e))
    one = lookup(identity_table(M.n))
    E = FiniteHomRing.from_tables(add, mul, alpha, identity_table(size), zero, one, 1, neg,
                                  name=f"End({M.name or 'M'})")
    logger.info(f"End({M.name or 'M'}) has {size} elements")
    return E, search.maps
