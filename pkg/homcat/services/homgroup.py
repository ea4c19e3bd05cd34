"""Finite Hom-groups as lookup tables.

Every check here is exhaustive: the tables are small enough to broadcast over
all pairs, triples or quadruples at once, and the first failing index tuple
returned by ``np.argwhere`` is the lexicographically smallest witness.
"""
from __future__ import annotations
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence
import logging

import numpy as np

from ..config import settings
from ..errors import BudgetExceeded, InvariantViolation, PreconditionError, StructuralError
from ..models.schemas import AxiomReport, AxiomVerdict, HomGroupSpec, HomSearchReport, QAdditiveReport
from ..utils.search import TableSearch
from ..utils.tables import as_table, axiom_verdict, first_failure, identity_table, is_bijective, power_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteHomGroup:
    mul: np.ndarray
    alpha: np.ndarray
    e: int
    inv: np.ndarray
    name: str = ""

    @classmethod
    def from_tables(cls, mul: Sequence, alpha: Sequence, e: int, inv: Optional[Sequence] = None,
                    name: str = "") -> "FiniteHomGroup":
        n = len(alpha)
        if n == 0:
            raise StructuralError("a Hom-group needs at least one element")
        mul_t = as_table(mul, (n, n), n, "mul")
        alpha_t = as_table(alpha, (n,), n, "alpha")
        if not 0 <= int(e) < n:
            raise StructuralError(f"identity {e} out of range [0, {n})", witness=(int(e),))
        inv_t = as_table(inv, (n,), n, "inv") if inv is not None else derive_inverse(mul_t, alpha_t, int(e))
        return cls(mul_t, alpha_t, int(e), inv_t, name)

    @classmethod
    def from_spec(cls, spec: HomGroupSpec) -> "FiniteHomGroup":
        return cls.from_tables(spec.mul, spec.alpha, spec.e, spec.inv, spec.name or "")

    def to_spec(self) -> HomGroupSpec:
        return HomGroupSpec(n=self.n, e=self.e, mul=self.mul.tolist(), alpha=self.alpha.tolist(),
                            inv=self.inv.tolist(), name=self.name or None)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @cached_property
    def inv_index(self) -> np.ndarray:
        """Smallest k <= n with α^k(g g⁻¹) = α^k(g⁻¹ g) = e, or -1 when there is none."""
        idx = np.arange(self.n)
        left = self.mul[idx, self.inv]
        right = self.mul[self.inv, idx]
        out = np.full(self.n, -1, dtype=np.int64)
        for k in range(self.n + 1):
            done = (left == self.e) & (right == self.e) & (out < 0)
            out[done] = k
            left = self.alpha[left]
            right = self.alpha[right]
        out.setflags(write=False)
        return out

    @cached_property
    def regular(self) -> bool:
        return is_bijective(self.alpha)

    @cached_property
    def abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def __repr__(self) -> str:
        label = self.name or "HomGroup"
        return f"<{label} n={self.n} regular={self.regular} abelian={self.abelian}>"


def derive_inverse(mul: np.ndarray, alpha: np.ndarray, e: int) -> np.ndarray:
    """Recover the inverse map when it is forced, i.e. when α is bijective."""
    if not is_bijective(alpha):
        raise StructuralError("alpha is not bijective; the inverse map must be given explicitly")
    both = (mul == e) & (mul.T == e)
    counts = both.sum(axis=1)
    bad = first_failure(counts == 1)
    if bad is not None:
        raise StructuralError(f"element {bad[0]} has {int(counts[bad[0]])} two-sided inverses", witness=bad)
    inv = np.argmax(both, axis=1).astype(np.int64)
    inv.setflags(write=False)
    return inv


def check_hom_group(G: FiniteHomGroup) -> AxiomReport:
    M, A, I, e, n = G.mul, G.alpha, G.inv, G.e, G.n
    assoc = M[A[:, None, None], M[None, :, :]] == M[M[:, :, None], A[None, None, :]]
    mult = A[M] == M[A[:, None], A[None, :]]
    unit = (M[:, e] == A) & (M[e, :] == A)
    unit[e] &= bool(A[e] == e)
    anti = I[M] == M[I[None, :], I[:, None]]
    invertible = G.inv_index >= 0

    axioms = [
        axiom_verdict("hom-associativity", assoc),
        axiom_verdict("alpha-multiplicative", mult),
        axiom_verdict("hom-unitarity", unit),
        axiom_verdict("inverse-antimorphism", anti),
        axiom_verdict("hom-invertibility", invertible),
    ]
    derived: list[AxiomVerdict] = []
    if axioms[0].status == "pass" and axioms[2].status == "pass" and axioms[1].status == "fail":
        # α(gh) = (gh)α(e) = α(g)(he) is forced by the other two axioms
        raise InvariantViolation("alpha multiplicativity failed although it follows from "
                                 "hom-associativity and hom-unitarity", witness=tuple(axioms[1].witness))
    if all(v.status == "pass" for v in axioms):
        derived.append(axiom_verdict("alpha-inverse-commute", A[I] == I[A]))
        if G.regular:
            same = (M[:, :, None] == M[:, None, :]) & (np.arange(n)[:, None] != np.arange(n)[None, :])[None]
            derived.append(axiom_verdict("left-cancellation", ~same))
        else:
            derived.append(AxiomVerdict(name="left-cancellation", status="not_applicable",
                                        note="alpha is not bijective"))
    report = AxiomReport(order=n, axioms=axioms, derived=derived, regular=G.regular,
                         abelian=G.abelian, inv_index=G.inv_index.tolist())
    logger.info(f"checked {G!r}: {len(report.failures)} failing laws")
    return report


def require_hom_group(G: FiniteHomGroup, what: str = "input") -> None:
    report = check_hom_group(G)
    if not report.passed:
        first = report.failures[0]
        raise PreconditionError(f"{what} is not a Hom-group: {first.name} fails", witness=first.witness)


def _require_output(G: FiniteHomGroup, what: str) -> FiniteHomGroup:
    report = check_hom_group(G)
    if not report.passed:
        first = report.failures[0]
        raise InvariantViolation(f"{what} failed {first.name}", witness=first.witness)
    return G


def inverse_and_index(G: FiniteHomGroup, g: int) -> tuple[int, int]:
    if not 0 <= g < G.n:
        raise StructuralError(f"element {g} out of range [0, {G.n})", witness=(g,))
    k = int(G.inv_index[g])
    if k < 0:
        raise PreconditionError(f"no invertibility index <= {G.n} for element {g}", witness=(g,))
    ag = int(G.alpha[g])
    k_next = int(G.inv_index[ag])
    if k_next != max(k - 1, 0):
        raise InvariantViolation(f"index of alpha({g}) is {k_next}, expected {max(k - 1, 0)}", witness=(g,))
    return int(G.inv[g]), k


def alpha_power(G: FiniteHomGroup, g: int, k: int) -> int:
    if k < 0 and not G.regular:
        raise PreconditionError("negative powers of alpha need a regular Hom-group")
    return int(power_table(G.alpha, k)[g])


# ---------------------------------------------------------------- constructions

def group_unit_and_inverse(mul: np.ndarray) -> tuple[int, np.ndarray]:
    n = len(mul)
    idx = np.arange(n)
    assoc = mul[mul[:, :, None], idx[None, None, :]] == mul[idx[:, None, None], mul[None, :, :]]
    bad = first_failure(assoc)
    if bad is not None:
        raise PreconditionError(f"group table is not associative at {bad}", witness=bad)
    units = [u for u in range(n) if (mul[u] == idx).all() and (mul[:, u] == idx).all()]
    if not units:
        raise PreconditionError("group table has no identity")
    e = units[0]
    both = (mul == e) & (mul.T == e)
    bad = first_failure(both.any(axis=1))
    if bad is not None:
        raise PreconditionError(f"element {bad[0]} has no inverse", witness=bad)
    return e, np.argmax(both, axis=1).astype(np.int64)


def twist_group(group_mul: Sequence, endo: Sequence, name: str = "") -> FiniteHomGroup:
    n = len(endo)
    mul = as_table(group_mul, (n, n), n, "group_mul")
    f = as_table(endo, (n,), n, "endo")
    e, inv = group_unit_and_inverse(mul)
    bad = first_failure(f[mul] == mul[f[:, None], f[None, :]])
    if bad is not None:
        raise PreconditionError(f"endo is not a group homomorphism at {bad}", witness=bad)
    G = FiniteHomGroup.from_tables(f[mul], f, e, inv, name=name)
    return _require_output(G, "twist group")


def direct_product(G: FiniteHomGroup, H: FiniteHomGroup) -> FiniteHomGroup:
    require_hom_group(G, "left factor")
    require_hom_group(H, "right factor")
    idx = np.arange(G.n * H.n)
    gi, hi = idx // H.n, idx % H.n
    mul = G.mul[gi[:, None], gi[None, :]] * H.n + H.mul[hi[:, None], hi[None, :]]
    alpha = G.alpha[gi] * H.n + H.alpha[hi]
    inv = G.inv[gi] * H.n + H.inv[hi]
    name = f"{G.name or 'G'}x{H.name or 'H'}"
    P = FiniteHomGroup.from_tables(mul, alpha, G.e * H.n + H.e, inv, name=name)
    return _require_output(P, "direct product")


@dataclass(frozen=True)
class QAdditiveWindow:
    """(ℤ, n +_q m = q(n+m), 0, n ↦ qn) restricted to [-bound, bound]."""

    q: int
    bound: int

    def add(self, a: int, b: int) -> int:
        return self.q * (a + b)

    def alpha(self, a: int) -> int:
        return self.q * a

    def contains(self, a: int) -> bool:
        return -self.bound <= a <= self.bound


def q_additive_window(q: int, bound: int) -> tuple[QAdditiveWindow, QAdditiveReport]:
    if q == 0:
        raise PreconditionError("q must be nonzero")
    if bound < 0:
        raise PreconditionError("bound must be non-negative")
    W = QAdditiveWindow(q, bound)
    v = np.arange(-bound, bound + 1, dtype=np.int64)
    a, b, c = v[:, None, None], v[None, :, None], v[None, None, :]
    inner_right = q * (b + c)          # m +_q p
    inner_left = q * (a + b)           # n +_q m
    qa, qc = q * a, q * c
    lhs = q * (qa + inner_right)
    rhs = q * (inner_left + qc)
    target = q * q * (a + b + c)
    def inside(x: np.ndarray) -> np.ndarray:
        return (x >= -bound) & (x <= bound)

    valid = inside(inner_right) & inside(inner_left) & inside(qa) & inside(qc)
    valid = np.broadcast_to(valid, lhs.shape)
    ok = (lhs == target) & (rhs == target)
    failing = valid & ~ok
    bad = first_failure(~failing)
    witness = [int(v[i]) for i in bad] if bad is not None else None
    report = QAdditiveReport(
        q=q, bound=bound, checked=int(valid.sum()), skipped=int((~valid).sum()),
        failures=int(failing.sum()), witness=witness,
        unit_law=bool((q * (v + 0) == q * v).all()),
        inverse_law=bool((q * (v - v) == 0).all()),
        regular=abs(q) == 1,
    )
    logger.info(f"q-additive window q={q} bound={bound}: {report.checked} checked, {report.skipped} skipped")
    return W, report


# ---------------------------------------------------------------- identities

def _orbit_tails(G: FiniteHomGroup, g: int) -> np.ndarray:
    """Exponents i with idx(g) <= i <= idx(g) + n; they cover every α^i(g) with i >= idx(g)."""
    start = int(G.inv_index[g])
    return np.arange(start, start + G.n + 1)


def _power_stack(G: FiniteHomGroup, count: int) -> np.ndarray:
    out = np.empty((count, G.n), dtype=np.int64)
    out[0] = identity_table(G.n)
    for i in range(1, count):
        out[i] = G.alpha[out[i - 1]]
    return out


def check_structure_identities(G: FiniteHomGroup) -> AxiomReport:
    require_hom_group(G)
    M, A, I, e, n = G.mul, G.alpha, G.inv, G.e, G.n
    top = int(G.inv_index.max()) + n + 7
    P = _power_stack(G, top)
    A2, A3 = P[2], P[3]
    results: list[AxiomVerdict] = []

    tails = [_orbit_tails(G, g) for g in range(n)]
    orbit = [np.unique(P[t, g]) for g, t in enumerate(tails)]

    # α^i(g)h = α^i(g)k for all i >= idx(g)  =>  α²h = α²k
    ok = np.ones((n, n, n), dtype=bool)
    for g in range(n):
        hyp = (M[orbit[g][:, None, None], np.arange(n)[None, :, None]]
               == M[orbit[g][:, None, None], np.arange(n)[None, None, :]]).all(axis=0)
        ok[g] = ~hyp | (A2[:, None] == A2[None, :])
    results.append(axiom_verdict("cancellation", ok))

    # (α^i(g)h)(kα^j(l)) = (α^i(g)k)(hα^j(l)) for all i, j  =>  α³(hk) = α³(kh)
    concl = A3[M] == A3[M.T]
    ok = np.ones((n, n, n, n), dtype=bool)
    hs = np.arange(n)[None, None, :, None]
    ks = np.arange(n)[None, None, None, :]
    for g in range(n):
        for l in range(n):
            a = orbit[g][:, None, None, None]
            b = orbit[l][None, :, None, None]
            left = M[M[a, hs], M[ks, b]]
            right = M[M[a, ks], M[hs, b]]
            hyp = (left == right).all(axis=(0, 1))
            ok[g, :, :, l] = ~hyp | concl
    results.append(axiom_verdict("medial-commutation", ok))

    # (α^i(g⁻¹)α^j(h⁻¹))(α^i(g)α^j(h)) = e  =>  α^{i+5}(g)α^{j+5}(h) = α^{j+5}(h)α^{i+5}(g)
    ok = np.ones((n, n), dtype=bool)
    for g in range(n):
        ig = tails[g]
        for hh in range(n):
            jh = tails[hh]
            ag, aig = P[ig, g][:, None], P[ig, I[g]][:, None]
            bh, bih = P[jh, hh][None, :], P[jh, I[hh]][None, :]
            hyp = (M[M[aig, bih], M[ag, bh]] == e).all()
            x, y = P[ig + 5, g][:, None], P[jh + 5, hh][None, :]
            ok[g, hh] = (not hyp) or bool((M[x, y] == M[y, x]).all())
    results.append(axiom_verdict("commutation", ok))

    if G.abelian and G.regular:
        inter = M[M[:, :, None, None], M[None, None, :, :]] == M[M[:, None, :, None], M[None, :, None, :]]
        results.append(axiom_verdict("interchange", inter))
    else:
        results.append(AxiomVerdict(name="interchange", status="not_applicable",
                                    note="needs an abelian regular Hom-group"))

    if G.regular:
        sq = M[np.arange(n), np.arange(n)]
        hom_ok = (sq[M] == M[sq[:, None], sq[None, :]])
        is_hom = bool(hom_ok.all()) and bool((sq[A] == A[sq]).all())
        if is_hom == G.abelian:
            results.append(AxiomVerdict(name="squaring-homomorphism", status="pass",
                                        note=f"squaring is {'a' if is_hom else 'not a'} homomorphism"))
        else:
            wit = first_failure(hom_ok) if G.abelian else first_failure(M == M.T)
            results.append(AxiomVerdict(name="squaring-homomorphism", status="fail",
                                        witness=list(wit) if wit else None))
    else:
        results.append(AxiomVerdict(name="squaring-homomorphism", status="not_applicable",
                                    note="alpha is not bijective"))

    idx = np.arange(n)
    fixed = (M[idx, idx] == A) & (A2 == idx)
    results.append(axiom_verdict("fixed-point", ~fixed | (idx == e)))

    report = AxiomReport(structure="structure-identities", order=n, axioms=results,
                         regular=G.regular, abelian=G.abelian, inv_index=G.inv_index.tolist())
    logger.info(f"structure identities on {G!r}: {[v.status for v in results]}")
    return report


# ---------------------------------------------------------------- homomorphisms

@dataclass(frozen=True, eq=False)
class HomMap:
    source: FiniteHomGroup
    target: FiniteHomGroup
    table: np.ndarray
    multiplicative: bool = False
    alpha_equivariant: bool = False
    unit_preserving: bool = False

    @classmethod
    def build(cls, source: FiniteHomGroup, target: FiniteHomGroup, table: Sequence) -> "HomMap":
        t = as_table(table, (source.n,), target.n, "map")
        flags = _map_flags(source, target, t)
        return cls(source, target, t, *flags)

    def verify(self) -> "HomMap":
        flags = _map_flags(self.source, self.target, self.table)
        if flags != (self.multiplicative, self.alpha_equivariant, self.unit_preserving):
            raise InvariantViolation("homomorphism flags do not match the tables")
        return self

    @property
    def is_homomorphism(self) -> bool:
        return self.multiplicative and self.alpha_equivariant

    @property
    def injective(self) -> bool:
        return len(np.unique(self.table)) == len(self.table)

    def __call__(self, g: int) -> int:
        return int(self.table[g])


def _map_flags(G: FiniteHomGroup, H: FiniteHomGroup, f: np.ndarray) -> tuple[bool, bool, bool]:
    mult = bool((f[G.mul] == H.mul[f[:, None], f[None, :]]).all())
    equi = bool((f[G.alpha] == H.alpha[f]).all())
    return mult, equi, bool(f[G.e] == H.e)


@dataclass
class HomomorphismSearch:
    maps: list[HomMap] = field(default_factory=list)
    status: str = "complete"
    nodes: int = 0

    def to_report(self) -> HomSearchReport:
        return HomSearchReport(status=self.status, count=len(self.maps), nodes=self.nodes,
                               maps=[m.table.tolist() for m in self.maps])


def _hom_search(G: FiniteHomGroup, H: FiniteHomGroup, injective: bool) -> TableSearch:
    search = TableSearch(G.n, H.n, injective=injective)
    mul_h = H.mul.tolist()
    for g in range(G.n):
        for h in range(G.n):
            search.add_binary(int(G.mul[g, h]), g, h, mul_h)
        search.add_unary(int(G.alpha[g]), g, H.alpha)
    return search


def enumerate_homomorphisms(G: FiniteHomGroup, H: FiniteHomGroup, budget: Optional[int] = None) -> HomomorphismSearch:
    budget = budget or settings.search_budget
    outcome = _hom_search(G, H, injective=False).solve(budget)
    maps = [HomMap.build(G, H, sol) for sol in sorted(outcome.solutions)]
    for m in maps:
        if not m.is_homomorphism:
            raise InvariantViolation("search returned a non-homomorphism", witness=tuple(m.table.tolist()))
    logger.info(f"{len(maps)} homomorphisms {G.name or 'G'} -> {H.name or 'H'} ({outcome.status}, {outcome.nodes} nodes)")
    return HomomorphismSearch(maps, outcome.status, outcome.nodes)


def find_isomorphism(G: FiniteHomGroup, H: FiniteHomGroup, budget: Optional[int] = None) -> Optional[HomMap]:
    if G.n != H.n:
        return None
    outcome = _hom_search(G, H, injective=True).solve(budget or settings.search_budget, limit=1)
    if not outcome.solutions:
        if outcome.truncated:
            raise BudgetExceeded(f"isomorphism search exhausted its budget after {outcome.nodes} nodes")
        return None
    return HomMap.build(G, H, outcome.solutions[0])


def hom_group_of_homomorphisms(G: FiniteHomGroup, H: FiniteHomGroup,
                               budget: Optional[int] = None) -> tuple[FiniteHomGroup, list[HomMap]]:
    require_hom_group(G, "source")
    require_hom_group(H, "target")
    for X, role in ((G, "source"), (H, "target")):
        if not (X.abelian and X.regular):
            raise PreconditionError(f"{role} must be an abelian regular Hom-group")
    search = enumerate_homomorphisms(G, H, budget)
    if search.status != "complete":
        raise BudgetExceeded(f"homomorphism search truncated after {search.nodes} nodes")
    keys = [tuple(m.table.tolist()) for m in search.maps]
    position = {key: i for i, key in enumerate(keys)}

    def lookup(values: np.ndarray) -> int:
        key = tuple(int(v) for v in values)
        if key not in position:
            raise InvariantViolation("Hom(G, H) is not closed", witness=key)
        return position[key]

    tables = [m.table for m in search.maps]
    size = len(tables)
    mul = [[lookup(H.mul[tables[i], tables[j]]) for j in range(size)] for i in range(size)]
    alpha = [lookup(H.alpha[t]) for t in tables]
    inv = [lookup(H.inv[t]) for t in tables]
    e = lookup(np.full(G.n, H.e))
    name = f"Hom({G.name or 'G'},{H.name or 'H'})"
    result = FiniteHomGroup.from_tables(mul, alpha, e, inv, name=name)
    return _require_output(result, "Hom(G, H)"), search.maps
