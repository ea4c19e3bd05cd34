"""Polynomial Hom-rings over 𝔽_p.

The endomorphism α̃ substitutes X_i ↦ X_i^{k_i}; on 𝔽_p coefficients the
only ring endomorphism is the identity. The Hom-ring operations are
P +̂ Q = α̃(P + Q) and P ·̂ Q = α̃(PQ), computed exactly with no degree cap.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence
import logging

import numpy as np
from sympy import Poly, isprime, symbols

from ..config import settings
from ..errors import PreconditionError, StructuralError
from ..models.schemas import AxiomVerdict, PolynomialSpec, PolyRingReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TwistedPolynomial:
    poly: Poly

    def terms(self) -> dict[tuple[int, ...], int]:
        p = int(self.poly.get_modulus())
        out = {tuple(int(e) for e in m): int(c) % p for m, c in self.poly.terms()}
        return {m: c for m, c in out.items() if c}

    @property
    def degree(self) -> int:
        return int(self.poly.total_degree()) if self.terms() else -1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TwistedPolynomial) and self.terms() == other.terms()

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms().items())))

    def __str__(self) -> str:
        terms = self.terms()
        if not terms:
            return "0"
        gens = [str(g) for g in self.poly.gens]
        parts = []
        for monom in sorted(terms, reverse=True):
            factors = [g if e == 1 else f"{g}^{e}" for g, e in zip(gens, monom) if e]
            coeff = terms[monom]
            if not factors:
                parts.append(str(coeff))
            else:
                parts.append(("" if coeff == 1 else f"{coeff}") + "".join(factors))
        return " + ".join(parts)


class PolynomialHomRing:
    def __init__(self, p: int, subst: Mapping[str, int]):
        if not isprime(p):
            raise PreconditionError(f"coefficient modulus {p} is not prime")
        if not subst:
            raise StructuralError("at least one variable is needed")
        for var, power in subst.items():
            if power < 0:
                raise StructuralError(f"substitution exponent for {var} is negative", witness=(power,))
        self.p = p
        self.names = sorted(subst)
        self.powers = tuple(int(subst[v]) for v in self.names)
        self.gens = symbols(" ".join(self.names), seq=True)

    def _from_dict(self, terms: Mapping[tuple[int, ...], int]) -> TwistedPolynomial:
        clean = {m: c % self.p for m, c in terms.items() if c % self.p}
        if not clean:
            return TwistedPolynomial(Poly(0, *self.gens, modulus=self.p))
        return TwistedPolynomial(Poly.from_dict(clean, *self.gens, modulus=self.p))

    def polynomial(self, terms: Sequence[Sequence]) -> TwistedPolynomial:
        """From [[exponent, coeff], ...]; exponents are ints for one variable, lists otherwise."""
        out: dict[tuple[int, ...], int] = {}
        for exponent, coeff in terms:
            monom = (exponent,) if isinstance(exponent, int) else tuple(exponent)
            if len(monom) != len(self.names) or any(e < 0 for e in monom):
                raise StructuralError(f"bad exponent {exponent!r} for variables {self.names}")
            out[monom] = out.get(monom, 0) + int(coeff)
        return self._from_dict(out)

    def from_spec(self, spec: PolynomialSpec) -> TwistedPolynomial:
        return self.polynomial(spec.terms)

    @property
    def zero(self) -> TwistedPolynomial:
        return self._from_dict({})

    @property
    def one(self) -> TwistedPolynomial:
        return self._from_dict({(0,) * len(self.names): 1})

    def alpha(self, P: TwistedPolynomial) -> TwistedPolynomial:
        moved: dict[tuple[int, ...], int] = {}
        for monom, coeff in P.terms().items():
            key = tuple(e * k for e, k in zip(monom, self.powers))
            moved[key] = moved.get(key, 0) + coeff
        return self._from_dict(moved)

    def hat_add(self, P: TwistedPolynomial, Q: TwistedPolynomial) -> TwistedPolynomial:
        return self.alpha(TwistedPolynomial(P.poly + Q.poly))

    def hat_mul(self, P: TwistedPolynomial, Q: TwistedPolynomial) -> TwistedPolynomial:
        return self.alpha(TwistedPolynomial(P.poly * Q.poly))

    def random(self, rng: np.random.Generator, degree: int) -> TwistedPolynomial:
        count = int(rng.integers(0, degree + 2))
        terms: dict[tuple[int, ...], int] = {}
        for _ in range(count):
            monom = tuple(int(e) for e in rng.integers(0, degree + 1, size=len(self.names)))
            terms[monom] = terms.get(monom, 0) + int(rng.integers(1, self.p))
        return self._from_dict(terms)


def twisted_poly_ops(ring: PolynomialHomRing, P: TwistedPolynomial,
                     Q: TwistedPolynomial) -> dict[str, TwistedPolynomial]:
    return {"sum": ring.hat_add(P, Q), "product": ring.hat_mul(P, Q), "alpha_image": ring.alpha(P)}


def check_poly_hom_ring(p: int, subst: Mapping[str, int], samples: int = 1000, degree: int = 6,
                        seed: Optional[int] = None) -> PolyRingReport:
    """Sampled type (1) identities on random triples; α = β = α̃."""
    seed = settings.seed if seed is None else seed
    R = PolynomialHomRing(p, subst)
    rng = np.random.default_rng(seed)
    a, add, mul, one, zero = R.alpha, R.hat_add, R.hat_mul, R.one, R.zero
    laws = {
        "additive-hom-associativity": lambda P, Q, S: add(a(P), add(Q, S)) == add(add(P, Q), a(S)),
        "additive-commutative": lambda P, Q, S: add(P, Q) == add(Q, P),
        "additive-unit": lambda P, Q, S: add(P, zero) == a(P),
        "alpha-multiplicative": lambda P, Q, S: a(mul(P, Q)) == mul(a(P), a(Q)),
        "hom-associativity": lambda P, Q, S: mul(a(P), mul(Q, S)) == mul(mul(P, Q), a(S)),
        "left-distributivity": lambda P, Q, S: mul(a(P), add(Q, S)) == add(mul(P, Q), mul(P, S)),
        "right-distributivity": lambda P, Q, S: mul(add(Q, S), a(P)) == add(mul(Q, P), mul(S, P)),
        "unit-law": lambda P, Q, S: mul(P, one) == a(P) == mul(one, P),
    }
    failures: dict[str, tuple[int, str]] = {}
    for i in range(samples):
        P, Q, S = (R.random(rng, degree) for _ in range(3))
        for name, law in laws.items():
            if name not in failures and not law(P, Q, S):
                failures[name] = (i, f"P={P}; Q={Q}; R={S}")
    identities = []
    for name in laws:
        if name in failures:
            i, note = failures[name]
            identities.append(AxiomVerdict(name=name, status="fail", witness=[i], note=note))
        else:
            identities.append(AxiomVerdict(name=name))
    report = PolyRingReport(p=p, subst=dict(subst), samples=samples, identities=identities)
    logger.info(f"polynomial Hom-ring over F{p} with {dict(subst)}: {len(failures)} failing identities "
                f"on {samples} samples")
    return report
