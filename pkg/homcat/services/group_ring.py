"""Twisted group rings 𝔽_p G.

An endomorphism σ of G extends to α(Σ a_g e_g) = Σ a_g e_σ(g), and the
Hom-ring is the twist x +̂ y = α(x + y), x ·̂ y = α(xy). Elements are sparse
coefficient maps; the full ring is materialised as tables only when p^|G|
stays under the group-ring bound.
"""
from __future__ import annotations
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence
import logging

import numpy as np
from sympy import isprime

from ..config import settings
from ..errors import BudgetExceeded, PreconditionError, StructuralError
from ..utils.tables import as_table, first_failure
from .homgroup import group_unit_and_inverse
from .homring import FiniteHomRing, RingType, ordinary_ring, twist_ring

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupRingElem:
    p: int
    coeffs: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, p: int, mapping: Mapping[int, int]) -> "GroupRingElem":
        terms = sorted((int(g), int(c) % p) for g, c in mapping.items())
        return cls(p, tuple((g, c) for g, c in terms if c))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    @property
    def support(self) -> list[int]:
        return [g for g, _ in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}·e{g}" if c != 1 else f"e{g}" for g, c in self.coeffs)


class TwistedGroupRing:
    def __init__(self, group_mul: Sequence, sigma: Sequence, p: int, name: str = ""):
        if not isprime(p):
            raise PreconditionError(f"coefficient modulus {p} is not prime")
        k = len(sigma)
        self.mul = as_table(group_mul, (k, k), k, "group_mul")
        self.sigma = as_table(sigma, (k,), k, "sigma")
        self.e, self.inv = group_unit_and_inverse(self.mul)
        bad = first_failure(self.sigma[self.mul] == self.mul[self.sigma[:, None], self.sigma[None, :]])
        if bad is not None:
            raise PreconditionError(f"sigma is not a group endomorphism at {bad}", witness=bad)
        self.p = p
        self.k = k
        self.name = name or f"F{p}G"

    @property
    def order(self) -> int:
        return self.p ** self.k

    # -- element level, no size bound

    def element(self, mapping: Mapping[int, int]) -> GroupRingElem:
        for g in mapping:
            if not 0 <= g < self.k:
                raise StructuralError(f"group element {g} out of range [0, {self.k})", witness=(g,))
        return GroupRingElem.of(self.p, mapping)

    def basis(self, g: int) -> GroupRingElem:
        return self.element({g: 1})

    def plus(self, x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
        out: dict[int, int] = defaultdict(int)
        for g, c in x.coeffs + y.coeffs:
            out[g] += c
        return GroupRingElem.of(self.p, out)

    def times(self, x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
        out: dict[int, int] = defaultdict(int)
        for g, c in x.coeffs:
            for h, d in y.coeffs:
                out[int(self.mul[g, h])] += c * d
        return GroupRingElem.of(self.p, out)

    def alpha(self, x: GroupRingElem) -> GroupRingElem:
        out: dict[int, int] = defaultdict(int)
        for g, c in x.coeffs:
            out[int(self.sigma[g])] += c
        return GroupRingElem.of(self.p, out)

    def hat_add(self, x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
        return self.alpha(self.plus(x, y))

    def hat_mul(self, x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
        return self.alpha(self.times(x, y))

    def encode(self, x: GroupRingElem) -> int:
        return sum(c * self.p ** g for g, c in x.coeffs)

    def decode(self, index: int) -> GroupRingElem:
        if not 0 <= index < self.order:
            raise StructuralError(f"index {index} out of range [0, {self.order})", witness=(index,))
        return GroupRingElem.of(self.p, {g: (index // self.p ** g) % self.p for g in range(self.k)})

    # -- whole ring

    def _digits(self) -> np.ndarray:
        idx = np.arange(self.order, dtype=np.int64)
        powers = self.p ** np.arange(self.k, dtype=np.int64)
        return (idx[:, None] // powers[None, :]) % self.p

    def ordinary(self, bound: Optional[int] = None) -> FiniteHomRing:
        """The untwisted group ring as tables; element i has digit g equal to the coefficient of e_g."""
        bound = bound or settings.group_ring_bound
        if self.order > bound:
            raise BudgetExceeded(f"{self.p}^{self.k} = {self.order} elements exceed the bound {bound}")
        p, C = self.p, self._digits()
        N = self.order
        add = np.zeros((N, N), dtype=np.int64)
        mul = np.zeros((N, N), dtype=np.int64)
        for g in range(self.k):
            add += ((C[:, None, g] + C[None, :, g]) % p) * p ** g
        for target in range(self.k):
            coeff = np.zeros((N, N), dtype=np.int64)
            for g in range(self.k):
                h = int(self.mul[self.inv[g], target])
                coeff += np.outer(C[:, g], C[:, h])
            mul += (coeff % p) * p ** target
        neg = ((-C) % p) @ (p ** np.arange(self.k, dtype=np.int64))
        return ordinary_ring(add, mul, 0, p ** self.e, neg, name=self.name)

    def alpha_table(self) -> np.ndarray:
        C = self._digits()
        moved = np.zeros_like(C)
        for g in range(self.k):
            moved[:, self.sigma[g]] += C[:, g]
        return (moved % self.p) @ (self.p ** np.arange(self.k, dtype=np.int64))

    def materialize(self, ring_type: RingType = 1, bound: Optional[int] = None) -> FiniteHomRing:
        R = self.ordinary(bound)
        alpha = self.alpha_table()
        suffix = "_twist" if ring_type == 1 else "_twist2"
        A = twist_ring(R, alpha, alpha, ring_type, name=self.name + suffix)
        logger.info(f"materialised {A!r}")
        return A


def twisted_group_ring(group_mul: Sequence, sigma: Sequence, p: int, ring_type: RingType = 1,
                       name: str = "") -> FiniteHomRing:
    return TwistedGroupRing(group_mul, sigma, p, name).materialize(ring_type)
