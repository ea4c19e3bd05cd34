"""Named example structures used by the CLI, the HTTP routes and the tests."""
from __future__ import annotations
from functools import lru_cache
from typing import Callable, Literal, Union
import logging

import numpy as np
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import SymmetricGroup

from ..errors import PreconditionError, StructuralError
from .group_ring import TwistedGroupRing
from .homgroup import FiniteHomGroup, twist_group
from .homring import FiniteHomRing, endomorphism_hom_ring, ordinary_ring, twist_ring
from .hommodule import FiniteHomModule, regular_module

logger = logging.getLogger(__name__)

Kind = Literal["group", "ring", "module"]
Entry = Union[FiniteHomGroup, FiniteHomRing, FiniteHomModule]


def cyclic_table(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n


def cyclic_product_table(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None] * idx[None, :]) % n


def cyclic(n: int, name: str = "") -> FiniteHomGroup:
    return twist_group(cyclic_table(n), np.arange(n), name=name or f"Z{n}")


def _s3_elements() -> list[Permutation]:
    return sorted(SymmetricGroup(3).generate(), key=lambda p: p.array_form)


def s3_table() -> np.ndarray:
    elems = _s3_elements()
    position = {tuple(p.array_form): i for i, p in enumerate(elems)}
    return np.array([[position[tuple((p * q).array_form)] for q in elems] for p in elems], dtype=np.int64)


def s3_conjugation() -> np.ndarray:
    """g ↦ t g t for the transposition t = (0 1)."""
    elems = _s3_elements()
    position = {tuple(p.array_form): i for i, p in enumerate(elems)}
    t = Permutation([1, 0, 2])
    return np.array([position[tuple((t * p * t).array_form)] for p in elems], dtype=np.int64)


def _ordinary_zn(n: int, name: str) -> FiniteHomRing:
    return ordinary_ring(cyclic_table(n), cyclic_product_table(n), 0, 1 % n, name=name)


def _f2c3() -> TwistedGroupRing:
    # σ = inversion on C3
    return TwistedGroupRing(cyclic_table(3), [0, 2, 1], 2, name="F2C3")


def _augmentation_module() -> FiniteHomModule:
    A = ring("f2c3_twist")
    # ε(a) = sum of the coefficients, i.e. the parity of the digit sum
    eps = np.array([bin(i).count("1") % 2 for i in range(A.n)], dtype=np.int64)
    act = eps[:, None] * np.arange(2)[None, :]
    return FiniteHomModule.from_tables(A, cyclic_table(2), 0, [0, 1], act_left=act, name="F2-augmentation")


def _z4_2x_over_f2() -> FiniteHomModule:
    G = group("z4_2x")
    act = np.array([[0, 0, 0, 0], [0, 2, 0, 2]], dtype=np.int64)
    return FiniteHomModule.from_tables(ring("f2"), G.mul, G.e, G.alpha, act_left=act, madd_inv=G.inv,
                                       name="Z4_2x-over-F2")


def _null_over_f2() -> FiniteHomModule:
    zeros = np.zeros((2, 2), dtype=np.int64)
    return FiniteHomModule.from_tables(ring("f2"), zeros, 0, [0, 0], act_left=zeros, madd_inv=[0, 1],
                                       name="null-over-F2")


_GROUPS: dict[str, Callable[[], FiniteHomGroup]] = {
    "trivial": lambda: cyclic(1, "trivial"),
    **{f"z{n}": (lambda n=n: cyclic(n)) for n in range(2, 7)},
    "z6_5x": lambda: twist_group(cyclic_table(6), (5 * np.arange(6)) % 6, name="Z6_5x"),
    "z4_2x": lambda: twist_group(cyclic_table(4), (2 * np.arange(4)) % 4, name="Z4_2x"),
    "s3": lambda: twist_group(s3_table(), np.arange(6), name="S3"),
    "s3_twisted": lambda: twist_group(s3_table(), s3_conjugation(), name="S3_conj"),
}

_RINGS: dict[str, Callable[[], FiniteHomRing]] = {
    "f2": lambda: _ordinary_zn(2, "F2"),
    "z6": lambda: _ordinary_zn(6, "Z6"),
    "z6_3x": lambda: twist_ring(ring("z6"), (3 * np.arange(6)) % 6, (3 * np.arange(6)) % 6, name="Z6_3x"),
    "f2c3_twist": lambda: _f2c3().materialize(1),
    "f2c3_twist_type2": lambda: _f2c3().materialize(2),
    "f2s3_twist": lambda: TwistedGroupRing(s3_table(), s3_conjugation(), 2, name="F2S3").materialize(1),
    "end_z6_5x": lambda: endomorphism_hom_ring(group("z6_5x"))[0],
    "end_z6": lambda: endomorphism_hom_ring(group("z6"))[0],
}

_MODULES: dict[str, Callable[[], FiniteHomModule]] = {
    "f2c3_regular": lambda: regular_module(ring("f2c3_twist")),
    "f2c3_augmentation": _augmentation_module,
    "z4_2x_over_f2": _z4_2x_over_f2,
    "f2_regular": lambda: regular_module(ring("f2")),
    "null_over_f2": _null_over_f2,
}


def names(kind: Kind | None = None) -> list[str]:
    tables = {"group": _GROUPS, "ring": _RINGS, "module": _MODULES}
    if kind is None:
        return [n for t in tables.values() for n in t]
    return list(tables[kind])


def kind_of(name: str) -> Kind:
    for kind, table in (("group", _GROUPS), ("ring", _RINGS), ("module", _MODULES)):
        if name in table:
            return kind
    raise StructuralError(f"unknown catalog entry {name!r}; known: {', '.join(names())}")


@lru_cache(maxsize=None)
def lookup(name: str) -> Entry:
    kind = kind_of(name)
    builder = {"group": _GROUPS, "ring": _RINGS, "module": _MODULES}[kind][name]
    entry = builder()
    logger.info(f"built catalog {kind} {name}: {entry!r}")
    return entry


def group(name: str) -> FiniteHomGroup:
    if kind_of(name) != "group":
        raise PreconditionError(f"{name!r} is not a Hom-group")
    return lookup(name)


def ring(name: str) -> FiniteHomRing:
    if kind_of(name) != "ring":
        raise PreconditionError(f"{name!r} is not a Hom-ring")
    return lookup(name)


def module(name: str) -> FiniteHomModule:
    if kind_of(name) != "module":
        raise PreconditionError(f"{name!r} is not a Hom-module")
    return lookup(name)


def describe(name: str) -> dict[str, object]:
    """JSON envelope of a catalog entry, tagged with its kind."""
    entry = lookup(name)
    spec = entry.to_spec().model_dump(mode="json", by_alias=True)
    return {"name": name, "kind": kind_of(name), "spec": spec}
