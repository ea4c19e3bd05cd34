from __future__ import annotations
from typing import Sequence

import numpy as np

from ..errors import StructuralError
from ..models.schemas import AxiomVerdict


def as_table(data: Sequence | np.ndarray, shape: tuple[int, ...], bound: int, name: str) -> np.ndarray:
    """Validate a lookup table and freeze it as an int64 array."""
    try:
        arr = np.asarray(data, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise StructuralError(f"{name}: table is not an integer array ({exc})") from exc
    if arr.shape != shape:
        raise StructuralError(f"{name}: expected shape {shape}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        bad = first_failure((arr >= 0) & (arr < bound))
        raise StructuralError(f"{name}: entry out of range [0, {bound}) at {bad}", witness=bad)
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def first_failure(ok: np.ndarray) -> tuple[int, ...] | None:
    # argwhere walks in C order, i.e. lexicographically
    bad = np.argwhere(~np.asarray(ok, dtype=bool))
    if bad.size == 0:
        return None
    return tuple(int(v) for v in bad[0])


def is_bijective(table: np.ndarray) -> bool:
    return len(np.unique(table)) == len(table)


def inverse_permutation(table: np.ndarray) -> np.ndarray:
    if not is_bijective(table):
        raise StructuralError("map is not bijective")
    inv = np.empty_like(table)
    inv[table] = np.arange(len(table), dtype=table.dtype)
    return inv


def power_table(table: np.ndarray, k: int) -> np.ndarray:
    """Table of the k-th iterate; negative k needs a bijective map."""
    base = table if k >= 0 else inverse_permutation(table)
    out = np.arange(len(table), dtype=np.int64)
    for _ in range(abs(k)):
        out = base[out]
    return out


def identity_table(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64)


def members_mask(members, n: int) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[list(members)] = True
    return mask


def axiom_verdict(name: str, ok: np.ndarray) -> AxiomVerdict:
    """Pass, or fail with the lexicographically first failing index tuple."""
    bad = first_failure(ok)
    if bad is None:
        return AxiomVerdict(name=name)
    return AxiomVerdict(name=name, status="fail", witness=list(bad))
