"""Exact fusion-ring arithmetic and state-space dimensions.

``genus_dim`` computes dim hom(1, x_1 (x) ... (x) x_n (x) H^g) where
H = sum_i i (x) i* accounts for one unit of genus.  The canonical path
is exact integer linear algebra over the fusion tensor (object-dtype
numpy, so multiplicities never overflow); ``genus_dim_verlinde`` is an
independent float cross-check through the S matrix that must round
cleanly to the same integer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CategoryMismatchError, ConsistencyError
from .fusion_data import INT_TOL, ModularData


@dataclass(frozen=True, eq=False)
class ObjectVector:
    """A formal nonnegative-integer combination of simple objects."""

    category: ModularData
    mult: tuple[int, ...]

    def __post_init__(self):
        if len(self.mult) != self.category.rank:
            raise CategoryMismatchError(
                f"vector of length {len(self.mult)} over rank-{self.category.rank} category"
            )
        if any(m < 0 for m in self.mult):
            raise ValueError("multiplicities must be nonnegative")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ObjectVector):
            return NotImplemented
        return self.mult == other.mult and same_category(self.category, other.category)

    def __repr__(self) -> str:
        terms = [
            (f"{m}*" if m != 1 else "") + self.category.labels[i]
            for i, m in enumerate(self.mult)
            if m
        ]
        return f"<{' + '.join(terms) or '0'} in {self.category.name}>"


def same_category(a: ModularData, b: ModularData) -> bool:
    return a is b or a == b


def _check_same(a: ModularData, b: ModularData) -> None:
    if not same_category(a, b):
        raise CategoryMismatchError(f"categories {a.name!r} and {b.name!r} differ")


def simple(md: ModularData, label: str | int) -> ObjectVector:
    """Basis vector for one simple object, by label or index."""
    i = md.index(label) if isinstance(label, str) else label
    mult = [0] * md.rank
    mult[i] = 1
    return ObjectVector(md, tuple(mult))


def unit_vector(md: ModularData) -> ObjectVector:
    return simple(md, md.unit)


def from_mult(md: ModularData, mult) -> ObjectVector:
    return ObjectVector(md, tuple(int(m) for m in mult))


def fuse(v: ObjectVector, w: ObjectVector) -> ObjectVector:
    """(v (x) w)_k = sum_{i,j} v_i w_j N[i][j][k], exactly."""
    _check_same(v.category, w.category)
    N = v.category.fusion_exact()
    a = np.array(v.mult, dtype=object)
    b = np.array(w.mult, dtype=object)
    out = np.tensordot(b, np.tensordot(a, N, axes=(0, 0)), axes=(0, 0))
    return ObjectVector(v.category, tuple(out))


def fuse_simple(v: ObjectVector, index: int) -> ObjectVector:
    """Fuse with one simple object; O(rank^2) instead of O(rank^3)."""
    N = v.category.fusion_exact()
    out = np.tensordot(np.array(v.mult, dtype=object), N[:, index, :], axes=(0, 0))
    return ObjectVector(v.category, tuple(out))


def dual_object(v: ObjectVector) -> ObjectVector:
    mult = [0] * v.category.rank
    for i, m in enumerate(v.mult):
        mult[v.category.dual[i]] = m
    return ObjectVector(v.category, tuple(mult))


def handle_object(md: ModularData) -> ObjectVector:
    """H = sum_i i (x) i*; one factor of H per unit of genus."""
    N = md.ring.fusion
    r = md.rank
    mult = [0] * r
    for i in range(r):
        row = N[i, md.dual[i], :]
        for k in range(r):
            mult[k] += int(row[k])
    return ObjectVector(md, tuple(mult))


def unit_multiplicity(v: ObjectVector) -> int:
    return v.mult[v.category.unit]


def genus_dim(md: ModularData, genus: int, insertions: list[ObjectVector]) -> int:
    """dim hom(1, x_1 (x) ... (x) x_n (x) H^genus) by iterated exact fusion."""
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    acc = unit_vector(md)
    for x in insertions:
        _check_same(md, x.category)
        acc = fuse(acc, x)
    if genus:
        H = handle_object(md)
        for _ in range(genus):
            acc = fuse(acc, H)
    return unit_multiplicity(acc)


def characters(md: ModularData, v: ObjectVector) -> np.ndarray:
    """chi_v(a) = sum_i v_i S[i][a]; the S-matrix diagonalizes fusion."""
    return np.asarray(v.mult, dtype=np.float64) @ md.S


def genus_dim_verlinde(md: ModularData, genus: int, insertions: list[ObjectVector]) -> int:
    """S-matrix evaluation of genus_dim:

        sum_a S[0][a]^(2 - 2g - n) * prod_k chi_{x_k}(a)

    The float result must sit within 1e-6 of an integer, otherwise the
    modular data is corrupt and a ConsistencyError is raised.
    """
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    s0 = md.S[md.unit]
    total = s0 ** (2 - 2 * genus - len(insertions))
    for x in insertions:
        _check_same(md, x.category)
        total = total * characters(md, x)
    value = complex(np.sum(total))
    nearest = round(value.real)
    if abs(value - nearest) >= INT_TOL:
        raise ConsistencyError(
            f"Verlinde sum {value} is not within {INT_TOL} of an integer"
        )
    return int(nearest)
