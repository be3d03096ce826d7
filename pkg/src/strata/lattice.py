"""Microscopic cross-check: ground states of the Z_n toric code on a

closed orientable surface, counted as |H^1(surface; Z_n)| from the
integer Smith normal form of cellulation boundary matrices.

Convention: ``boundary2`` has one row per 2-cell and one column per
1-cell; ``boundary1`` one row per 1-cell and one column per 0-cell.  The
chain-complex condition is then ``boundary2 @ boundary1 == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import StructuralError, UnknownNameError

FIXTURE_NAMES = ("sphere", "torus", "genus2")


@dataclass(frozen=True, eq=False)
class CellComplex:
    boundary2: np.ndarray  # (faces, edges) int
    boundary1: np.ndarray  # (edges, vertices) int

    def __post_init__(self):
        b2 = np.asarray(self.boundary2, dtype=np.int64)
        b1 = np.asarray(self.boundary1, dtype=np.int64)
        object.__setattr__(self, "boundary2", b2)
        object.__setattr__(self, "boundary1", b1)
        if b2.ndim != 2 or b1.ndim != 2:
            raise StructuralError("boundary matrices must be 2-dimensional")
        if b2.shape[1] != b1.shape[0]:
            raise StructuralError(
                f"edge counts disagree: boundary2 has {b2.shape[1]} columns,"
                f" boundary1 has {b1.shape[0]} rows"
            )
        if np.any(b2 @ b1):
            raise StructuralError("not a chain complex: boundary2 @ boundary1 != 0")

    @property
    def num_faces(self) -> int:
        return self.boundary2.shape[0]

    @property
    def num_edges(self) -> int:
        return self.boundary2.shape[1]

    @property
    def num_vertices(self) -> int:
        return self.boundary1.shape[1]

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces


def smith_normal_form(matrix: np.ndarray) -> list[int]:
    """Diagonal of the Smith normal form (nonzero elementary divisors,

    each dividing the next).  Exact integer arithmetic; the matrices here
    are tiny, so plain Gaussian-style reduction is enough.
    """
    a = [[int(x) for x in row] for row in np.asarray(matrix)]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    divisors: list[int] = []
    t = 0
    while t < rows and t < cols:
        # find a nonzero pivot in the remaining block
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        # clear row and column; restart if a remainder shrinks the pivot
        while True:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
            changed = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:  # remainder becomes the new, smaller pivot
                        a[t], a[i] = a[i], a[t]
                        changed = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if not changed:
                break
        divisors.append(a[t][t])
        t += 1
    # enforce the divisibility chain d_i | d_{i+1}
    for i in range(len(divisors)):
        for j in range(i + 1, len(divisors)):
            di, dj = divisors[i], divisors[j]
            g = gcd(di, dj)
            divisors[i], divisors[j] = g, di * dj // g
    return divisors


def homology_order(complex: CellComplex, n: int) -> int:
    """|H^1(surface; Z_n)|.

    First homology is Z^b1 + sum of Z/d_i with b1 = E - rank(boundary1)
    - rank(boundary2) and d_i the nontrivial elementary divisors of
    boundary2; hom into Z_n contributes n^b1 * prod gcd(n, d_i).  (The
    Ext correction vanishes: H_0 of a surface is free.)
    """
    if n < 2:
        raise StructuralError("coefficient modulus must be >= 2")
    div1 = smith_normal_form(complex.boundary1)
    div2 = smith_normal_form(complex.boundary2)
    b1 = complex.num_edges - len(div1) - len(div2)
    if b1 < 0:
        raise StructuralError("rank bookkeeping failed; input is not a surface complex")
    order = n**b1
    for d in div2:
        order *= gcd(n, d)
    return order


def fixture(name: str) -> CellComplex:
    """Minimal cellulations: sphere (V=2,E=1,F=1), torus (square with

    identified sides), genus2 (octagon identification).
    """
    if name == "sphere":
        # one edge between two vertices; the 2-cell runs along e then back
        return CellComplex(boundary2=[[0]], boundary1=[[-1, 1]])
    if name == "torus":
        # a b a^-1 b^-1 on a single vertex: all boundaries vanish
        return CellComplex(boundary2=[[0, 0]], boundary1=[[0], [0]])
    if name == "genus2":
        return CellComplex(boundary2=[[0, 0, 0, 0]], boundary1=[[0], [0], [0], [0]])
    raise UnknownNameError("fixture", name, list(FIXTURE_NAMES))


def cell_complex_from_dict(doc: dict) -> CellComplex:
    """JSON cellulation format: ``{"boundary2": [[int, ...], ...],

    "boundary1": [[int, ...], ...]}`` (signed incidence rows).
    """
    try:
        return CellComplex(
            boundary2=np.array(doc["boundary2"], dtype=np.int64, ndmin=2),
            boundary1=np.array(doc["boundary1"], dtype=np.int64, ndmin=2),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise StructuralError(f"malformed cellulation data: {exc}") from exc
