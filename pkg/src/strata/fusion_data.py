"""Numerical data of unitary modular tensor categories.

A category is carried around as its numerical shadow: simple-object
labels, the dual involution, the fusion multiplicity tensor N[i][j][k],
the S matrix, the twists theta_i and the quantum dimensions d_i.  That
is everything the dimension engine ever needs; no F/R symbols live here.

S and theta are double-precision complex with tolerance ``EPS`` for the
axiom checks.  All physical outputs are produced by the exact integer
path in :mod:`strata.verlinde`, so float error never reaches a result.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import StructuralError, UnknownNameError, Violation

#: entrywise tolerance for unitarity / symmetry / twist axioms
EPS = 1e-9
#: how close a Verlinde sum must be to an integer
INT_TOL = 1e-6

BUILTIN_NAMES = (
    "trivial",
    "toric_code",
    "fib",
    "ising",
    "semion",
    "zn_toric_2",
    "zn_toric_3",
    "zn_toric_4",
    "zn_toric_5",
)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(eq=False)
class FusionRing:
    """Labels, unit, dual involution and fusion tensor of a fusion ring.

    ``fusion[i, j, k]`` is the multiplicity of simple ``k`` in ``i (x) j``.
    Labels are resolved to indices once, at construction; everything
    downstream is index-based.
    """

    labels: tuple[str, ...]
    unit: int
    dual: tuple[int, ...]
    fusion: np.ndarray  # shape (rank, rank, rank), int64

    def __post_init__(self):
        self.fusion = _frozen(np.asarray(self.fusion, dtype=np.int64))
        r = len(self.labels)
        if self.fusion.shape != (r, r, r):
            raise StructuralError(
                f"fusion tensor has shape {self.fusion.shape}, expected {(r, r, r)}"
            )
        if not 0 <= self.unit < r:
            raise StructuralError(f"unit index {self.unit} out of range for rank {r}")
        if len(self.dual) != r or sorted(self.dual) != list(range(r)):
            raise StructuralError("dual must be a permutation of the label indices")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownNameError("label", label, list(self.labels)) from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.unit == other.unit
            and self.dual == other.dual
            and np.array_equal(self.fusion, other.fusion)
        )


@dataclass(eq=False)
class ModularData:
    """A fusion ring together with S matrix, twists and quantum dimensions."""

    name: str
    ring: FusionRing
    S: np.ndarray  # (rank, rank) complex128
    theta: np.ndarray  # (rank,) complex128
    qdim: np.ndarray  # (rank,) float64
    total_dim: float

    # lazily built caches; safe because instances are immutable after load
    _fusion_obj: np.ndarray | None = field(default=None, repr=False, compare=False)
    _valid: bool | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.S = _frozen(np.asarray(self.S, dtype=np.complex128))
        self.theta = _frozen(np.asarray(self.theta, dtype=np.complex128))
        self.qdim = _frozen(np.asarray(self.qdim, dtype=np.float64))
        r = self.ring.rank
        if self.S.shape != (r, r):
            raise StructuralError(f"S has shape {self.S.shape}, expected {(r, r)}")
        if self.theta.shape != (r,) or self.qdim.shape != (r,):
            raise StructuralError("theta/qdim length must equal the label count")

    @property
    def rank(self) -> int:
        return self.ring.rank

    @property
    def labels(self) -> tuple[str, ...]:
        return self.ring.labels

    @property
    def unit(self) -> int:
        return self.ring.unit

    @property
    def dual(self) -> tuple[int, ...]:
        return self.ring.dual

    def index(self, label: str) -> int:
        return self.ring.index(label)

    def fusion_exact(self) -> np.ndarray:
        """Fusion tensor as an object array of Python ints (exact arithmetic)."""
        if self._fusion_obj is None:
            self._fusion_obj = _frozen(self.ring.fusion.astype(object))
        return self._fusion_obj

    def __eq__(self, other) -> bool:
        # name is deliberately ignored: conjugate(conjugate(C)) equals C
        if not isinstance(other, ModularData):
            return NotImplemented
        return (
            self.ring == other.ring
            and np.array_equal(self.S, other.S)
            and np.array_equal(self.theta, other.theta)
            and np.array_equal(self.qdim, other.qdim)
        )


def make_modular_data(name, labels, unit, dual, fusion, S, theta, qdim=None) -> ModularData:
    """Assemble a ModularData; quantum dimensions are recomputed from the

    first S row when not supplied (d_i = S[0][i] / S[0][0]).
    """
    ring = FusionRing(tuple(labels), unit, tuple(dual), fusion)
    S = np.asarray(S, dtype=np.complex128)
    if qdim is None:
        if abs(S[unit, unit]) < EPS:
            raise StructuralError("cannot recompute qdim: S[unit][unit] is zero")
        qdim = (S[unit] / S[unit, unit]).real
    qdim = np.asarray(qdim, dtype=np.float64)
    total_dim = math.sqrt(float(np.sum(qdim**2)))
    return ModularData(name=name, ring=ring, S=S, theta=theta, qdim=qdim, total_dim=total_dim)


# ---------------------------------------------------------------------------
# validation


def validate_fusion_ring(ring: FusionRing) -> list[Violation]:
    """Check unit law, associativity and rigidity.  Empty report = valid.

    Shape problems raise :class:`StructuralError` (they already did at
    construction); genuine axiom failures come back as violations.
    """
    out: list[Violation] = []
    N = ring.fusion
    r = ring.rank
    u = ring.unit

    eye = np.eye(r, dtype=np.int64)
    if not np.array_equal(N[u], eye):
        out.append(Violation("unit-law", "N[unit][j][k] != delta_jk"))
    if not np.array_equal(N[:, u, :], eye):
        out.append(Violation("unit-law", "N[i][unit][k] != delta_ik"))

    if np.any(N < 0):
        out.append(Violation("negativity", "fusion multiplicities must be >= 0"))

    lhs = np.einsum("ijm,mkl->ijkl", N, N)
    rhs = np.einsum("jkm,iml->ijkl", N, N)
    if not np.array_equal(lhs, rhs):
        bad = np.argwhere(lhs != rhs)[0]
        i, j, k, l = (int(x) for x in bad)
        out.append(
            Violation(
                "associativity",
                f"sum_m N[{i}][{j}][m]N[m][{k}][{l}] != sum_m N[{j}][{k}][m]N[{i}][m][{l}]",
            )
        )

    dual = np.array(ring.dual)
    if not np.array_equal(dual[dual], np.arange(r)):
        out.append(Violation("rigidity", "dual is not an involution"))
    if ring.dual[u] != u:
        out.append(Violation("rigidity", "dual(unit) != unit"))
    want = np.zeros((r, r), dtype=np.int64)
    want[np.arange(r), dual] = 1
    if not np.array_equal(N[:, :, u], want):
        out.append(Violation("rigidity", "N[i][j][unit] != delta_{j,dual(i)}"))

    return out


def validate_modular_data(md: ModularData) -> list[Violation]:
    """Check S unitarity/symmetry, first-row positivity, twist axioms and

    Verlinde consistency of S against the fusion tensor.
    """
    out: list[Violation] = []
    S = md.S
    r = md.rank
    u = md.unit

    if np.max(np.abs(S @ S.conj().T - np.eye(r))) > EPS:
        out.append(Violation("s-unitary", "S is not unitary within 1e-9"))
    if np.max(np.abs(S - S.T)) > EPS:
        out.append(Violation("s-symmetric", "S is not symmetric within 1e-9"))

    first = S[u]
    if np.max(np.abs(first.imag)) > EPS or np.any(first.real <= 0):
        out.append(Violation("s-positive", "S[unit][i] must be real and positive"))
    else:
        expected = md.qdim / md.total_dim
        if np.max(np.abs(first.real - expected)) > EPS:
            out.append(Violation("s-positive", "S[unit][i] != d_i / D"))

    if abs(md.theta[u] - 1) > EPS:
        out.append(Violation("twist-unit", "theta_unit != 1"))
    if np.max(np.abs(np.abs(md.theta) - 1)) > EPS:
        out.append(Violation("twist-modulus", "twists must have modulus 1"))
    dual = list(md.dual)
    if np.max(np.abs(md.theta[dual] - md.theta)) > EPS:
        out.append(Violation("twist-dual", "theta_{dual(i)} != theta_i"))

    # Verlinde: sum_a S[i][a] S[j][a] conj(S[k][a]) / S[unit][a] must equal N
    if np.min(np.abs(S[u])) < EPS:
        out.append(Violation("verlinde", "S[unit][a] vanishes; Verlinde sum undefined"))
    else:
        nums = np.einsum("ia,ja,ka->ijka", S, S, S.conj())
        nums = np.sum(nums / S[u], axis=-1)
        if np.max(np.abs(nums - md.ring.fusion)) > INT_TOL:
            out.append(
                Violation("verlinde", "S and fusion tensor disagree (residual > 1e-6)")
            )

    return out


# ---------------------------------------------------------------------------
# constructions


def deligne_product(C: ModularData, D: ModularData) -> ModularData:
    """Product category: labels are pairs, N multiplies, S is the Kronecker

    product and twists multiply.
    """
    _require_valid(C)
    _require_valid(D)
    rc, rd = C.rank, D.rank
    labels = tuple(f"({a},{b})" for a in C.labels for b in D.labels)
    unit = C.unit * rd + D.unit
    dual = tuple(C.dual[i] * rd + D.dual[j] for i in range(rc) for j in range(rd))
    fusion = np.einsum("ikm,jln->ijklmn", C.ring.fusion, D.ring.fusion)
    fusion = fusion.reshape(rc * rd, rc * rd, rc * rd)
    S = np.kron(C.S, D.S)
    theta = np.outer(C.theta, D.theta).reshape(-1)
    qdim = np.outer(C.qdim, D.qdim).reshape(-1)
    return make_modular_data(
        f"{C.name}(x){D.name}", labels, unit, dual, fusion, S, theta, qdim
    )


def conjugate(C: ModularData) -> ModularData:
    """Mirror category: same fusion ring, conjugated S and twists."""
    return make_modular_data(
        f"{C.name}~", C.labels, C.unit, C.dual, C.ring.fusion,
        C.S.conj(), C.theta.conj(), C.qdim,
    )


def _require_valid(md: ModularData) -> None:
    if md._valid is None:
        md._valid = not (validate_fusion_ring(md.ring) or validate_modular_data(md))
    if not md._valid:
        raise StructuralError(f"category {md.name!r} fails validation")


def zn_toric(n: int) -> ModularData:
    """Z_n toric code (quantum double of Z_n): n^2 abelian simples e^p m^q.

    S[(p,q)][(p',q')] = omega^-(p q' + q p') / n, theta_(p,q) = omega^(p q)
    with omega = exp(2 pi i / n).
    """
    if n < 2:
        raise StructuralError("zn_toric needs n >= 2")
    pairs = [(p, q) for p in range(n) for q in range(n)]
    idx = {pq: k for k, pq in enumerate(pairs)}
    labels = tuple(f"e{q}m{p}" for p, q in pairs)
    unit = idx[(0, 0)]
    dual = tuple(idx[((-p) % n, (-q) % n)] for p, q in pairs)
    r = n * n
    fusion = np.zeros((r, r, r), dtype=np.int64)
    for a, (p1, q1) in enumerate(pairs):
        for b, (p2, q2) in enumerate(pairs):
            fusion[a, b, idx[((p1 + p2) % n, (q1 + q2) % n)]] = 1
    omega = cmath.exp(2j * cmath.pi / n)
    S = np.array(
        [[omega ** (-(p1 * q2 + q1 * p2)) / n for p2, q2 in pairs] for p1, q1 in pairs],
        dtype=np.complex128,
    )
    theta = np.array([omega ** (p * q) for p, q in pairs], dtype=np.complex128)
    return make_modular_data(f"zn_toric_{n}", labels, unit, dual, fusion, S, theta,
                             np.ones(r))


# ---------------------------------------------------------------------------
# documented JSON file format


def modular_data_from_dict(doc: dict) -> ModularData:
    """Read the category file format.

    ``{"name", "labels", "unit", "dual": {label: label},
    "fusion": [[i, j, k, mult], ...] (sparse, labels, omitted = 0),
    "S": [[[re, im], ...], ...], "theta": [[re, im], ...],
    "qdim": [float, ...] (optional)}``
    """
    try:
        labels = list(doc["labels"])
        pos = {lab: k for k, lab in enumerate(labels)}
        if len(pos) != len(labels):
            raise StructuralError("duplicate labels")
        unit = pos[doc["unit"]]
        dual = [pos[doc["dual"][lab]] for lab in labels]
        r = len(labels)
        fusion = np.zeros((r, r, r), dtype=np.int64)
        for i, j, k, mult in doc["fusion"]:
            fusion[pos[i], pos[j], pos[k]] = int(mult)
        S = np.array([[complex(re, im) for re, im in row] for row in doc["S"]])
        theta = np.array([complex(re, im) for re, im in doc["theta"]])
        qdim = doc.get("qdim")
    except StructuralError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise StructuralError(f"malformed category data: {exc}") from exc
    return make_modular_data(doc.get("name", "?"), labels, unit, dual, fusion, S, theta, qdim)


def modular_data_to_dict(md: ModularData) -> dict:
    sparse = [
        [md.labels[i], md.labels[j], md.labels[k], int(md.ring.fusion[i, j, k])]
        for i, j, k in np.argwhere(md.ring.fusion)
    ]
    return {
        "name": md.name,
        "labels": list(md.labels),
        "unit": md.labels[md.unit],
        "dual": {md.labels[i]: md.labels[d] for i, d in enumerate(md.dual)},
        "fusion": sparse,
        "S": [[[z.real, z.imag] for z in row] for row in md.S],
        "theta": [[z.real, z.imag] for z in md.theta],
        "qdim": [float(d) for d in md.qdim],
    }


# ---------------------------------------------------------------------------
# catalog

_CATALOG: dict[str, ModularData] | None = None


def builtin_catalog() -> dict[str, ModularData]:
    """Built-in categories, loaded from fixture files and validated once."""
    global _CATALOG
    if _CATALOG is None:
        cat: dict[str, ModularData] = {}
        for name in ("trivial", "toric_code", "fib", "ising", "semion"):
            text = resources.files("strata.data").joinpath(f"{name}.json").read_text()
            cat[name] = modular_data_from_dict(json.loads(text))
        for n in (2, 3, 4, 5):
            cat[f"zn_toric_{n}"] = zn_toric(n)
        for name, md in cat.items():
            report = validate_fusion_ring(md.ring) + validate_modular_data(md)
            if report:
                raise StructuralError(f"builtin {name!r} invalid: {report}")
            md._valid = True
        _CATALOG = cat
    return _CATALOG


def catalog_get(name: str) -> ModularData:
    cat = builtin_catalog()
    if name not in cat:
        raise UnknownNameError("category", name, list(cat))
    return cat[name]
