"""Ground-state degeneracy of a decorated surface.

The region graph is contracted as a tensor network.  Every wall edge
contributes two legs: ``u`` (simples of the source category, felt by the
source region) and ``v`` (simples of the target category; the target
region feels ``dual(v)``), coupled by the tunneling matrix W[u][v].
Every region contributes an exact multiplicity table

    T[s_1, ..., s_d] = dim hom(1, anyons (x) boundaries (x) H^g (x) s_1 (x) ... (x) s_d)

over its incident legs.  The degeneracy is the full contraction, carried
out by region elimination with arbitrary-precision integer tables, so
the result is exact.  A second evaluation path builds the same tables
through the S matrix and must agree after rounding.

The rewrite moves in :func:`apply_move` are the degeneracy-preserving
surgeries the calculator is built on: fusing insertions, composing walls
across a bare annulus, splitting a region along a transparent wall,
trading one unit of genus for a handle insertion, capping a boundary,
and flipping an edge orientation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .defects import (
    WallMatrix,
    check_wall_anomaly_free,
    compose_walls,
    identity_wall,
    reverse_wall,
    validate_wall,
)
from .errors import (
    CategoryMismatchError,
    ConsistencyError,
    InvalidDataError,
    MoveError,
    StructuralError,
)
from .fusion_data import INT_TOL, ModularData
from .surface import RegionSpec, SurfaceSpec, WallEdge, validate_surface
from .verlinde import (
    ObjectVector,
    characters,
    fuse,
    fuse_simple,
    handle_object,
    same_category,
    unit_multiplicity,
    unit_vector,
)


@dataclass
class ReductionTrace:
    """Ordered log of the reduction steps behind one computed value."""

    entries: list[str] = field(default_factory=list)

    def log(self, message: str) -> None:
        self.entries.append(message)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class GsdResult:
    value: int
    trace: ReductionTrace


# ---------------------------------------------------------------------------
# factor tables


@dataclass(eq=False)
class _Factor:
    vars: list[str]
    table: np.ndarray  # object dtype, one axis per var (possibly 0-dim)


def _contract_pair(f1: _Factor, f2: _Factor) -> _Factor:
    shared = [v for v in f1.vars if v in f2.vars]
    ax1 = [f1.vars.index(v) for v in shared]
    ax2 = [f2.vars.index(v) for v in shared]
    table = np.tensordot(f1.table, f2.table, axes=(ax1, ax2))
    keep = [v for v in f1.vars if v not in shared] + [v for v in f2.vars if v not in shared]
    return _Factor(keep, table)


def _slots(spec: SurfaceSpec, rid: str) -> list[tuple[str, bool, WallEdge]]:
    """Incident edge legs of a region, in edge-declaration order.

    Each leg is (variable name, whether the region feels the dual label,
    edge).  A self-loop contributes both of its legs.
    """
    out = []
    for e in spec.walls:
        if e.from_region == rid:
            out.append((f"{e.id}.u", False, e))
        if e.to_region == rid:
            out.append((f"{e.id}.v", True, e))
    return out


def _region_base(region: RegionSpec) -> list[ObjectVector]:
    return list(region.anyons) + [b.vector for b in region.boundaries]


def _region_factor_exact(region: RegionSpec, slots, trace: ReductionTrace) -> _Factor:
    md = region.category
    base = unit_vector(md)
    for x in _region_base(region):
        base = fuse(base, x)
    if region.genus:
        H = handle_object(md)
        for _ in range(region.genus):
            base = fuse(base, H)
        trace.log(
            f"region {region.id}: traded genus {region.genus} for"
            f" {region.genus} handle insertion(s)"
        )
    k = md.rank
    d = len(slots)
    if d == 0:
        return _Factor([], np.array(unit_multiplicity(base), dtype=object))
    table = np.empty((k,) * d, dtype=object)

    def fill(depth: int, vec: ObjectVector, idx: tuple[int, ...]):
        if depth == d:
            table[idx] = unit_multiplicity(vec)
            return
        use_dual = slots[depth][1]
        for s in range(k):
            eff = md.dual[s] if use_dual else s
            fill(depth + 1, fuse_simple(vec, eff), idx + (s,))

    fill(0, base, ())
    return _Factor([v for v, _, _ in slots], table)


def _region_factor_verlinde(region: RegionSpec, slots, trace: ReductionTrace) -> _Factor:
    md = region.category
    S = md.S
    u = md.unit
    vectors = _region_base(region)
    power = 2 - 2 * region.genus - len(vectors) - len(slots)
    acc = S[u] ** power
    for x in vectors:
        acc = acc * characters(md, x)
    if not slots:
        return _Factor([], np.array(_round_exact(complex(np.sum(acc))), dtype=object))
    dual_rows = S[list(md.dual)]
    for _, use_dual, _ in slots:
        rows = dual_rows if use_dual else S
        acc = acc[..., None, :] * rows  # append one leg axis before the a-axis
    total = acc.sum(axis=-1)
    # leg axes were appended innermost-first relative to slot order
    table = np.rint(total.real)
    if np.max(np.abs(total - table)) >= INT_TOL:
        raise ConsistencyError(
            f"region {region.id}: S-matrix table does not round to integers"
        )
    return _Factor([v for v, _, _ in slots], table.astype(np.int64).astype(object))


def _round_exact(value: complex) -> int:
    nearest = round(value.real)
    if abs(value - nearest) >= INT_TOL:
        raise ConsistencyError(f"value {value} is not within {INT_TOL} of an integer")
    return int(nearest)


# ---------------------------------------------------------------------------
# contraction


def _elimination_order(spec: SurfaceSpec, order: str) -> list[str]:
    if order == "input":
        return [r.id for r in spec.regions]
    if order != "greedy":
        raise StructuralError(f"unknown elimination order {order!r}")
    remaining = [r.id for r in spec.regions]
    degrees = {r.id: spec.degree(r.id) for r in spec.regions}
    out = []
    while remaining:
        # min-degree-first; ties broken by declaration order
        best = min(remaining, key=lambda rid: degrees[rid])
        out.append(best)
        remaining.remove(best)
        for e in spec.edges_at(best):
            for other in (e.from_region, e.to_region):
                if other in degrees and other != best:
                    degrees[other] -= 1
    return out


def _contract_network(spec: SurfaceSpec, method: str, order: str, trace: ReductionTrace) -> int:
    build = _region_factor_exact if method == "exact" else _region_factor_verlinde
    trace.log(f"contraction: {method} tables, {order} region order")

    factors: list[_Factor] = []
    weight = 1
    for e in spec.walls:
        factors.append(_Factor([f"{e.id}.u", f"{e.id}.v"], e.wall.matrix.astype(object)))

    region_factors: dict[str, _Factor] = {}
    for r in spec.regions:
        f = build(r, _slots(spec, r.id), trace)
        shape = "x".join(str(s) for s in f.table.shape) or "scalar"
        trace.log(f"region {r.id}: multiplicity table over {len(f.vars)} leg(s) [{shape}]")
        region_factors[r.id] = f
        factors.append(f)

    eliminated: set[str] = set()
    for rid in _elimination_order(spec, order):
        for var, _, edge in _slots(spec, rid):
            if var in eliminated:
                continue
            touching = [f for f in factors if var in f.vars]
            if len(touching) != 2:
                raise StructuralError(f"leg {var} is not shared by exactly two tables")
            merged = _contract_pair(touching[0], touching[1])
            gone = set(touching[0].vars) & set(touching[1].vars)
            eliminated |= gone
            trace.log(
                f"eliminated leg(s) {', '.join(sorted(gone))} of edge {edge.id}"
                f" ({edge.from_region}->{edge.to_region} via {edge.wall.name})"
            )
            factors = [f for f in factors if f not in touching]
            if merged.vars:
                factors.append(merged)
            else:
                weight *= int(merged.table)

    for f in factors:  # regions with no incident edges
        if f.vars:
            raise StructuralError("contraction left free legs (disconnected input?)")
        weight *= int(f.table)

    trace.log(f"fully contracted: {weight}")
    return weight


def gsd(
    spec: SurfaceSpec,
    method: str = "exact",
    order: str = "greedy",
    trace: bool = False,
    validate: bool = True,
) -> GsdResult:
    """Ground-state degeneracy of a decorated surface.

    method: 'exact' (integer fusion path), 'verlinde' (S-matrix path,
    rounded with residual checks) or 'both' (run both, demand equality).
    order: 'greedy' (min-degree-first region elimination) or 'input'.
    """
    if method not in ("exact", "verlinde", "both"):
        raise StructuralError(f"unknown method {method!r}")
    if validate:
        report = validate_surface(spec)
        if report:
            raise InvalidDataError("surface failed validation", report)

    tr = ReductionTrace()
    if method == "both":
        exact = _contract_network(spec, "exact", order, tr)
        check = _contract_network(spec, "verlinde", order, tr)
        if exact != check:
            raise ConsistencyError(
                f"exact path gives {exact} but S-matrix path gives {check};"
                " the input data is corrupt"
            )
        tr.log(f"paths agree: {exact}")
        value = exact
    else:
        value = _contract_network(spec, method, order, tr)
    return GsdResult(value, tr if trace else ReductionTrace())


def chain_wall(walls: list[WallMatrix]) -> WallMatrix:
    """Fuse a chain of composable walls into one (matrix product)."""
    if not walls:
        raise StructuralError("empty wall chain")
    acc = walls[0]
    for w in walls[1:]:
        acc = compose_walls(acc, w)
    return acc


def gsd_chain(categories: list[ModularData], walls: list[WallMatrix], closed: bool) -> int:
    """Degeneracy of a chain of wall loops on a cylinder.

    ``categories`` are the 2d phases between consecutive walls and are
    checked against the walls' endpoints.  Closed (the cylinder glued to
    a torus): trace of the matrix product.  Open, capped by two disks:
    the (unit, unit) entry of the product; the full product matrix is
    available through :func:`chain_wall`.
    """
    if not walls:
        raise StructuralError("empty wall chain")
    expected = [w.from_cat for w in walls]
    if not closed:
        expected = expected + [walls[-1].to_cat]
    if len(categories) != len(expected) or any(
        not same_category(a, b) for a, b in zip(categories, expected)
    ):
        raise CategoryMismatchError("categories do not match the wall endpoints")
    for w1, w2 in zip(walls, walls[1:]):
        if not same_category(w1.to_cat, w2.from_cat):
            raise CategoryMismatchError(f"walls {w1.name!r} and {w2.name!r} do not compose")
    product = chain_wall(walls)
    if closed:
        if not same_category(product.from_cat, product.to_cat):
            raise CategoryMismatchError("closed chain must return to its first category")
        return int(np.trace(product.matrix.astype(object)))
    return int(product.matrix[product.from_cat.unit, product.to_cat.unit])


# ---------------------------------------------------------------------------
# rewrite moves


@dataclass(frozen=True)
class FuseAnyons:
    region: str
    first: int
    second: int


@dataclass(frozen=True)
class ComposeParallelWalls:
    edge1: str
    middle_region: str
    edge2: str


@dataclass(frozen=True)
class SplitPartition:
    """What moves to the new region in a transparent split."""

    genus: int = 0
    anyons: frozenset[int] = frozenset()
    boundaries: frozenset[int] = frozenset()
    edge_ends: frozenset[tuple[str, str]] = frozenset()  # (edge id, 'from'|'to')
    new_region: str = "split"
    new_edge: str = "split_wall"


@dataclass(frozen=True)
class SplitRegionTransparent:
    region: str
    partition: SplitPartition


@dataclass(frozen=True)
class CutHandle:
    region: str


@dataclass(frozen=True)
class CapBoundary:
    region: str
    boundary: int


@dataclass(frozen=True)
class ReverseEdge:
    edge: str


Move = (
    FuseAnyons
    | ComposeParallelWalls
    | SplitRegionTransparent
    | CutHandle
    | CapBoundary
    | ReverseEdge
)


def _copy_spec(spec: SurfaceSpec) -> SurfaceSpec:
    regions = [
        RegionSpec(r.id, r.category, r.genus, list(r.anyons), list(r.anyon_labels),
                   list(r.boundaries))
        for r in spec.regions
    ]
    walls = [WallEdge(e.id, e.from_region, e.to_region, e.wall) for e in spec.walls]
    return SurfaceSpec(regions, walls)


def apply_move(spec: SurfaceSpec, move: Move) -> SurfaceSpec:
    """Apply one degeneracy-preserving rewrite, returning a new spec."""
    out = _copy_spec(spec)

    if isinstance(move, FuseAnyons):
        r = out.region(move.region)
        n = len(r.anyons)
        if not (0 <= move.first < n and 0 <= move.second < n) or move.first == move.second:
            raise MoveError(f"FuseAnyons: bad insertion indices ({move.first}, {move.second})")
        i, j = sorted((move.first, move.second))
        fused = fuse(r.anyons[i], r.anyons[j])
        for idx in (j, i):
            del r.anyons[idx]
            del r.anyon_labels[idx]
        r.anyons.append(fused)
        r.anyon_labels.append(None)
        return out

    if isinstance(move, ComposeParallelWalls):
        if move.edge1 == move.edge2:
            raise MoveError("ComposeParallelWalls: need two distinct edges")
        mid = out.region(move.middle_region)
        if mid.genus != 0 or mid.anyons or mid.boundaries:
            raise MoveError(
                f"ComposeParallelWalls: region {mid.id!r} is not a bare annulus"
            )
        incident = _slots(out, mid.id)
        if len(incident) != 2 or {e.id for _, _, e in incident} != {move.edge1, move.edge2}:
            raise MoveError(
                f"ComposeParallelWalls: region {mid.id!r} must touch exactly"
                f" edges {move.edge1!r} and {move.edge2!r}"
            )
        e1 = out.edge(move.edge1)
        e2 = out.edge(move.edge2)
        if e1.to_region == mid.id:
            w_in, src = e1.wall, e1.from_region
        else:
            w_in, src = reverse_wall(e1.wall), e1.to_region
        if e2.from_region == mid.id:
            w_out, dst = e2.wall, e2.to_region
        else:
            w_out, dst = reverse_wall(e2.wall), e2.from_region
        fused = compose_walls(w_in, w_out)
        problems = validate_wall(fused) or check_wall_anomaly_free(fused)
        if problems:
            # the fused wall is unstable (e.g. unit entry > 1): it is a sound
            # degeneracy-preserving surgery, but its label has no home in
            # this data model, so the move does not apply
            raise MoveError(
                f"ComposeParallelWalls: fused wall is not representable: {problems[0]}"
            )
        out.walls = [e for e in out.walls if e.id not in (e1.id, e2.id)]
        out.regions = [r for r in out.regions if r.id != mid.id]
        out.walls.append(WallEdge(e1.id, src, dst, fused))
        return out

    if isinstance(move, SplitRegionTransparent):
        part = move.partition
        r = out.region(move.region)
        if any(x.id == part.new_region for x in out.regions):
            raise MoveError(f"SplitRegionTransparent: region id {part.new_region!r} taken")
        if any(e.id == part.new_edge for e in out.walls):
            raise MoveError(f"SplitRegionTransparent: edge id {part.new_edge!r} taken")
        if not 0 <= part.genus <= r.genus:
            raise MoveError("SplitRegionTransparent: genus share out of range")
        if any(i >= len(r.anyons) for i in part.anyons) or any(
            i >= len(r.boundaries) for i in part.boundaries
        ):
            raise MoveError("SplitRegionTransparent: insertion index out of range")
        ends_here = {(e.id, "from") for e in out.walls if e.from_region == r.id}
        ends_here |= {(e.id, "to") for e in out.walls if e.to_region == r.id}
        if not set(part.edge_ends) <= ends_here:
            raise MoveError("SplitRegionTransparent: edge end not incident to the region")

        new = RegionSpec(part.new_region, r.category, part.genus)
        for i in sorted(part.anyons, reverse=True):
            new.anyons.append(r.anyons.pop(i))
            new.anyon_labels.append(r.anyon_labels.pop(i))
        for i in sorted(part.boundaries, reverse=True):
            new.boundaries.append(r.boundaries.pop(i))
        r.genus -= part.genus
        for eid, end in sorted(part.edge_ends):
            e = out.edge(eid)
            if end == "from":
                e.from_region = new.id
            else:
                e.to_region = new.id
        out.regions.append(new)
        out.walls.append(
            WallEdge(part.new_edge, r.id, new.id, identity_wall(r.category))
        )
        return out

    if isinstance(move, CutHandle):
        r = out.region(move.region)
        if r.genus < 1:
            raise MoveError(f"CutHandle: region {r.id!r} has genus 0")
        r.genus -= 1
        r.anyons.append(handle_object(r.category))
        r.anyon_labels.append(None)
        return out

    if isinstance(move, CapBoundary):
        r = out.region(move.region)
        if not 0 <= move.boundary < len(r.boundaries):
            raise MoveError(f"CapBoundary: no boundary {move.boundary} on {r.id!r}")
        algebra = r.boundaries.pop(move.boundary)
        r.anyons.append(algebra.vector)
        r.anyon_labels.append(algebra.name)
        return out

    if isinstance(move, ReverseEdge):
        e = out.edge(move.edge)
        e.wall = reverse_wall(e.wall)
        e.from_region, e.to_region = e.to_region, e.from_region
        return out

    raise MoveError(f"unknown move {move!r}")
