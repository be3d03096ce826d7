"""Stratified surfaces as region graphs, plus their text format.

A surface is a connected multigraph: nodes are maximal 2d regions (with
a category, a genus, anyon insertions and capped boundary circles) and
edges are wall-labeled loops.  Region genus means the genus of the cut
subsurface; the ambient genus is derived as

    total_genus = sum of region genera + (#walls - #regions + 1).

Text format (line oriented, ``#`` comments, declarations unordered,
forward references allowed):

    region <id> : <category> genus=<int> [anyons=[<label>,...]] [boundaries=[<name>,...]]
    wall <id> : <regionId> -> <regionId> matrix=<wallName>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .defects import LagrangianAlgebra, WallMatrix, check_wall_anomaly_free, validate_lagrangian
from .errors import DslError, UnknownNameError, Violation
from .fusion_data import ModularData, validate_fusion_ring, validate_modular_data
from .verlinde import ObjectVector, same_category, simple
from .workspace import Workspace


@dataclass(eq=False)
class RegionSpec:
    id: str
    category: ModularData
    genus: int
    anyons: list[ObjectVector] = field(default_factory=list)
    anyon_labels: list[str] = field(default_factory=list)
    boundaries: list[LagrangianAlgebra] = field(default_factory=list)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RegionSpec):
            return NotImplemented
        return (
            self.id == other.id
            and same_category(self.category, other.category)
            and self.genus == other.genus
            and self.anyons == other.anyons
            and [b.vector for b in self.boundaries] == [b.vector for b in other.boundaries]
        )


@dataclass(eq=False)
class WallEdge:
    id: str
    from_region: str
    to_region: str
    wall: WallMatrix

    def __eq__(self, other) -> bool:
        if not isinstance(other, WallEdge):
            return NotImplemented
        return (
            self.id == other.id
            and self.from_region == other.from_region
            and self.to_region == other.to_region
            and self.wall == other.wall
        )


@dataclass(eq=False)
class SurfaceSpec:
    regions: list[RegionSpec] = field(default_factory=list)
    walls: list[WallEdge] = field(default_factory=list)

    def region(self, rid: str) -> RegionSpec:
        for r in self.regions:
            if r.id == rid:
                return r
        raise UnknownNameError("region", rid, [r.id for r in self.regions])

    def edge(self, eid: str) -> WallEdge:
        for e in self.walls:
            if e.id == eid:
                return e
        raise UnknownNameError("wall edge", eid, [e.id for e in self.walls])

    def edges_at(self, rid: str) -> list[WallEdge]:
        return [e for e in self.walls if rid in (e.from_region, e.to_region)]

    def degree(self, rid: str) -> int:
        return sum(
            (e.from_region == rid) + (e.to_region == rid) for e in self.walls
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SurfaceSpec):
            return NotImplemented
        return self.regions == other.regions and self.walls == other.walls


def total_genus(spec: SurfaceSpec) -> int:
    """Genus of the realized closed surface: region genera plus cycle rank."""
    if not spec.regions:
        return 0
    return sum(r.genus for r in spec.regions) + len(spec.walls) - len(spec.regions) + 1


def is_connected(spec: SurfaceSpec) -> bool:
    if not spec.regions:
        return False
    adjacency: dict[str, set[str]] = {r.id: set() for r in spec.regions}
    for e in spec.walls:
        adjacency[e.from_region].add(e.to_region)
        adjacency[e.to_region].add(e.from_region)
    seen = {spec.regions[0].id}
    stack = [spec.regions[0].id]
    while stack:
        for nxt in adjacency[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(spec.regions)


def validate_surface(spec: SurfaceSpec) -> list[Violation]:
    """Deep check: categories modular, walls anomaly-free, boundaries

    Lagrangian, graph connected.  Structural resolution was already done
    by the parser or the caller.
    """
    out: list[Violation] = []
    if not spec.regions:
        return [Violation("empty", "surface has no regions")]

    seen_cats: list = []
    for r in spec.regions:
        md = r.category
        if any(md is c for c in seen_cats):
            continue
        seen_cats.append(md)
        if md._valid is None:
            report = validate_fusion_ring(md.ring) + validate_modular_data(md)
            md._valid = not report
        if not md._valid:
            out.append(Violation("category", f"region {r.id!r}: category {md.name!r} invalid"))

    for e in spec.walls:
        for v in check_wall_anomaly_free(e.wall):
            out.append(
                Violation("wall", f"wall {e.id!r} ({e.wall.name}) not anomaly-free: {v.message}")
            )

    for r in spec.regions:
        for b in r.boundaries:
            for v in validate_lagrangian(b.category, b.vector):
                out.append(
                    Violation("boundary", f"region {r.id!r} boundary {b.name!r}: {v.message}")
                )

    if not is_connected(spec):
        out.append(Violation("connected", "region graph is not connected"))

    return out


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"[A-Za-z0-9_]+|->|[:=\[\],]|\S")


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _tokenize_line(text: str, lineno: int) -> list[_Tok]:
    code = text.split("#", 1)[0]
    toks = []
    for m in _TOKEN.finditer(code):
        toks.append(_Tok(m.group(), lineno, m.start() + 1))
    return toks


class _LineParser:
    def __init__(self, toks: list[_Tok], lineno: int, width: int):
        self.toks = toks
        self.pos = 0
        self.lineno = lineno
        self.width = width

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _fail(self, message: str, kind: str = "syntax"):
        tok = self.peek()
        col = tok.col if tok else self.width + 1
        raise DslError(message, self.lineno, col, kind)

    def take(self, what: str = "more input") -> _Tok:
        tok = self.peek()
        if tok is None:
            self._fail(f"expected {what}, found end of line")
        self.pos += 1
        return tok

    def symbol(self, sym: str) -> _Tok:
        tok = self.take(repr(sym))
        if tok.text != sym:
            raise DslError(f"expected {sym!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def word(self, what: str) -> _Tok:
        tok = self.take(what)
        if not re.fullmatch(r"[A-Za-z0-9_]+", tok.text):
            raise DslError(f"expected {what}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def integer(self, what: str) -> int:
        tok = self.word(what)
        if not tok.text.isdigit():
            raise DslError(f"expected {what} (an integer), found {tok.text!r}", tok.line, tok.col)
        return int(tok.text)

    def name_list(self) -> list[_Tok]:
        self.symbol("[")
        names: list[_Tok] = []
        if self.peek() and self.peek().text == "]":
            self.take()
            return names
        while True:
            names.append(self.word("name"))
            tok = self.take("',' or ']'")
            if tok.text == "]":
                return names
            if tok.text != ",":
                raise DslError(f"expected ',' or ']', found {tok.text!r}", tok.line, tok.col)

    def end(self):
        if self.peek() is not None:
            self._fail(f"unexpected trailing {self.peek().text!r}")


def parse_surface(text: str, env: Workspace | None = None) -> SurfaceSpec:
    """Parse and resolve a surface description.

    Raises :class:`DslError` with a 1-based line/column for syntax
    problems, unknown names, duplicate ids and category mismatches at
    wall ends (each a distinct ``kind``).
    """
    env = env or Workspace.with_builtins()
    region_decls = []  # (tokens already consumed into tuples)
    wall_decls = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokenize_line(raw, lineno)
        if not toks:
            continue
        p = _LineParser(toks, lineno, len(raw))
        head = p.take()
        if head.text == "region":
            rid = p.word("region id")
            p.symbol(":")
            cat = p.word("category name")
            key = p.word("'genus'")
            if key.text != "genus":
                raise DslError(f"expected 'genus', found {key.text!r}", key.line, key.col)
            p.symbol("=")
            genus = p.integer("genus value")
            anyons: list[_Tok] | None = None
            boundaries: list[_Tok] | None = None
            while p.peek() is not None:
                key = p.word("'anyons' or 'boundaries'")
                if key.text == "anyons":
                    if anyons is not None:
                        raise DslError("duplicate anyons=[...]", key.line, key.col)
                    p.symbol("=")
                    anyons = p.name_list()
                elif key.text == "boundaries":
                    if boundaries is not None:
                        raise DslError("duplicate boundaries=[...]", key.line, key.col)
                    p.symbol("=")
                    boundaries = p.name_list()
                else:
                    raise DslError(
                        f"expected 'anyons' or 'boundaries', found {key.text!r}",
                        key.line, key.col,
                    )
            p.end()
            region_decls.append((rid, cat, genus, anyons or [], boundaries or []))
        elif head.text == "wall":
            eid = p.word("wall id")
            p.symbol(":")
            src = p.word("region id")
            p.symbol("->")
            dst = p.word("region id")
            key = p.word("'matrix'")
            if key.text != "matrix":
                raise DslError(f"expected 'matrix', found {key.text!r}", key.line, key.col)
            p.symbol("=")
            wname = p.word("wall name")
            p.end()
            wall_decls.append((eid, src, dst, wname))
        else:
            raise DslError(
                f"expected 'region' or 'wall', found {head.text!r}", head.line, head.col
            )

    # resolution pass (forward references allowed, so done after parsing)
    spec = SurfaceSpec()
    region_ids: dict[str, _Tok] = {}
    for rid, cat, genus, anyons, boundaries in region_decls:
        if rid.text in region_ids:
            raise DslError(f"duplicate region id {rid.text!r}", rid.line, rid.col, "duplicate")
        region_ids[rid.text] = rid
        try:
            md = env.category(cat.text)
        except UnknownNameError as exc:
            raise DslError(str(exc), cat.line, cat.col, "unknown-name") from exc
        region = RegionSpec(rid.text, md, genus)
        for tok in anyons:
            region.anyons.append(_resolve_anyon(env, md, tok))
            region.anyon_labels.append(tok.text)
        for tok in boundaries:
            try:
                algebra = env.algebra(tok.text)
            except UnknownNameError as exc:
                raise DslError(str(exc), tok.line, tok.col, "unknown-name") from exc
            if not same_category(algebra.category, md):
                raise DslError(
                    f"boundary {tok.text!r} lives over {algebra.category.name!r},"
                    f" not region category {md.name!r}",
                    tok.line, tok.col, "category-mismatch",
                )
            region.boundaries.append(algebra)
        spec.regions.append(region)

    edge_ids: set[str] = set()
    for eid, src, dst, wname in wall_decls:
        if eid.text in edge_ids:
            raise DslError(f"duplicate wall id {eid.text!r}", eid.line, eid.col, "duplicate")
        edge_ids.add(eid.text)
        for tok in (src, dst):
            if tok.text not in region_ids:
                raise DslError(
                    f"unknown region {tok.text!r}", tok.line, tok.col, "unknown-name"
                )
        try:
            wall = env.wall(wname.text)
        except UnknownNameError as exc:
            raise DslError(str(exc), wname.line, wname.col, "unknown-name") from exc
        src_cat = spec.region(src.text).category
        dst_cat = spec.region(dst.text).category
        if not same_category(wall.from_cat, src_cat):
            raise DslError(
                f"wall {wname.text!r} starts in {wall.from_cat.name!r},"
                f" but region {src.text!r} is {src_cat.name!r}",
                src.line, src.col, "category-mismatch",
            )
        if not same_category(wall.to_cat, dst_cat):
            raise DslError(
                f"wall {wname.text!r} ends in {wall.to_cat.name!r},"
                f" but region {dst.text!r} is {dst_cat.name!r}",
                dst.line, dst.col, "category-mismatch",
            )
        spec.walls.append(WallEdge(eid.text, src.text, dst.text, wall))

    return spec


def _resolve_anyon(env: Workspace, md, tok: _Tok) -> ObjectVector:
    # an anyon name is a simple label of the region's category, or a named
    # object vector (an algebra used as an insertion)
    if tok.text in md.labels:
        return simple(md, tok.text)
    if tok.text in env.algebras:
        algebra = env.algebras[tok.text]
        if not same_category(algebra.category, md):
            raise DslError(
                f"insertion {tok.text!r} lives over {algebra.category.name!r},"
                f" not region category {md.name!r}",
                tok.line, tok.col, "category-mismatch",
            )
        return algebra.vector
    raise DslError(
        f"unknown anyon {tok.text!r} (not a simple of {md.name!r} or a named vector)",
        tok.line, tok.col, "unknown-name",
    )


def canonical_text(spec: SurfaceSpec) -> str:
    """Emit a text form that re-parses to an equal spec.

    Insertions whose names were lost (vectors produced by rewrite moves)
    have no text form; the parser never produces such regions.
    """
    lines = []
    for r in spec.regions:
        if any(label is None for label in r.anyon_labels):
            raise StructuralError(
                f"region {r.id!r} carries unnamed insertions; no canonical text"
            )
        parts = [f"region {r.id} : {r.category.name} genus={r.genus}"]
        if r.anyon_labels:
            parts.append("anyons=[" + ",".join(r.anyon_labels) + "]")
        if r.boundaries:
            parts.append("boundaries=[" + ",".join(b.name for b in r.boundaries) + "]")
        lines.append(" ".join(parts))
    for e in spec.walls:
        lines.append(f"wall {e.id} : {e.from_region} -> {e.to_region} matrix={e.wall.name}")
    return "\n".join(lines) + "\n"
