"""Named registry of categories, walls and boundary algebras.

A workspace starts from the built-in catalog and grows by loading JSON
data files (formats documented on the loaders).  The surface parser
resolves every name against a workspace.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import StructuralError, UnknownNameError, Violation
from .fusion_data import (
    ModularData,
    builtin_catalog,
    modular_data_from_dict,
    validate_fusion_ring,
    validate_modular_data,
)
from .defects import (
    LagrangianAlgebra,
    WallMatrix,
    check_wall_anomaly_free,
    identity_wall,
    validate_lagrangian,
    validate_wall,
)
from .verlinde import ObjectVector, simple

#: environment variable holding an extra search directory for data files
DATA_DIR_ENV = "STRATA_DATA_DIR"


def _builtin_walls(categories: dict[str, ModularData]) -> dict[str, WallMatrix]:
    walls = {f"id_{name}": identity_wall(md, f"id_{name}") for name, md in categories.items()}
    toric = categories["toric_code"]
    swap = np.zeros((4, 4), dtype=np.int64)
    perm = {"1": "1", "e": "m", "m": "e", "f": "f"}
    for a, b in perm.items():
        swap[toric.index(a), toric.index(b)] = 1
    walls["em_swap"] = WallMatrix("em_swap", toric, toric, swap)
    return walls


def _builtin_algebras(categories: dict[str, ModularData]) -> dict[str, LagrangianAlgebra]:
    toric = categories["toric_code"]
    trivial = categories["trivial"]

    def alg(name, md, support):
        mult = [0] * md.rank
        for lab in support:
            mult[md.index(lab)] = 1
        return LagrangianAlgebra(name, md, ObjectVector(md, tuple(mult)))

    return {
        "rough": alg("rough", toric, ["1", "e"]),
        "smooth": alg("smooth", toric, ["1", "m"]),
        "triv": alg("triv", trivial, ["1"]),
    }


@dataclass
class Workspace:
    categories: dict[str, ModularData] = field(default_factory=dict)
    walls: dict[str, WallMatrix] = field(default_factory=dict)
    algebras: dict[str, LagrangianAlgebra] = field(default_factory=dict)

    @classmethod
    def with_builtins(cls) -> "Workspace":
        cats = dict(builtin_catalog())
        return cls(cats, _builtin_walls(cats), _builtin_algebras(cats))

    # -- lookups ----------------------------------------------------------

    def category(self, name: str) -> ModularData:
        if name not in self.categories:
            raise UnknownNameError("category", name, list(self.categories))
        return self.categories[name]

    def wall(self, name: str) -> WallMatrix:
        if name not in self.walls:
            raise UnknownNameError("wall", name, list(self.walls))
        return self.walls[name]

    def algebra(self, name: str) -> LagrangianAlgebra:
        if name not in self.algebras:
            raise UnknownNameError("algebra", name, list(self.algebras))
        return self.algebras[name]

    # -- loading ----------------------------------------------------------

    def add_category_dict(self, doc: dict) -> ModularData:
        md = modular_data_from_dict(doc)
        self.categories[md.name] = md
        return md

    def add_wall_dict(self, doc: dict) -> WallMatrix:
        """``{"name", "from": categoryName, "to": categoryName, "W": [[int, ...], ...]}``"""
        try:
            wall = WallMatrix(
                doc["name"],
                self.category(doc["from"]),
                self.category(doc["to"]),
                np.array(doc["W"], dtype=np.int64),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed wall data: {exc}") from exc
        self.walls[wall.name] = wall
        return wall

    def add_algebra_dict(self, doc: dict) -> LagrangianAlgebra:
        """``{"name", "category": categoryName, "n": {label: int}}``"""
        try:
            md = self.category(doc["category"])
            mult = [0] * md.rank
            for lab, m in doc["n"].items():
                mult[md.index(lab)] = int(m)
            algebra = LagrangianAlgebra(doc["name"], md, ObjectVector(md, tuple(mult)))
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed algebra data: {exc}") from exc
        self.algebras[algebra.name] = algebra
        return algebra

    def add_data_dict(self, doc: dict) -> str:
        """Dispatch on the keys of a loaded JSON document.

        Returns the kind that was added ('category', 'wall' or 'algebra').
        """
        if "fusion" in doc or "S" in doc:
            self.add_category_dict(doc)
            return "category"
        if "W" in doc:
            self.add_wall_dict(doc)
            return "wall"
        if "n" in doc:
            self.add_algebra_dict(doc)
            return "algebra"
        raise StructuralError(
            "cannot classify data file: expected category (fusion/S), wall (W) or algebra (n) keys"
        )

    def load_data_file(self, path: str | Path) -> str:
        with open(resolve_path(path)) as f:
            doc = json.load(f)
        return self.add_data_dict(doc)

    # -- validation -------------------------------------------------------

    def validate_all(self) -> list[Violation]:
        """Reports from every loaded object, each prefixed with its name."""
        out: list[Violation] = []
        for name, md in self.categories.items():
            if md._valid:
                continue
            report = validate_fusion_ring(md.ring) + validate_modular_data(md)
            md._valid = not report
            out.extend(Violation(v.code, f"category {name!r}: {v.message}") for v in report)
        for name, wall in self.walls.items():
            report = validate_wall(wall)
            if not report:
                report = check_wall_anomaly_free(wall)
            out.extend(Violation(v.code, f"wall {name!r}: {v.message}") for v in report)
        for name, algebra in self.algebras.items():
            report = validate_lagrangian(algebra.category, algebra.vector)
            out.extend(Violation(v.code, f"algebra {name!r}: {v.message}") for v in report)
        return out


def resolve_path(path: str | Path) -> Path:
    """Resolve a data-file path, falling back to $STRATA_DATA_DIR."""
    p = Path(path)
    if p.exists():
        return p
    extra = os.environ.get(DATA_DIR_ENV)
    if extra:
        candidate = Path(extra) / p
        if candidate.exists():
            return candidate
    return p
