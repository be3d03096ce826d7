"""Request/response models of the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class CategoryPayload(BaseModel):
    """Mirror of the category data file format."""

    name: str
    labels: list[str]
    unit: str
    dual: dict[str, str]
    fusion: list[tuple[str, str, str, int]]
    S: list[list[tuple[float, float]]]
    theta: list[tuple[float, float]]
    qdim: Optional[list[float]] = None


class WallPayload(BaseModel):
    name: str
    from_cat: str = Field(alias="from")
    to_cat: str = Field(alias="to")
    W: list[list[int]]

    model_config = {"populate_by_name": True}


class AlgebraPayload(BaseModel):
    name: str
    category: str
    n: dict[str, int]


class DataBundle(BaseModel):
    """Extra named objects for one request, same shapes as the data files."""

    categories: list[CategoryPayload] = []
    walls: list[WallPayload] = []
    algebras: list[AlgebraPayload] = []


class Problem(BaseModel):
    kind: Literal["parse", "validation", "consistency", "structure"]
    message: str
    line: Optional[int] = None
    col: Optional[int] = None


class ErrorBody(BaseModel):
    kind: Literal["parse", "validation", "consistency", "structure"]
    problems: list[Problem]


class CatalogCategory(BaseModel):
    name: str
    rank: int
    total_dim: float
    labels: list[str]


class CatalogWall(BaseModel):
    name: str
    from_cat: str
    to_cat: str


class CatalogAlgebra(BaseModel):
    name: str
    category: str
    support: list[str]


class CatalogResponse(BaseModel):
    categories: list[CatalogCategory]
    walls: list[CatalogWall]
    algebras: list[CatalogAlgebra]


class ValidateRequest(BaseModel):
    data: DataBundle = DataBundle()
    surfaces: list[str] = []  # surface texts, checked against the data


class ValidateResponse(BaseModel):
    valid: bool
    problems: list[Problem]


class GsdRequest(BaseModel):
    surface: str
    data: DataBundle = DataBundle()
    method: Literal["exact", "verlinde", "both"] = "exact"
    order: Literal["input", "greedy"] = "greedy"
    trace: bool = False


class GsdResponse(BaseModel):
    value: int
    genus: int
    trace: list[str] = []
