"""Request/response schemas for the HTTP service.

Complex values travel as [re, im] pairs, bare numbers, or "a+bi" strings;
words as comma-separated strings or integer lists; classes as symbolic sums
like "2E-E_1-E_2" or raw coefficient lists.  Parsing into domain objects
happens in the api layer so the schemas stay plain JSON.
"""
from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

ComplexJson = float | int | str | list[float] | tuple[float, float]
WordJson = str | list[int]


class LatticeActRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    n: int
    m: int
    word: WordJson = ""
    cls: str | list[int] = Field(alias="class")
    kind: Literal["divisor", "curve"] = "divisor"


class ClassResponse(BaseModel):
    coeffs: list[int]
    pretty: str
    kind: Literal["divisor", "curve"]


class LatticeMatrixRequest(BaseModel):
    n: int
    m: int
    word: WordJson = ""
    direction: Literal["pushforward", "pullback"] = "pushforward"


class MatrixResponse(BaseModel):
    rows: list[list[int]]
    determinant: int
    direction: str


class LatticeDynkinRequest(BaseModel):
    n: int
    m: int


class DynkinResponse(BaseModel):
    adjacency: list[list[int]]
    labels: list[str]


class LatticeOrbitRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    n: int
    m: int
    depth: int = 4
    cls: str | list[int] | None = Field(default=None, alias="class")


class LatticeOrbitResponse(BaseModel):
    depth: int
    count: int
    orbit: list[list[int]]
    member: bool | None = None


class ParamState(BaseModel):
    """theta-ratio state snapshot; complex numbers as [re, im]."""
    step: int
    eps: list[float]
    u: list[list[float]]
    v_np1: list[float]


class OrbitRequest(BaseModel):
    n: int
    m: int
    tau: ComplexJson
    eps: ComplexJson
    u: list[ComplexJson]
    word: WordJson
    steps: int = 1


class OrbitResponse(BaseModel):
    word: list[int]
    states: list[ParamState]


class VerifyRequest(BaseModel):
    n: int
    m: int
    tau: ComplexJson = [0.0, 1.0]
    variant: Literal["theta_ratio", "weierstrass"] = "theta_ratio"
    u: list[ComplexJson] | None = None
    eps: ComplexJson | None = None
    random: bool = False
    seed: int = 0
    word: WordJson = [0]
    compare: WordJson | None = None
    probes: int = 3
    tol: float = 1e-6
    checks: list[Literal["word", "decomposition", "prop32"]] = ["word"]
    timing: bool = False


class VerifyResponse(BaseModel):
    passed: bool
    reports: dict[str, Any]


class ErrorBody(BaseModel):
    error: str
    kind: str
