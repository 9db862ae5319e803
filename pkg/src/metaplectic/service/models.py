"""Request/response models of the compute service.

Wire conventions (schema 1): rationals are "num/den" strings, complex numbers
are [re, im] pairs, +-1 values are plain ints, matrices are nested lists of
rational strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


def parse_rational(s: str | int | float) -> Fraction:
    if isinstance(s, str):
        return Fraction(s.replace(" ", ""))
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def parse_matrix(rows: list[list[str]]) -> tuple:
    return tuple(tuple(parse_rational(x) for x in row) for row in rows)


def format_matrix(rows) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in rows]


def complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


class CharacterSpec(BaseModel):
    """A multiplicative character: unramified value, named kind, or table."""

    conductor: int = 0
    value_at_pi: list[float] = Field(default=[1.0, 0.0])
    kind: Literal["unramified", "legendre", "generator", "table"] = "unramified"
    generator_value: list[float] | None = None
    table: dict[str, list[float]] | None = None

    def build(self, place):
        from ..field import MultiplicativeCharacter

        v = complex(*self.value_at_pi)
        if self.kind == "unramified" or self.conductor == 0:
            return MultiplicativeCharacter.unramified(place, v)
        if self.kind == "legendre":
            return MultiplicativeCharacter.legendre_char(place, v)
        if self.kind == "generator":
            gv = complex(*(self.generator_value or [1.0, 0.0]))
            return MultiplicativeCharacter.from_generator(place, self.conductor, gv, v)
        table = {int(k): complex(*val) for k, val in (self.table or {}).items()}
        return MultiplicativeCharacter(place, self.conductor, v, table)


class VersionedResponse(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")

    model_config = {"populate_by_name": True}


# -- hilbert ----------------------------------------------------------------

class HilbertRequest(BaseModel):
    place: str
    a: str
    b: str


class HilbertResponse(VersionedResponse):
    place: str
    a: str
    b: str
    value: int


# -- weil ---------------------------------------------------------------------

class WeilRequest(BaseModel):
    place: str
    a: str
    psi_twist: str = "1"
    bruteforce: bool = False


class WeilResponse(VersionedResponse):
    place: str
    square_class: str
    gamma: str
    value: list[float]
    bruteforce: list[float] | None = None


# -- cocycle / metaplectic multiplication ------------------------------------

class CocycleRequest(BaseModel):
    place: str
    g: list[list[str]]
    h: list[list[str]]
    similitude: bool = False


class CocycleResponse(VersionedResponse):
    place: str
    value: int
    trace: dict | None = None


class MpElement(BaseModel):
    g: list[list[str]]
    eps: int = 1


class MpMulRequest(BaseModel):
    place: str
    elements: list[MpElement]


class MpMulResponse(VersionedResponse):
    place: str
    g: list[list[str]]
    eps: int


# -- bruhat -------------------------------------------------------------------

class BruhatRequest(BaseModel):
    place: str = "q2"
    g: list[list[str]]


class BruhatResponse(VersionedResponse):
    p1: list[list[str]]
    S: list[int]
    p2: list[list[str]]
    x_class: str
    cell_index: int


# -- local coefficients -------------------------------------------------------

class LocalCoefRequest(BaseModel):
    place: str
    mode: Literal["closed", "integral", "both"] = "both"
    char: CharacterSpec = CharacterSpec()
    psi_twist: str = "1"
    s: list[float] = Field(default=[0.5, 0.0])
    emit_decomposition: bool = False
    # real place inputs
    parity: int = 1
    a: float = 1.0
    b: float = 1.0


class LocalCoefResponse(VersionedResponse):
    place: str
    s: list[float]
    closed: list[float] | None = None
    integral: list[float] | None = None
    rel_error: float | None = None
    decomposition: dict | None = None
    gamma_form: list[float] | None = None


# -- symbolic gamma factors -----------------------------------------------------

class GammaRequest(BaseModel):
    kind: Literal["tate", "sym2", "rankin", "metaplectic", "lpsi"]
    q: float = 3.0
    params: list[list[float]] = Field(default_factory=list)
    params_b: list[list[float]] = Field(default_factory=list)
    shift: float = 0.0
    doubled: bool = False


class GammaResponse(VersionedResponse):
    kind: str
    scalar: list[float]
    degree: int
    zeros: list[list[float]]
    poles: list[list[float]]
    flagged: bool


# -- mellin ---------------------------------------------------------------------

class MellinRequest(BaseModel):
    place: str
    kind: Literal["zeta", "tate", "gamma-tilde", "phi-tilde"]
    char: CharacterSpec = CharacterSpec()
    s: list[float] = Field(default=[0.5, 0.0])
    indicator: Literal["ball", "coset"] = "ball"
    n: int = 0
    a: str = "1"
    y: str = "1"


class MellinResponse(VersionedResponse):
    place: str
    kind: str
    value: list[float]
    direct: list[float] | None = None


# -- reducibility -----------------------------------------------------------------

class ReducibilityEntry(BaseModel):
    value: list[float] | None = None
    quadratic_ramified: bool = False


class ReducibilityRequest(BaseModel):
    q: float = 3.0
    entries: list[ReducibilityEntry]


class ReducibilityResponse(VersionedResponse):
    verdict: str
    reflections: list[dict]


# -- tables -----------------------------------------------------------------------

class TableRequest(BaseModel):
    kind: Literal["q2-weil", "square-classes", "weil"] = "q2-weil"
    place: str = "q2"


class TableResponse(VersionedResponse):
    kind: str
    place: str
    table: dict[str, str]


# -- verification -------------------------------------------------------------------

class VerifyRequest(BaseModel):
    suite: str
    seed: int = 0
    trials: int | None = None
    instances: int | None = None
    draws: int | None = None
    spoints: int | None = None
    tol: float = 1e-8

    def params(self) -> dict:
        out = {"seed": self.seed, "tol": self.tol}
        for key in ("trials", "instances", "draws", "spoints"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


class VerifyResponse(VersionedResponse):
    suite: str
    passed: bool
    elapsed: float
    checks: list[dict]
