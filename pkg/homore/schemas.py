from fractions import Fraction
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, PositiveInt, field_validator

from homore.exactnum import rational


def _coerce_nested(value):
    if isinstance(value, (list, tuple)):
        return [_coerce_nested(v) for v in value]
    return rational(value)


# ----------------------------------------------------------------
# Definition files
# ----------------------------------------------------------------
class AlgebraSpec(BaseModel):
    """Structure constants c[i][j][k] (coefficient of e_k in e_i e_j); alpha column j = alpha(e_j)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str = "algebra"
    dim: PositiveInt
    basis_names: list[str]
    structure_constants: list[list[list[Fraction]]]
    alpha_matrix: list[list[Fraction]]
    unital: Optional[int] = None

    @field_validator("structure_constants", "alpha_matrix", mode="before")
    @classmethod
    def _exact(cls, value):
        return _coerce_nested(value)


class ModuleSpec(BaseModel):
    """Action matrices act on column vectors: m . e_j = action[j] m."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str = "module"
    ring: str
    dim: NonNegativeInt
    side: Literal["right", "left"] = "right"
    action: dict[int, list[list[Fraction]]] = Field(default_factory=dict)
    alpha_matrix: Optional[list[list[Fraction]]] = None

    @field_validator("action", mode="before")
    @classmethod
    def _exact_action(cls, value):
        return {int(k): _coerce_nested(v) for k, v in dict(value).items()}

    @field_validator("alpha_matrix", mode="before")
    @classmethod
    def _exact_alpha(cls, value):
        return None if value is None else _coerce_nested(value)


# ----------------------------------------------------------------
# Reports
# ----------------------------------------------------------------
class HomAssociativityReport(BaseModel):
    algebra: str
    checked: int
    failures: list[tuple[int, int, int]] = []

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self) -> str:
        head = f"homcheck {self.algebra}: {'pass' if self.passed else 'FAIL'} ({self.checked} basis triples)"
        lines = [head] + [f"  witness ({i}, {j}, {k})" for i, j, k in self.failures]
        return "\n".join(lines)


class NucleusFlags(BaseModel):
    left: bool
    middle: bool
    right: bool

    @property
    def full(self) -> bool:
        return self.left and self.middle and self.right

    def render(self) -> str:
        return (
            f"left={self.left} middle={self.middle} right={self.right} full={self.full}"
        ).lower()


class OreHomReport(BaseModel):
    context: str
    samples: int
    failures: list[str] = []

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self) -> str:
        head = f"ore homcheck {self.context}: {'pass' if self.passed else 'FAIL'} ({self.samples} samples)"
        return "\n".join([head] + [f"  witness {w}" for w in self.failures])


class ModuleAxiomsReport(BaseModel):
    module: str
    checked: int
    failures: list[tuple[int, int, int]] = []

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self) -> str:
        head = f"modcheck {self.module}: {'pass' if self.passed else 'FAIL'} ({self.checked} basis triples)"
        return "\n".join([head] + [f"  witness (m={i}, r1={j}, r2={k})" for i, j, k in self.failures])


class XNucleusReport(BaseModel):
    k: int
    samples: int
    failures: list[str] = []

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self) -> str:
        head = f"X^{self.k} nucleus: {'pass' if self.passed else 'FAIL'} ({self.samples} samples)"
        return "\n".join([head] + [f"  witness {w}" for w in self.failures])


class LeadingEntry(BaseModel):
    xdeg: int
    lc: str
    aligned: str
    invertible_monomial: bool


class LeadingIdealReport(BaseModel):
    n: int
    entries: list[LeadingEntry]

    def render(self) -> str:
        lines = [f"common degree n = {self.n}"]
        for e in self.entries:
            flag = "invertible monomial" if e.invertible_monomial else "non-monomial"
            lines.append(f"  deg {e.xdeg}, lc {e.lc} [{flag}] -> {e.aligned}")
        return "\n".join(lines)


# ----------------------------------------------------------------
# HTTP bodies
# ----------------------------------------------------------------
class ComputeRequest(BaseModel):
    verb: str
    args: list[str] = []
    options: dict[str, Any] = {}


class ComputeResponse(BaseModel):
    exit_code: int
    stdout: str
    stderr: str


class ErrorResponse(BaseModel):
    error: str
    details: Optional[dict] = None
