"""
Definition files for algebras and hom-modules, and the builtin algebra registry.

Algebra files:

    algebra <name>
    dim <d>
    basis <name_0> ... <name_{d-1}>
    unit <index>                               # optional
    mul <i> <j> = <rat>*<k> [+ <rat>*<k> ...]  # omitted products are 0
    alpha <j> = <rat>*<k> [+ ...]              # omitted columns are 0
    end

Module files:

    module <name> over <algebra>
    dim <d>
    side right|left
    act <j> = <row>; <row>; ...
    alphaM = <row>; <row>; ...
    end
"""
from __future__ import annotations

import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from pydantic import ValidationError

from homore.errors import ParseError, UsageError
from homore.exactnum import format_rational, parse_rational
from homore.homring import (
    Algebra,
    cayley_dickson_algebra,
    load_algebra,
    truncated_polynomial_algebra,
    with_alpha,
)
from homore.linalg import Matrix, identity_matrix, matrix, zero_matrix
from homore.schemas import AlgebraSpec, ModuleSpec

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"

BUILTIN_ALGEBRAS: dict[str, Callable[[], Algebra]] = {
    "rationals": lambda: cayley_dickson_algebra(0),
    "complex": lambda: cayley_dickson_algebra(1),
    "quaternions": lambda: cayley_dickson_algebra(2),
    "octonions": lambda: cayley_dickson_algebra(3),
    "truncated4": lambda: truncated_polynomial_algebra(4),
}

_TERM = re.compile(r"\s*([+-]?)\s*([0-9/]+)\s*\*\s*(\d+)\s*")


def _validated(model, what: str, **fields):
    """Build a spec model; schema violations are file errors."""
    try:
        return model(**fields)
    except ValidationError as exc:
        problems = "; ".join(f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in exc.errors())
        raise ParseError(f"invalid {what} file: {problems}") from None


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if line:
            yield number, line


def _linear_combination(rhs: str, line: int) -> list[tuple[Fraction, int]]:
    """`1/2*3 - 2*0` -> [(1/2, 3), (-2, 0)]."""
    terms = []
    pos = 0
    rhs = rhs.strip()
    while pos < len(rhs):
        m = _TERM.match(rhs, pos)
        if not m or (terms and not m.group(1)):
            raise ParseError(f"line {line}: cannot read term in {rhs!r}", pos)
        coeff = parse_rational(m.group(2))
        terms.append((-coeff if m.group(1) == "-" else coeff, int(m.group(3))))
        pos = m.end()
    if not terms:
        raise ParseError(f"line {line}: empty right-hand side")
    return terms


def parse_matrix(text: str) -> Matrix:
    """`1 0; 0 2` (commas also separate entries)."""
    rows = [r.replace(",", " ").split() for r in text.split(";")]
    rows = [r for r in rows if r]
    if not rows:
        raise ParseError(f"empty matrix {text!r}")
    if len({len(r) for r in rows}) != 1:
        raise ParseError(f"ragged matrix {text!r}")
    return matrix([parse_rational(x) for x in r] for r in rows)


def parse_vector(text: str) -> tuple[Fraction, ...]:
    entries = text.replace(",", " ").split()
    if not entries:
        raise ParseError(f"empty vector {text!r}")
    return tuple(parse_rational(x) for x in entries)


def parse_vectors(text: str) -> list[tuple[Fraction, ...]]:
    """`;`-separated vectors, as used for generator sets."""
    return [parse_vector(part) for part in text.split(";") if part.strip()]


# ----------------------------------------------------------------
# 🔹 Algebra files
# ----------------------------------------------------------------
def read_algebra(text: str) -> Algebra:
    name = "algebra"
    dim: Optional[int] = None
    basis: list[str] = []
    unit: Optional[int] = None
    products: list[tuple[int, int, list[tuple[Fraction, int]]]] = []
    alphas: list[tuple[int, list[tuple[Fraction, int]]]] = []
    ended = False

    for line, content in _lines(text):
        if ended:
            raise ParseError(f"line {line}: content after 'end'")
        keyword, _, rest = content.partition(" ")
        rest = rest.strip()
        try:
            if keyword == "algebra":
                name = rest or name
            elif keyword == "dim":
                dim = int(rest)
            elif keyword == "basis":
                basis = rest.split()
            elif keyword == "unit":
                unit = int(rest)
            elif keyword == "mul":
                lhs, _, rhs = rest.partition("=")
                i, j = (int(x) for x in lhs.split())
                products.append((i, j, _linear_combination(rhs, line)))
            elif keyword == "alpha":
                lhs, _, rhs = rest.partition("=")
                alphas.append((int(lhs), _linear_combination(rhs, line)))
            elif keyword == "end":
                ended = True
            else:
                raise ParseError(f"line {line}: unknown keyword {keyword!r}")
        except ValueError:
            raise ParseError(f"line {line}: malformed {keyword!r} entry") from None

    if dim is None:
        raise ParseError("algebra file declares no dim")

    def check(index: int) -> int:
        if not 0 <= index < dim:
            raise ParseError(f"index {index} outside 0..{dim - 1}")
        return index

    constants = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, terms in products:
        for c, k in terms:
            constants[check(i)][check(j)][check(k)] += c
    alpha = [[Fraction(0)] * dim for _ in range(dim)]
    for j, terms in alphas:
        for c, k in terms:
            alpha[check(k)][check(j)] += c

    return load_algebra(
        _validated(
            AlgebraSpec,
            "algebra",
            name=name,
            dim=dim,
            basis_names=basis,
            structure_constants=constants,
            alpha_matrix=alpha,
            unital=unit,
        )
    )


def _combination_text(coords) -> str:
    return " + ".join(f"{format_rational(c)}*{k}" for k, c in enumerate(coords) if c).replace("+ -", "- ")


def render_algebra(alg: Algebra) -> str:
    lines = [f"algebra {alg.name}", f"dim {alg.dim}", "basis " + " ".join(alg.basis_names)]
    if alg.unit is not None:
        lines.append(f"unit {alg.unit}")
    for i in range(alg.dim):
        for j in range(alg.dim):
            coords = alg.structure_constants[i][j]
            if any(coords):
                lines.append(f"mul {i} {j} = {_combination_text(coords)}")
    for j in range(alg.dim):
        column = [row[j] for row in alg.alpha_matrix]
        if any(column):
            lines.append(f"alpha {j} = {_combination_text(column)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------
# 🔹 Module files
# ----------------------------------------------------------------
def read_module(text: str) -> ModuleSpec:
    name, ring, dim, side = "module", None, None, "right"
    action: dict[int, Matrix] = {}
    alpha = None
    for line, content in _lines(text):
        keyword, _, rest = content.partition(" ")
        rest = rest.strip()
        try:
            if keyword == "module":
                m = re.fullmatch(r"(\S+)\s+over\s+(\S+)", rest)
                if not m:
                    raise ParseError(f"line {line}: expected 'module <name> over <algebra>'")
                name, ring = m.group(1), m.group(2)
            elif keyword == "dim":
                dim = int(rest)
            elif keyword == "side":
                if rest not in ("right", "left"):
                    raise ParseError(f"line {line}: side must be right or left")
                side = rest
            elif keyword == "act":
                lhs, _, rhs = rest.partition("=")
                action[int(lhs)] = parse_matrix(rhs)
            elif keyword in ("alphaM", "alphaM="):
                alpha = parse_matrix(rest.lstrip("="))
            elif keyword == "end":
                break
            else:
                raise ParseError(f"line {line}: unknown keyword {keyword!r}")
        except ValueError:
            raise ParseError(f"line {line}: malformed {keyword!r} entry") from None
    if ring is None or dim is None:
        raise ParseError("module file needs a 'module ... over ...' header and a dim")
    return _validated(ModuleSpec, "module", name=name, ring=ring, dim=dim, side=side, action=action, alpha_matrix=alpha)


def _rows_text(m: Matrix) -> str:
    return "; ".join(" ".join(format_rational(x) for x in row) for row in m)


def render_module(M, ring_ref: str | None = None) -> str:
    lines = [f"module {M.name} over {ring_ref or M.ring.name}", f"dim {M.dim}", f"side {M.side.value}"]
    for j, a in enumerate(M.action):
        if M.dim and any(any(row) for row in a):
            lines.append(f"act {j} = {_rows_text(a)}")
    if M.dim:
        lines.append(f"alphaM = {_rows_text(M.alpha_matrix)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------
# 🔹 Resolution
# ----------------------------------------------------------------
def resolve_algebra(ref: str, base_dir: Path | None = None) -> Algebra:
    """A definition file path, a packaged data file, or a builtin name (optional .alg suffix)."""
    candidates = [Path(ref)]
    if base_dir is not None:
        candidates.append(base_dir / ref)
    for path in candidates:
        if path.is_file():
            logger.debug("reading algebra file %s", path)
            return read_algebra(path.read_text(encoding="utf-8"))
    name = Path(ref).name.removesuffix(".alg")
    if name in BUILTIN_ALGEBRAS:
        return BUILTIN_ALGEBRAS[name]()
    packaged = DATA_DIR / f"{name}.alg"
    if packaged.is_file():
        return read_algebra(packaged.read_text(encoding="utf-8"))
    raise UsageError(f"no algebra file or builtin named {ref!r}")


def apply_alpha(alg: Algebra, mode: str | None) -> Algebra:
    if mode is None:
        return alg
    if mode == "zero":
        return with_alpha(alg, zero_matrix(alg.dim, alg.dim))
    if mode == "identity":
        return with_alpha(alg, identity_matrix(alg.dim))
    raise UsageError(f"--alpha must be zero or identity, got {mode!r}")


def resolve_module_file(path: str) -> tuple[ModuleSpec, Path]:
    p = Path(path)
    if not p.is_file():
        packaged = DATA_DIR / p.name
        if not packaged.is_file():
            raise UsageError(f"no module file {path!r}")
        p = packaged
    return read_module(p.read_text(encoding="utf-8")), p.parent


def builtin_names() -> list[str]:
    return sorted(BUILTIN_ALGEBRAS)
