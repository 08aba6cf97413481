"""Compile a ProblemSpec into coefficient, boundary and right-hand-side models."""
from dataclasses import dataclass
from typing import Dict, Optional

from pydantic import ValidationError

from greensfn.cli.expressions import (
    compile_field,
    compile_radius,
    compile_scalar,
    is_constant,
    parse_floats,
    split_components,
)
from greensfn.core.grid import Grid
from greensfn.models.coefficients import BoundaryConditions, CoefficientSet
from greensfn.models.problem import ProblemSpec
from greensfn.models.rhs import RightHandSide
from greensfn.utils.errors import ConfigurationError, GridError

BC_PRESETS = {
    "periodic": BoundaryConditions.periodic,
    "dirichlet": BoundaryConditions.dirichlet,
    "neumann": BoundaryConditions.neumann,
}
TRUE_WORDS = {"true", "yes", "1", "on"}
FALSE_WORDS = {"false", "no", "0", "off"}


@dataclass
class Problem:
    """A compiled problem ready for the solvers."""
    name: str
    coeffs: CoefficientSet
    bc: BoundaryConditions
    rhs: RightHandSide
    grid: Grid
    options: Dict[str, str]


def _flag(value: str, key: str) -> bool:
    v = value.strip().lower()
    if v in TRUE_WORDS:
        return True
    if v in FALSE_WORDS:
        return False
    raise ConfigurationError(f"{key} must be true or false, got {value!r}")


def build_coefficients(section: Dict[str, str]) -> CoefficientSet:
    exprs = {name: section.get(name, default) for name, default in (("a2", "1"), ("a1", "0"), ("a0", "0"))}
    return CoefficientSet(
        a2=compile_scalar(exprs["a2"]),
        a1=compile_scalar(exprs["a1"]),
        a0=compile_scalar(exprs["a0"]),
        monic=is_constant(exprs["a2"], 1.0),
        labels=(exprs["a2"], exprs["a1"], exprs["a0"]),
    )


def build_boundary(section: Dict[str, str]) -> BoundaryConditions:
    """``preset`` (periodic, dirichlet, neumann) or explicit ``row1``/``row2``; ``d1``/``d2`` optional."""
    d1 = parse_floats(section["d1"]) if "d1" in section else None
    d2 = parse_floats(section["d2"]) if "d2" in section else None
    preset = section.get("preset")
    has_rows = "row1" in section or "row2" in section
    if preset is not None and has_rows:
        raise ConfigurationError("boundary section takes either a preset or row1/row2, not both")
    try:
        if preset is not None:
            key = preset.strip().lower()
            if key not in BC_PRESETS:
                raise ConfigurationError(f"unknown boundary preset {preset!r}; choose from {sorted(BC_PRESETS)}")
            if key == "periodic":
                if d1 is not None or d2 is not None:
                    return BoundaryConditions(
                        rows=BoundaryConditions.periodic().rows,
                        d=_pad_targets(d1, d2),
                        name="periodic",
                    )
                return BoundaryConditions.periodic()
            return BC_PRESETS[key](d1, d2)
        if "row1" not in section or "row2" not in section:
            raise ConfigurationError("boundary section needs a preset or both row1 and row2")
        rows = tuple(tuple(parse_floats(section[r])) for r in ("row1", "row2"))
        if any(len(r) != 4 for r in rows):
            raise ConfigurationError("boundary rows need four entries: b1, b2, c1, c2")
        return BoundaryConditions(rows=rows, d=_pad_targets(d1, d2), name="custom")
    except ValidationError as e:
        raise ConfigurationError(f"invalid boundary conditions: {e}") from e


def _pad_targets(d1, d2):
    if d1 is None and d2 is None:
        return None
    dim = len(d1 if d1 is not None else d2)
    return (tuple(d1 or [0.0] * dim), tuple(d2 or [0.0] * dim))


def build_rhs(section: Dict[str, str]) -> RightHandSide:
    kind = section.get("kind", "single").strip().lower()
    try:
        dim = int(section.get("dim", "1"))
    except ValueError as e:
        raise ConfigurationError(f"dim must be an integer, got {section.get('dim')!r}") from e
    if dim < 1:
        raise ConfigurationError(f"dim must be >= 1, got {dim}")
    f0 = compile_field(split_components(section.get("f0", ";".join(["0"] * dim))), dim)

    metadata: Dict[str, object] = {}
    for key in ("c", "mu", "alpha", "eta"):
        if key in section:
            metadata[key] = compile_scalar(section[key])
    if "m" in section:
        m = parse_floats(section["m"])
        if len(m) != 1 or m[0] < 0.0:
            raise ConfigurationError(f"m must be one nonnegative number, got {section['m']!r}")
        metadata["m"] = m[0]
    if "accretive" in section:
        metadata["accretive"] = _flag(section["accretive"], "accretive")
    metadata["label"] = section.get("label", section.get("f0", "0"))

    try:
        if kind == "single":
            if "rho" in section:
                raise ConfigurationError("rho is only allowed with kind: box")
            return RightHandSide.single(f0, dim=dim, **metadata)
        if kind == "box":
            if "rho" not in section:
                raise ConfigurationError("kind: box needs a radius rho")
            return RightHandSide.box(f0, compile_radius(section["rho"], dim), dim=dim, **metadata)
    except ValidationError as e:
        raise ConfigurationError(f"invalid right-hand side: {e}") from e
    raise ConfigurationError(f"rhs kind must be single or box, got {kind!r}")


def build_problem(spec: ProblemSpec, grid: Optional[int] = None, default_grid: int = 512) -> Problem:
    """Compile ``spec``; the grid is ``grid`` if given, else the file's, else ``default_grid``.

    Raises:
        ConfigurationError: invalid expressions, boundary rows or grid.
    """
    n = grid if grid is not None else (spec.grid if spec.grid is not None else default_grid)
    try:
        g = Grid(n)
    except GridError as e:
        raise ConfigurationError(str(e)) from e
    problem = Problem(
        name=spec.name,
        coeffs=build_coefficients(spec.coefficients),
        bc=build_boundary(spec.boundary),
        rhs=build_rhs(spec.rhs),
        grid=g,
        options=dict(spec.options),
    )
    problem.bc.targets(problem.rhs.dim)
    return problem
