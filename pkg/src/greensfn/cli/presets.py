"""Built-in problem files."""
from typing import Dict, List, Optional, Tuple

from greensfn.cli.spec_parser import ProblemSpecParser
from greensfn.models.problem import ProblemSpec
from greensfn.utils.errors import ConfigurationError

PRESETS: Dict[str, Tuple[str, str]] = {
    "periodic-box": (
        "x'' - x = F periodic, box of radius 0.3 around 0 (eta = 0.3)",
        """
Coefficients:
a2: 1
a1: 0
a0: -1
Boundary:
preset: periodic
RightHandSide:
kind: box
dim: 1
f0: 0
rho: 0.3
c: 0.3
m: 0
mu: 0
alpha: 0.3
eta: 0.3
""",
    ),
    "periodic-growth": (
        "x'' - x' - x = 0.5 sin x + cos 2 pi t periodic, growth m = 0.5",
        """
Coefficients:
a2: 1
a1: -1
a0: -1
Boundary:
preset: periodic
RightHandSide:
kind: single
dim: 1
f0: 0.5*sin(x1) + cos(2*pi*t)
c: 1
m: 0.5
mu: 0.5
alpha: 1
""",
    ),
    "periodic-lipschitz": (
        "x'' - x = 0.9 sin x periodic, Lipschitz modulus 0.9",
        """
Coefficients:
a2: 1
a1: 0
a0: -1
Boundary:
preset: periodic
RightHandSide:
kind: single
dim: 1
f0: 0.9*sin(x1)
c: 0.9
m: 0
mu: 0.9
alpha: 0
""",
    ),
    "dirichlet-demo": (
        "x'' - x = 0 with x(0) = 1, x(1) = 0",
        """
Coefficients:
a2: 1
a1: 0
a0: -1
Boundary:
preset: dirichlet
d1: 1
d2: 0
RightHandSide:
kind: single
dim: 1
f0: 0
c: 0
m: 0
mu: 0
alpha: 0
eta: 0
""",
    ),
    "accretive-cubic": (
        "x'' - 4x = x^3 periodic, accretive right-hand side",
        """
Coefficients:
a2: 1
a1: 0
a0: -4
Boundary:
preset: periodic
RightHandSide:
kind: single
dim: 1
f0: x1**3
accretive: true
""",
    ),
}


# Alternate names accepted wherever a preset name is
PRESET_ALIASES: Dict[str, str] = {
    "example-3.5": "periodic-box",
    "example-3.6": "periodic-growth",
    "example-4.3": "periodic-lipschitz",
}


def preset_names() -> List[str]:
    return sorted(PRESETS)


def resolve_preset(name: str) -> Optional[str]:
    """Canonical preset key for a name or alias; None when neither matches."""
    if name in PRESETS:
        return name
    return PRESET_ALIASES.get(name)


def load_preset(name: str) -> ProblemSpec:
    """Parsed ProblemSpec of a built-in preset, looked up by name or alias."""
    key = resolve_preset(name)
    if key is None:
        raise ConfigurationError(
            f"unknown preset {name!r}; choose from {preset_names()} or {sorted(PRESET_ALIASES)}"
        )
    spec, _ = ProblemSpecParser().parse(PRESETS[key][1], name=name)
    return spec
