"""Constants for the power index process package."""

from fractions import Fraction
from typing import Final

# Strategies
COLLABORATOR: Final = "C"
DEFECTOR: Final = "D"

# Threshold semantics
SEMANTICS_STRICT: Final = "strict"
SEMANTICS_INCLUSIVE: Final = "inclusive"
SEMANTICS_MODES: Final = (SEMANTICS_STRICT, SEMANTICS_INCLUSIVE)

# Win condition range [1/2, 1)
W_MIN: Final = Fraction(1, 2)
W_MAX: Final = Fraction(1)
DEFAULT_W: Final = "1/2"

# Budgets
DEFAULT_BUDGET: Final = 1_000_000
MAX_SWEEP_VERTICES: Final = 24
DEFAULT_WORKERS: Final = 1

# Classic Shapley-Shubik oracle (factorial brute force)
MIN_SHAPLEY_VOTERS: Final = 2
MAX_SHAPLEY_VOTERS: Final = 10

# Vertex roles on H_{n,l}
ROLE_CYCLE: Final = "v"
ROLE_PENDANT: Final = "z"
ROLE_X: Final = "x"
ROLE_Y: Final = "y"
ROLE_CLIQUE: Final = "clique-extra"

# Prism layers G_1..G_4
PRISM_LAYERS: Final = 4

# CLI exit codes
EXIT_INCONCLUSIVE: Final = 3
EXIT_VERIFICATION_FAILED: Final = 4

# DOT fill colours (black vertices denote collaborators)
DOT_FILL: Final = {
    COLLABORATOR: "black",
    DEFECTOR: "white",
}
