"""Wheel Ramsey lower-bound colorings, exact monochromatic-wheel detection
and bound calculators."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    CycleWitness,
    DomainError,
    EdgeColoring,
    Graph,
    WheelWitness,
    color_class,
    induced_subgraph,
    is_bipartite,
    neighborhood,
)
from .constructions import (  # noqa: E402
    BlockSpec,
    blowup,
    construct_even_lower,
    construct_odd_lower,
    iterated_blowup,
    paley5,
    rook9,
)
from .detection import (  # noqa: E402
    circumference,
    find_cycle_of_length,
    find_mono_pattern,
    find_mono_wheel,
    girth,
    is_weakly_pancyclic,
    verify_wheel_free,
)

__all__ = [
    "BlockSpec",
    "CycleWitness",
    "DomainError",
    "EdgeColoring",
    "Graph",
    "WheelWitness",
    "blowup",
    "circumference",
    "color_class",
    "construct_even_lower",
    "construct_odd_lower",
    "find_cycle_of_length",
    "find_mono_pattern",
    "find_mono_wheel",
    "girth",
    "induced_subgraph",
    "is_bipartite",
    "is_weakly_pancyclic",
    "iterated_blowup",
    "neighborhood",
    "paley5",
    "rook9",
    "verify_wheel_free",
]
