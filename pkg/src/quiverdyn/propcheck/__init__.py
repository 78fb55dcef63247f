"""Generated-instance checks of statements about quiver mutation."""

from .generators import FAMILIES, GenConfig, generate, parse_gen, trial_rng
from .properties import PROPERTIES, Outcome, PropertyReport, check, get_property

__all__ = [
    "FAMILIES", "GenConfig", "generate", "parse_gen", "trial_rng",
    "PROPERTIES", "Outcome", "PropertyReport", "check", "get_property",
]
