"""quadcommute - multiplicative functions commuting with binary quadratic forms."""

__version__ = "0.1.0"

from quadcommute.forms import (
    BinaryQuadraticForm, Representation, FormError,
    PLUS_FORM, MINUS_FORM, parse_form, representations, representation_table
)
from quadcommute.config import Config, ConfigError
from quadcommute.engine import SearchReport, search
from quadcommute.families import Family, verify_family
from quadcommute.app import QuadCommuteApp, run

__all__ = [
    "BinaryQuadraticForm", "Representation", "FormError",
    "PLUS_FORM", "MINUS_FORM", "parse_form", "representations", "representation_table",
    "Config", "ConfigError", "SearchReport", "search", "Family", "verify_family",
    "QuadCommuteApp", "run"
]
