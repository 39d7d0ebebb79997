"""Exact models of isometric and unitary representations of integral domains."""

from .rings import (
    GAUSSIAN_INTEGERS,
    INTEGERS,
    Fraction,
    RingElement,
    RingId,
    Window,
    parse_ring,
    poly_ring,
    prime_field,
)
from .words import NormalForm, Word, normalize

__version__ = "0.1.0"

__all__ = [
    "GAUSSIAN_INTEGERS",
    "INTEGERS",
    "Fraction",
    "NormalForm",
    "RingElement",
    "RingId",
    "Window",
    "Word",
    "normalize",
    "parse_ring",
    "poly_ring",
    "prime_field",
]
