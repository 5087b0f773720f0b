"""Elliptic-curve, hash-chained pseudorandom bit generation with a randomness
test battery and a grayscale image stream cipher."""

from .curve import Curve, GeneratorSpec, INFINITY, Point, default_spec
from .field import FieldElement, PrimeField
from .prbg import BitStream, GeneratorState, generate, generate_bits, instantiate, step

__version__ = "0.1.0"

__all__ = [
    "BitStream",
    "Curve",
    "FieldElement",
    "GeneratorSpec",
    "GeneratorState",
    "INFINITY",
    "Point",
    "PrimeField",
    "default_spec",
    "generate",
    "generate_bits",
    "instantiate",
    "step",
]
