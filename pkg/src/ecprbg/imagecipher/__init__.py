"""Grayscale image stream cipher and cipher-quality metrics."""

from .cipher import (
    decrypt,
    decrypt_with_seed,
    encrypt,
    encrypt_with_seed,
    image_seed,
    keystream,
)
from .image import GrayImage, synthetic_test_image
from .metrics import (
    CipherMetrics,
    Histogram,
    adjacent_correlation,
    analyze,
    entropy,
    histogram,
    mae,
    mse,
    npcr_uaci,
    psnr,
)
from .pgm import PGMError, parse_pgm, read_pgm, write_pgm

__all__ = [
    "CipherMetrics",
    "GrayImage",
    "Histogram",
    "PGMError",
    "adjacent_correlation",
    "analyze",
    "decrypt",
    "decrypt_with_seed",
    "encrypt",
    "encrypt_with_seed",
    "entropy",
    "histogram",
    "image_seed",
    "keystream",
    "mae",
    "mse",
    "npcr_uaci",
    "parse_pgm",
    "psnr",
    "read_pgm",
    "synthetic_test_image",
    "write_pgm",
]
