"""Cipher-image quality metrics: entropy, error measures, correlation, NPCR/UACI."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from ..stattests.special import chi2_sf
from .image import GrayImage

PEAK = 255.0

_NEIGHBOURS = {
    "horizontal": (slice(None), slice(None, -1), slice(None), slice(1, None)),
    "vertical": (slice(None, -1), slice(None), slice(1, None), slice(None)),
    "diagonal": (slice(None, -1), slice(None, -1), slice(1, None), slice(1, None)),
}


def _same_shape(a: GrayImage, b: GrayImage) -> None:
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.width}x{a.height} vs {b.width}x{b.height}")


def entropy(image: GrayImage) -> float:
    """Shannon entropy of the pixel histogram in bits per pixel."""
    counts = np.bincount(image.pixels.ravel(), minlength=256)
    prob = counts[counts > 0] / image.size
    return float(max(0.0, -np.sum(prob * np.log2(prob))))


def _diff(plain: GrayImage, cipher: GrayImage) -> np.ndarray:
    _same_shape(plain, cipher)
    return plain.pixels.astype(np.int64) - cipher.pixels.astype(np.int64)


def mae(plain: GrayImage, cipher: GrayImage) -> float:
    return float(np.abs(_diff(plain, cipher)).mean())


def mse(plain: GrayImage, cipher: GrayImage) -> float:
    d = _diff(plain, cipher)
    return float((d * d).mean())


def psnr_from_mse(value: float) -> float:
    if value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK**2 / value)


def psnr(plain: GrayImage, cipher: GrayImage) -> float:
    """10 log10(255^2 / MSE) in dB; ``math.inf`` for identical images."""
    return psnr_from_mse(mse(plain, cipher))


def adjacent_pairs(image: GrayImage, direction: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        r0, c0, r1, c1 = _NEIGHBOURS[direction]
    except KeyError:
        raise ValueError(f"direction must be one of {sorted(_NEIGHBOURS)}") from None
    px = image.pixels.astype(np.float64)
    return px[r0, c0].ravel(), px[r1, c1].ravel()


def adjacent_correlation(image: GrayImage, direction: str) -> float:
    """Pearson correlation over every adjacent pixel pair in ``direction``.

    Returns NaN when either side of the pairs has zero variance.
    """
    a, b = adjacent_pairs(image, direction)
    if a.size < 2:
        return math.nan
    da, db = a - a.mean(), b - b.mean()
    denom = math.sqrt(float(np.dot(da, da)) * float(np.dot(db, db)))
    if denom == 0:
        return math.nan
    return float(np.dot(da, db)) / denom


def npcr_uaci(c1: GrayImage, c2: GrayImage) -> tuple[float, float]:
    """Percentage of differing pixels and mean absolute intensity change (% of 255)."""
    d = np.abs(_diff(c1, c2))
    npcr = 100.0 * np.count_nonzero(d) / d.size
    uaci = 100.0 * float(d.mean()) / PEAK
    return float(npcr), uaci


class Histogram(NamedTuple):
    counts: np.ndarray
    chi2: float
    p_value: float


def histogram(image: GrayImage) -> Histogram:
    """256-bin histogram and its chi-square p-value against the uniform law (255 dof)."""
    counts = np.bincount(image.pixels.ravel(), minlength=256)
    expected = image.size / 256.0
    chi2 = float(np.sum((counts - expected) ** 2) / expected)
    return Histogram(counts, chi2, chi2_sf(chi2, 255))


@dataclass
class CipherMetrics:
    entropy: float
    mae: float
    mse: float
    psnr: float
    corr_horizontal: float
    corr_vertical: float
    corr_diagonal: float
    histogram: list[int]
    histogram_chi2: float
    histogram_chi2_p: float
    npcr: float | None = None
    uaci: float | None = None
    plain_entropy: float | None = None
    plain_corr_horizontal: float | None = None
    plain_corr_vertical: float | None = None
    plain_corr_diagonal: float | None = None

    def to_dict(self) -> dict:
        """JSON-safe dict: NaN becomes None and an infinite PSNR the string "inf"."""
        out = {}
        for key, value in asdict(self).items():
            if isinstance(value, float):
                if math.isnan(value):
                    value = None
                elif math.isinf(value):
                    value = "inf"
            out[key] = value
        return out


def analyze(
    plain: GrayImage, cipher: GrayImage, second_cipher: GrayImage | None = None
) -> CipherMetrics:
    """All metrics for a plain/cipher pair.

    ``second_cipher`` is the cipherimage of a plain image differing from
    ``plain`` in one pixel; when given, NPCR and UACI are filled in.
    """
    _same_shape(plain, cipher)
    hist = histogram(cipher)
    mse_value = mse(plain, cipher)
    metrics = CipherMetrics(
        entropy=entropy(cipher),
        mae=mae(plain, cipher),
        mse=mse_value,
        psnr=psnr_from_mse(mse_value),
        corr_horizontal=adjacent_correlation(cipher, "horizontal"),
        corr_vertical=adjacent_correlation(cipher, "vertical"),
        corr_diagonal=adjacent_correlation(cipher, "diagonal"),
        histogram=hist.counts.tolist(),
        histogram_chi2=hist.chi2,
        histogram_chi2_p=hist.p_value,
        plain_entropy=entropy(plain),
        plain_corr_horizontal=adjacent_correlation(plain, "horizontal"),
        plain_corr_vertical=adjacent_correlation(plain, "vertical"),
        plain_corr_diagonal=adjacent_correlation(plain, "diagonal"),
    )
    if second_cipher is not None:
        metrics.npcr, metrics.uaci = npcr_uaci(cipher, second_cipher)
    return metrics
