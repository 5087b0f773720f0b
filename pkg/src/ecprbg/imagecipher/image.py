from __future__ import annotations

import hashlib

import numpy as np


class GrayImage:
    """An 8-bit grayscale raster stored row-major as a read-only (H, W) uint8 array."""

    __slots__ = ("_pixels",)

    def __init__(self, pixels) -> None:
        arr = np.asarray(pixels)
        if arr.ndim != 2 or 0 in arr.shape:
            raise ValueError(f"expected a non-empty 2-D pixel array, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise TypeError("pixel values must be integers")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("pixel values must lie in [0, 255]")
        arr = np.array(arr, dtype=np.uint8)
        arr.flags.writeable = False
        self._pixels = arr

    @classmethod
    def from_values(cls, width: int, height: int, values) -> GrayImage:
        values = np.asarray(values)
        if values.size != width * height:
            raise ValueError(f"{values.size} values for a {width}x{height} image")
        return cls(values.reshape(height, width))

    @property
    def pixels(self) -> np.ndarray:
        return self._pixels

    @property
    def width(self) -> int:
        return int(self._pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self._pixels.shape[0])

    @property
    def size(self) -> int:
        return int(self._pixels.size)

    @property
    def shape(self) -> tuple[int, int]:
        return self._pixels.shape

    def digest(self) -> bytes:
        """SHA-256 over the dimensions and raster; identifies the image content."""
        header = f"{self.width}x{self.height}:".encode()
        return hashlib.sha256(header + self._pixels.tobytes()).digest()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._pixels, other._pixels)

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


def synthetic_test_image(width: int = 256, height: int = 256, seed: int = 0) -> GrayImage:
    """Deterministic stand-in for a natural photograph.

    Smooth shading, a few soft blobs and mild sensor-like noise give strong
    neighbour correlation (> 0.9 in all directions) and a spiky histogram,
    which is what the cipher metrics need from a plain image.
    """
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    u, v = x / width, y / height
    img = 70 + 90 * u + 40 * np.sin(2 * np.pi * (1.3 * v + 0.4 * u))
    for _ in range(6):
        cx, cy = rng.uniform(0.1, 0.9, 2)
        radius = rng.uniform(0.05, 0.2)
        amp = rng.uniform(-60, 60)
        img += amp * np.exp(-((u - cx) ** 2 + (v - cy) ** 2) / (2 * radius**2))
    img += rng.normal(0, 3, img.shape)
    return GrayImage(np.clip(np.rint(img), 0, 255).astype(np.uint8))
