"""Netpbm graymap (PGM) reading and writing.

Reads both binary ``P5`` and ASCII ``P2`` files with maxval up to 255;
``#`` comments are allowed anywhere in the header. Writes ``P5``.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .image import GrayImage


class PGMError(ValueError):
    pass


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int, list[str]]:
    """Pull ``count`` whitespace-separated header tokens, skipping comments."""
    tokens: list[bytes] = []
    comments: list[str] = []
    pos = 0
    while len(tokens) < count:
        while pos < len(data) and (data[pos : pos + 1].isspace() or data[pos : pos + 1] == b"#"):
            if data[pos : pos + 1] == b"#":
                end = data.find(b"\n", pos)
                end = len(data) if end < 0 else end
                comments.append(data[pos + 1 : end].decode("latin-1").strip())
                pos = end
            pos += 1
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise PGMError("truncated PGM header")
        tokens.append(data[start:pos])
    return tokens, pos, comments


def parse_pgm(data: bytes) -> tuple[GrayImage, list[str]]:
    """Decode PGM bytes; returns the image and any header comments."""
    tokens, pos, comments = _header_tokens(data, 4)
    magic = tokens[0]
    if magic not in (b"P5", b"P2"):
        raise PGMError(f"unsupported magic number {magic!r}; expected P5 or P2")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise PGMError("non-numeric PGM header field") from exc
    if width <= 0 or height <= 0:
        raise PGMError(f"invalid dimensions {width}x{height}")
    if not 0 < maxval <= 255:
        raise PGMError(f"only 8-bit graymaps are supported (maxval {maxval})")
    count = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        raster = data[pos + 1 : pos + 1 + count]
        if len(raster) < count:
            raise PGMError(f"raster has {len(raster)} bytes, expected {count}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = re.sub(rb"#[^\n]*", b" ", data[pos:])
        values = np.array(body.split()[:count], dtype=np.int64)
        if values.size < count:
            raise PGMError(f"raster has {values.size} samples, expected {count}")
        if values.max(initial=0) > maxval or values.min(initial=0) < 0:
            raise PGMError("sample outside [0, maxval]")
        pixels = values.astype(np.uint8)
    return GrayImage(pixels.reshape(height, width)), comments


def read_pgm(path) -> GrayImage:
    return parse_pgm(Path(path).read_bytes())[0]


def read_pgm_with_comments(path) -> tuple[GrayImage, list[str]]:
    return parse_pgm(Path(path).read_bytes())


def encode_pgm(image: GrayImage, comments=()) -> bytes:
    header = [b"P5"]
    for c in comments:
        if "\n" in c:
            raise PGMError("comments must be single lines")
        header.append(b"# " + c.encode("latin-1"))
    header.append(f"{image.width} {image.height}".encode())
    header.append(b"255")
    return b"\n".join(header) + b"\n" + image.pixels.tobytes()


def write_pgm(path, image: GrayImage, comments=()) -> None:
    Path(path).write_bytes(encode_pgm(image, comments))


def encode_pgm_ascii(image: GrayImage) -> bytes:
    rows = [" ".join(map(str, row)) for row in image.pixels.tolist()]
    return f"P2\n{image.width} {image.height}\n255\n".encode() + "\n".join(rows).encode() + b"\n"
