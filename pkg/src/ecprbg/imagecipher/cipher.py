"""XOR stream cipher over grayscale pixels driven by the EC-PRBG keystream."""

from __future__ import annotations

import numpy as np

from ..curve import GeneratorSpec, default_spec
from ..prbg import DEFAULT_TRUNC_BITS, GeneratorState, generate, instantiate
from .image import GrayImage


def keystream(state: GeneratorState, n_bytes: int) -> tuple[GeneratorState, np.ndarray]:
    """Draw ``8 * n_bytes`` bits and pack them MSB-first into bytes."""
    state, bits = generate(state, 8 * n_bytes)
    return state, np.packbits(bits.bits)


def encrypt(image: GrayImage, state: GeneratorState) -> tuple[GrayImage, GeneratorState]:
    """XOR every pixel (row-major) with the next keystream byte."""
    state, ks = keystream(state, image.size)
    cipher = image.pixels ^ ks.reshape(image.shape)
    return GrayImage(cipher), state


def decrypt(image: GrayImage, state: GeneratorState) -> tuple[GrayImage, GeneratorState]:
    """Inverse of :func:`encrypt`; XOR is its own inverse."""
    return encrypt(image, state)


def image_seed(seed: bytes, image: GrayImage) -> bytes:
    """Seed material for the per-image keystream protocol: seed || SHA-256(image)."""
    return bytes(seed) + image.digest()


def encrypt_with_seed(
    image: GrayImage,
    seed: bytes,
    spec: GeneratorSpec | None = None,
    trunc_bits: int = DEFAULT_TRUNC_BITS,
    per_image: bool = False,
) -> GrayImage:
    """Encrypt with a fresh generator instantiated from ``seed``.

    With ``per_image=True`` the keystream also depends on the plain image
    (see :func:`image_seed`), so re-encrypting an image that differs in a
    single pixel yields an unrelated cipherimage. Decrypting such a cipher
    needs the plain image's digest, see :func:`decrypt_with_seed`.
    """
    spec = spec or default_spec()
    material = image_seed(seed, image) if per_image else seed
    cipher, _ = encrypt(image, instantiate(spec, material, trunc_bits))
    return cipher


def decrypt_with_seed(
    image: GrayImage,
    seed: bytes,
    spec: GeneratorSpec | None = None,
    trunc_bits: int = DEFAULT_TRUNC_BITS,
    plain_digest: bytes | None = None,
) -> GrayImage:
    spec = spec or default_spec()
    material = bytes(seed) + plain_digest if plain_digest is not None else seed
    plain, _ = decrypt(image, instantiate(spec, material, trunc_bits))
    return plain
