"""Hash-chained elliptic-curve pseudorandom bit generator.

Each step multiplies the base point by the current scalar state, keeps the
x-coordinate of the result, and folds it into a SHA-256 chain::

    R      = [s_{i-1}] G
    s_i    = x(R) mod order          (0 is remapped to 1)
    H_i    = SHA256(x(R) || H_{i-1})

The low ``trunc_bits`` bits of every H_i are appended to the output stream.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace

import numpy as np

from .curve import GeneratorSpec, default_spec

DIGEST_BYTES = 32
DIGEST_BITS = 8 * DIGEST_BYTES
DEFAULT_TRUNC_BITS = 128
INITIAL_CHAIN = bytes(DIGEST_BYTES)


def sha256(data: bytes) -> bytes:
    return hashlib.sha256(data).digest()


def chain(block: bytes, previous: bytes) -> bytes:
    """One round of the iterated hash: H_i = f(X_i, H_{i-1})."""
    if len(previous) != DIGEST_BYTES:
        raise ValueError("chaining value must be 32 bytes")
    return sha256(block + previous)


class BitStream:
    """An ordered sequence of bits backed by a uint8 numpy array of 0/1 values."""

    __slots__ = ("_bits",)

    def __init__(self, bits) -> None:
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("bit stream must be one-dimensional")
        if arr.size and arr.max() > 1:
            raise ValueError("bit stream values must be 0 or 1")
        arr = arr.copy()
        arr.flags.writeable = False
        self._bits = arr

    @classmethod
    def from_string(cls, text: str) -> BitStream:
        """Parse '0'/'1' characters; whitespace is ignored."""
        cleaned = "".join(text.split())
        if set(cleaned) - {"0", "1"}:
            raise ValueError("bit string may only contain '0' and '1'")
        return cls(np.frombuffer(cleaned.encode("ascii"), dtype=np.uint8) - ord("0"))

    @classmethod
    def from_bytes(cls, data: bytes, length: int | None = None) -> BitStream:
        """Unpack big-endian bytes, keeping the first ``length`` bits."""
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
        if length is not None:
            if length > bits.size:
                raise ValueError(f"{length} bits requested from {len(data)} bytes")
            bits = bits[:length]
        return cls(bits)

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def __len__(self) -> int:
        return int(self._bits.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitStream):
            return NotImplemented
        return np.array_equal(self._bits, other._bits)

    def __getitem__(self, item) -> BitStream | int:
        if isinstance(item, slice):
            return BitStream(self._bits[item])
        return int(self._bits[item])

    def __add__(self, other: BitStream) -> BitStream:
        return BitStream(np.concatenate([self._bits, other._bits]))

    def __repr__(self) -> str:
        head = "".join(map(str, self._bits[:16].tolist()))
        return f"BitStream(len={len(self)}, head={head!r})"

    def to_bytes(self) -> bytes:
        """Big-endian packing; the final partial byte is zero-padded."""
        return np.packbits(self._bits).tobytes()

    @property
    def padding(self) -> int:
        return -len(self) % 8

    def to_string(self) -> str:
        return (self._bits + ord("0")).tobytes().decode("ascii")


@dataclass(frozen=True)
class GeneratorState:
    """Immutable snapshot of the generator; every operation returns a new one."""

    spec: GeneratorSpec
    s: int
    chain: bytes
    trunc_bits: int = DEFAULT_TRUNC_BITS
    step_count: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.s < self.spec.order:
            raise ValueError(f"scalar state {self.s} outside [1, {self.spec.order})")
        if len(self.chain) != DIGEST_BYTES:
            raise ValueError("chaining value must be 32 bytes")
        if not 1 <= self.trunc_bits <= DIGEST_BITS:
            raise ValueError(f"trunc_bits must be in [1, {DIGEST_BITS}], got {self.trunc_bits}")


def _reduce_scalar(value: int, order: int) -> int:
    s = value % order
    return s if s else 1


def instantiate(
    spec: GeneratorSpec, seed_material: bytes, trunc_bits: int = DEFAULT_TRUNC_BITS
) -> GeneratorState:
    """Derive the initial state from seed bytes.

    The initial scalar is SHA-256(seed) read as a big-endian integer, reduced
    modulo the base-point order (0 becomes 1). The chain starts from 32 zero
    bytes.

    Raises:
        ValueError: empty seed or ``trunc_bits`` outside [1, 256].
    """
    if not seed_material:
        raise ValueError("seed material must be non-empty")
    if not 1 <= trunc_bits <= DIGEST_BITS:
        raise ValueError(f"trunc_bits must be in [1, {DIGEST_BITS}], got {trunc_bits}")
    s0 = _reduce_scalar(int.from_bytes(sha256(bytes(seed_material)), "big"), spec.order)
    return GeneratorState(spec, s0, INITIAL_CHAIN, trunc_bits, 0)


def step(state: GeneratorState) -> tuple[GeneratorState, bytes]:
    """Advance one step; returns the new state and the 32-byte digest H_i."""
    spec = state.spec
    R = spec.curve.scalar_mul(state.s, spec.G)
    # 1 <= s < order, so R is affine
    x = R.x.value
    digest = chain(x.to_bytes(spec.coordinate_bytes, "big"), state.chain)
    new = replace(
        state,
        s=_reduce_scalar(x, spec.order),
        chain=digest,
        step_count=state.step_count + 1,
    )
    return new, digest


def truncate(digest: bytes, trunc_bits: int) -> np.ndarray:
    """The low ``trunc_bits`` bits of a digest, most significant first."""
    return np.unpackbits(np.frombuffer(digest, dtype=np.uint8))[DIGEST_BITS - trunc_bits:]


def generate(state: GeneratorState, n_bits: int) -> tuple[GeneratorState, BitStream]:
    """Produce exactly ``n_bits`` bits; surplus bits of the last digest are dropped."""
    if n_bits < 1:
        raise ValueError("n_bits must be positive")
    n_steps = -(-n_bits // state.trunc_bits)
    digests = bytearray()
    for _ in range(n_steps):
        state, digest = step(state)
        digests += digest
    all_bits = np.unpackbits(np.frombuffer(bytes(digests), dtype=np.uint8))
    windows = all_bits.reshape(n_steps, DIGEST_BITS)[:, DIGEST_BITS - state.trunc_bits:]
    return state, BitStream(windows.reshape(-1)[:n_bits])


def generate_bits(
    seed_material: bytes,
    n_bits: int,
    spec: GeneratorSpec | None = None,
    trunc_bits: int = DEFAULT_TRUNC_BITS,
) -> BitStream:
    """One-shot helper: instantiate from ``seed_material`` and draw ``n_bits``."""
    if spec is None:
        spec = default_spec()
    _, bits = generate(instantiate(spec, seed_material, trunc_bits), n_bits)
    return bits
