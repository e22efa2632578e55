"""
Seeded random streams and the sub-seed mixing function.

Every random draw in the library flows from a RandomStream.
A stream is a 64-bit seed plus a numpy Generator (PCG64) built from it.
Child streams are derived by hashing, never by drawing from the parent,
so the value of any stream depends only on its seed and label path.

The mixing function is
    H(parts...) = uint64_le(Keccak-256(b"mirrorphase" || encode(part_1) || ... )[0:8])
where integers are encoded as 8-byte little-endian and strings as
a 2-byte little-endian length followed by their UTF-8 bytes.
"""

# Types.
from typing import Union, Any

import numpy as np

# Keccak hash function.
from Cryptodome.Hash import keccak

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

SeedPart = Union[int, str]

# Domain separation tag for every derived seed.
SEED_DOMAIN: bytes = b"mirrorphase"

# Seeds are unsigned 64-bit integers.
SEED_LIMIT: int = 2 ** 64


def encode_seed_part(part: SeedPart) -> bytes:
    """Encodes an int or label for hashing."""

    if isinstance(part, str):
        label: bytes = part.encode("utf-8")
        return len(label).to_bytes(2, byteorder="little") + label

    if (part < 0) or (part >= SEED_LIMIT):
        raise InvalidParameterError(f"Seed component {part} is not a 64-bit unsigned integer.")
    return part.to_bytes(8, byteorder="little")


def mix_seed(*parts: SeedPart) -> int:
    """Derives a 64-bit seed from the given parts."""

    seed_hash: Any = keccak.new(digest_bits=256)
    seed_hash.update(SEED_DOMAIN)
    for part in parts:
        seed_hash.update(encode_seed_part(part))
    return int.from_bytes(seed_hash.digest()[0:8], byteorder="little")


def trial_seed(master: int, axis_index: int, trial: int) -> int:
    """Seed of trial `trial` at axis value `axis_index` of a sweep: H(master, j, i)."""

    return mix_seed(master, axis_index, trial)


class RandomStream:
    """RandomStream class. A named, seedable, portable random generator."""

    def __init__(self, seed: int) -> None:
        """Constructor."""

        if (seed < 0) or (seed >= SEED_LIMIT):
            raise InvalidParameterError(f"Seed {seed} is not a 64-bit unsigned integer.")

        self.seed: int = seed
        self.generator: np.random.Generator = np.random.Generator(np.random.PCG64(seed))

    def child(self, label: str) -> "RandomStream":
        """Derives an independent stream for a named purpose."""

        return RandomStream(mix_seed(self.seed, label))

    def __repr__(self) -> str:
        return f"RandomStream({self.seed})"
