# pytest lib.
import pytest

import numpy as np

# Keccak hash function.
from Cryptodome.Hash import keccak

# Seeding lib.
from mirrorphase.lib.errors import InvalidParameterError
from mirrorphase.lib.seeding import (
    SEED_DOMAIN,
    RandomStream,
    encode_seed_part,
    mix_seed,
    trial_seed,
)


# Test the documented encoding of seed parts.
def encoding_test() -> None:
    assert encode_seed_part(1) == bytes([1, 0, 0, 0, 0, 0, 0, 0])
    assert encode_seed_part(2 ** 64 - 1) == bytes([255] * 8)
    assert encode_seed_part("ab") == bytes([2, 0]) + b"ab"

    with pytest.raises(InvalidParameterError):
        encode_seed_part(-1)
    with pytest.raises(InvalidParameterError):
        encode_seed_part(2 ** 64)


# Test the mixing function against a direct Keccak evaluation.
def mix_seed_test() -> None:
    digest: bytes = keccak.new(
        digest_bits=256,
        data=SEED_DOMAIN + encode_seed_part(5) + encode_seed_part(1) + encode_seed_part(2),
    ).digest()
    assert trial_seed(5, 1, 2) == int.from_bytes(digest[0:8], byteorder="little")
    assert mix_seed(5, 1, 2) == trial_seed(5, 1, 2)

    # Every position matters.
    assert trial_seed(5, 1, 2) != trial_seed(5, 2, 1)
    assert trial_seed(5, 1, 2) != trial_seed(6, 1, 2)


# Test streams only depend on their seed and label path.
def stream_test() -> None:
    first: RandomStream = RandomStream(99)
    second: RandomStream = RandomStream(99)
    assert np.array_equal(first.generator.standard_normal(10), second.generator.standard_normal(10))

    # Drawing from the parent doesn't move children.
    parent: RandomStream = RandomStream(99)
    parent.generator.standard_normal(1000)
    assert parent.child("signal").seed == RandomStream(99).child("signal").seed
    assert RandomStream(99).child("signal").seed != RandomStream(99).child("dataset").seed

    with pytest.raises(InvalidParameterError):
        RandomStream(-1)
