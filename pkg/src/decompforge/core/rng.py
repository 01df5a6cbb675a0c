"""Random stream derivation.

Every random choice in the package comes from a generator built here, so a run is a
deterministic function of its master seed and the labels of the stage asking for
randomness. Streams are reproducible per build, not across numpy major versions.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def stage_code(label: str) -> int:
    """Stable 32-bit code of a stage name."""
    return zlib.crc32(label.encode("utf-8"))


def _spawn_key(labels: tuple[str | int, ...]) -> tuple[int, ...]:
    key: list[int] = []
    for label in labels:
        if isinstance(label, str):
            key.append(stage_code(label))
        else:
            key.append(int(label) & _MASK64)
    return tuple(key)


def derive_rng(seed: int, *labels: str | int) -> np.random.Generator:
    """Return a PCG64 generator for ``seed`` specialised by ``labels``.

    ``derive_rng(7, "nibble", 3)`` and ``derive_rng(7, "nibble", 4)`` are independent
    streams; calling with the same arguments twice yields identical streams.
    """
    sequence = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=_spawn_key(labels))
    return np.random.Generator(np.random.PCG64(sequence))


def derive_seed(seed: int, *labels: str | int) -> int:
    """Derive a child master seed, for handing a stream to a nested pipeline."""
    sequence = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=_spawn_key(labels))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
