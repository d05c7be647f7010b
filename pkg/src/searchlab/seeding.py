"""Deterministic seed derivation.

Every stochastic component (bootstraps, focus-search restarts, per-iteration
inner optimizations) takes its RNG from `derive_seed`, so reruns and
parallel/serial schedules agree bit for bit. Python's builtin `hash` is
salted per process and must not be used here.
"""

import hashlib

import numpy as np

_MASK = (1 << 63) - 1


def derive_seed(*parts: object) -> int:
    """Map an arbitrary tuple of labels/ints/floats to a stable 63-bit seed."""
    h = hashlib.sha256()
    for part in parts:
        h.update(repr(part).encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest()[:8], "big") & _MASK


def rng_for(*parts: object) -> np.random.Generator:
    """Generator seeded from `derive_seed(*parts)`."""
    return np.random.default_rng(derive_seed(*parts))
