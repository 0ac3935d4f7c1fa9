"""Deterministic per-task random streams derived from one master seed."""

from __future__ import annotations

import hashlib
import random

DEFAULT_SEED = 20080101


def derive_seed(master: int, *key) -> int:
    h = hashlib.sha256(repr((int(master),) + tuple(key)).encode()).digest()
    return int.from_bytes(h[:8], "big")


def task_rng(master: int, *key) -> random.Random:
    return random.Random(derive_seed(master, *key))
