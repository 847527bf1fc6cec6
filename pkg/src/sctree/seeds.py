"""Stable child seeds, so that sub-tasks sample independently of run order."""
from __future__ import annotations

import hashlib


def child_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")
