"""Merge rotations whose controls differ in one bit and whose angles agree.

Two entries of one level, e.g. ``'010'`` and ``'000'`` with equal
``(theta, phi)``, become a single entry ``'0e0'`` that no longer depends on
the middle qubit.  Merging repeats until nothing changes.
"""
from __future__ import annotations

from typing import Mapping

from .core import AngleTable

MERGE_TOL = 1e-12

_FLIP = {"0": "1", "1": "0"}


def _close(a: tuple[float, float], b: tuple[float, float]) -> bool:
    return abs(a[0] - b[0]) <= MERGE_TOL and abs(a[1] - b[1]) <= MERGE_TOL


def _merge_once(level: dict[str, tuple[float, float]]) -> bool:
    for key in sorted(level):
        value = level[key]
        for i, sym in enumerate(key):
            if sym == "e":
                continue
            partner = key[:i] + _FLIP[sym] + key[i + 1 :]
            other = level.get(partner)
            if other is not None and _close(value, other):
                del level[key], level[partner]
                level[key[:i] + "e" + key[i + 1 :]] = value
                return True
    return False


def optimize_angles(level: Mapping[str, tuple[float, float]]) -> dict[str, tuple[float, float]]:
    """Merge Hamming-distance-1 keys with matching angles to a fixed point."""
    out = dict(level)
    while len(out) > 1 and _merge_once(out):
        pass
    return out


def optimize_table(table: AngleTable) -> AngleTable:
    return AngleTable(tuple(optimize_angles(level) for level in table.levels))


def lookup(level: Mapping[str, tuple[float, float]], concrete: str):
    """Value governing the fully specified pattern ``concrete``, or ``None``."""
    for key, value in level.items():
        if all(k == "e" or k == c for k, c in zip(key, concrete)):
            return value
    return None
