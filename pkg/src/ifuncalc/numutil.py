"""Small numeric helpers."""

from __future__ import annotations

from typing import Sequence


def pairwise_sum(values: Sequence[complex]) -> complex:
    """Sum a sequence by recursive halving.

    Deterministic for a fixed input order and more accurate than a running
    sum for long alternating sequences.
    """
    n = len(values)
    if n == 0:
        return 0j
    if n == 1:
        return complex(values[0])
    if n <= 8:
        total = complex(values[0])
        for v in values[1:]:
            total += v
        return total
    half = n // 2
    return pairwise_sum(values[:half]) + pairwise_sum(values[half:])


def is_nonpositive_integer(z: complex, tol: float = 0.0) -> bool:
    """True when z sits exactly (or within tol) on {0, -1, -2, ...}."""
    if abs(z.imag) > tol:
        return False
    r = z.real
    if r > tol:
        return False
    return abs(r - round(r)) <= tol


def near_integer(x: float, tol: float) -> bool:
    return abs(x - round(x)) <= tol
