"""Counting permutations by their number of increasing 2-sequences.

A 2-sequence is a value i immediately followed by i+1. P(i, k) satisfies

    P(i, k) = (i-k-1) P(i-1, k) + (k+1) P(i-1, k+1) + P(i-1, k-1)

with P(1, 0) = 1, obtained by inserting value i into an (i-1)-permutation.
"""

from __future__ import annotations

import itertools
from collections import Counter


def _next_row(prev: list[int], i: int, modulus: int | None) -> list[int]:
    row = []
    for k in range(i):
        val = 0
        if k <= i - 2:
            val += (i - k - 1) * prev[k]
        if k + 1 <= i - 2:
            val += (k + 1) * prev[k + 1]
        if k >= 1:
            val += prev[k - 1]
        row.append(val % modulus if modulus else val)
    return row


def _check_modulus(modulus):
    if modulus is not None and modulus < 2:
        raise ValueError("modulus must be >= 2")


def count_permutations(n: int, k: int, modulus: int | None = None) -> int:
    """P(n, k), exactly or reduced mod ``modulus``; keeps two rows only."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= k < n:
        raise ValueError(f"k must lie in [0, {n - 1}], got {k}")
    _check_modulus(modulus)
    row = [1 % modulus if modulus else 1]
    for i in range(2, n + 1):
        row = _next_row(row, i, modulus)
    return row[k]


def count_table(n: int, modulus: int | None = None) -> list[list[int]]:
    """Rows P(i, 0..i-1) for i = 1..n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_modulus(modulus)
    table = [[1 % modulus if modulus else 1]]
    for i in range(2, n + 1):
        table.append(_next_row(table[-1], i, modulus))
    return table


def increasing_pairs(perm) -> int:
    return sum(1 for a, b in zip(perm, perm[1:]) if b == a + 1)


def decreasing_pairs(perm) -> int:
    return sum(1 for a, b in zip(perm, perm[1:]) if b == a - 1)


def brute_force_row(n: int, pairs=increasing_pairs) -> list[int]:
    """Row n by enumerating all n! permutations."""
    counts = Counter(pairs(p) for p in itertools.permutations(range(1, n + 1)))
    return [counts.get(k, 0) for k in range(n)]


def decreasing_equivalence_check(n: int) -> bool:
    if n > 8:
        raise ValueError("enumeration is limited to n <= 8")
    return brute_force_row(n, increasing_pairs) == brute_force_row(n, decreasing_pairs)
