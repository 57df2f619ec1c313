"""Seeded generators of small even forms and coupling matrices."""

from __future__ import annotations

import random

from .exact_linalg import IntMatrix, determinant, symmetrize


def random_even_form(rng: random.Random, max_n: int = 2, max_det: int = 12,
                     entry_bound: int = 6) -> IntMatrix:
    """Even symmetric nondegenerate matrix, size <= max_n, 0 < |det| <= max_det."""
    while True:
        n = rng.randint(1, max_n)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 2 * rng.randint(-(entry_bound // 2), entry_bound // 2)
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = rng.randint(-entry_bound // 2, entry_bound // 2)
        m = IntMatrix.from_rows(rows)
        d = determinant(m)
        if d != 0 and abs(d) <= max_det:
            return m


def random_coupling(rng: random.Random, max_n: int = 2, max_det: int = 12,
                    entry_bound: int = 3) -> IntMatrix:
    """Upper-triangular integer C whose symmetrization is nondegenerate with |det| <= max_det."""
    while True:
        n = rng.randint(1, max_n)
        rows = [[rng.randint(-entry_bound, entry_bound) if j >= i else 0 for j in range(n)]
                for i in range(n)]
        c = IntMatrix.from_rows(rows)
        d = determinant(symmetrize(c))
        if d != 0 and abs(d) <= max_det:
            return c
