"""GF(2) elimination with rows packed into Python ints (bit ``c`` = column ``c``)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def pack(row: Sequence[int]) -> int:
    word = 0
    for c, v in enumerate(row):
        if v & 1:
            word |= 1 << c
    return word


def unpack(word: int, ncols: int) -> list[int]:
    return [word >> c & 1 for c in range(ncols)]


def rref_bits(rows: Sequence[int], ncols: int):
    """Reduce packed rows on their low ``ncols`` bits. Returns ``(rows, pivots)``; all rows kept."""
    A = list(rows)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        piv = next((i for i in range(r, len(A)) if A[i] & bit), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        prow = A[r]
        for i in range(len(A)):
            if i != r and A[i] & bit:
                A[i] ^= prow
        pivots.append(col)
        r += 1
    return A, pivots


def rank_bits(rows: Sequence[int], ncols: int) -> int:
    return len(rref_bits(rows, ncols)[1])


def nullspace_bits(reduced: Sequence[int], pivots: Sequence[int], ncols: int) -> list[int]:
    mask = (1 << ncols) - 1
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = 1 << free
        for row, pc in zip(reduced, pivots):
            if row >> free & 1:
                v |= 1 << pc
        basis.append(v & mask)
    return basis


def solve_bits(rows: Sequence[int], rhs: int, ncols: int):
    """Solve with the right-hand side as a bitmask over rows.

    Returns ``(particular, nullspace)`` as packed vectors, or ``None``.
    """
    aug = [row | ((rhs >> i & 1) << ncols) for i, row in enumerate(rows)]
    reduced, pivots = rref_bits(aug, ncols)
    for row in reduced[len(pivots):]:
        if row >> ncols & 1:
            return None
    x = 0
    for row, pc in zip(reduced, pivots):
        if row >> ncols & 1:
            x |= 1 << pc
    return x, nullspace_bits(reduced, pivots, ncols)


@dataclass
class Gf2PreparedSystem:
    """Coefficient matrix reduced once; each right-hand side is a few AND/popcounts."""

    ncols: int
    pivots: list[int]
    transform: list[int]
    nullspace: list[int]

    @classmethod
    def factor(cls, rows: Sequence[int], ncols: int) -> Gf2PreparedSystem:
        aug = [row | (1 << (ncols + i)) for i, row in enumerate(rows)]
        reduced, pivots = rref_bits(aug, ncols)
        mask = (1 << ncols) - 1
        coeffs = [row & mask for row in reduced[: len(pivots)]]
        transform = [row >> ncols for row in reduced]
        return cls(ncols, pivots, transform, nullspace_bits(coeffs, pivots, ncols))

    def solve(self, rhs: int):
        r = len(self.pivots)
        t = self.transform
        for row in t[r:]:
            if (row & rhs).bit_count() & 1:
                return None
        x = 0
        for pc, row in zip(self.pivots, t):
            if (row & rhs).bit_count() & 1:
                x |= 1 << pc
        return x, self.nullspace


def gray_affine_bits(particular: int, basis: Sequence[int]):
    """All points of ``particular + span(basis)`` in binary-reflected Gray order."""
    x = particular
    yield x
    for step in range(1, 1 << len(basis)):
        x ^= basis[(step & -step).bit_length() - 1]
        yield x
