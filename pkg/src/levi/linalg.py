"""Exact Gaussian elimination over a :class:`~levi.scalar.Field`.

Matrices are lists of rows of raw field values.  Pivots are taken at the
first row carrying a nonzero entry in the current column; exact
arithmetic needs no pivoting strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .scalar import Field, Raw


def rref(rows: Sequence[Sequence[Raw]], field: Field, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(reduced, pivots)`` where ``reduced`` holds only the nonzero
    rows and ``pivots[r]`` is the pivot column of row ``r``.
    """
    A = [list(r) for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        row = A[r]
        inv = field.inv(row[col])
        if inv != 1:
            row = A[r] = [field.mul(v, inv) for v in row]
        for i in range(len(A)):
            if i != r and A[i][col]:
                factor = A[i][col]
                other = A[i]
                A[i] = [field.sub(a, field.mul(factor, b)) for a, b in zip(other, row)]
        pivots.append(col)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence[Raw]], field: Field) -> int:
    if not rows:
        return 0
    return len(rref(rows, field)[1])


def nullspace_from_rref(reduced, pivots, ncols: int, field: Field) -> list[list[Raw]]:
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for row, pc in zip(reduced, pivots):
            if row[free]:
                v[pc] = field.neg(row[free])
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence[Raw]], b: Sequence[Raw], field: Field):
    """Solve ``A x = b``.

    Returns ``(particular, nullspace_basis)`` or ``None`` when inconsistent.
    """
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    reduced, pivots = rref(aug, field, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    coeffs = [row[:ncols] for row in reduced]
    return x, nullspace_from_rref(coeffs, pivots, ncols, field)


@dataclass
class PreparedSystem:
    """``A`` factored once so many right-hand sides can be solved cheaply.

    ``transform`` is the product of the row operations taking ``A`` to its
    reduced form; applying it to ``b`` is the same elimination replayed on
    the right-hand side.
    """

    field: Field
    ncols: int
    pivots: list[int]
    transform: list[list[Raw]]
    nullspace: list[list[Raw]]

    @classmethod
    def factor(cls, A: Sequence[Sequence[Raw]], field: Field, ncols: int) -> PreparedSystem:
        nrows = len(A)
        one, zero = field.one, field.zero
        aug = [list(row) + [one if i == j else zero for j in range(nrows)] for i, row in enumerate(A)]
        # eliminate on the coefficient block only; the identity block records the ops
        reduced, pivots = _rref_prefix(aug, field, ncols)
        coeffs = [row[:ncols] for row in reduced[: len(pivots)]]
        transform = [row[ncols:] for row in reduced]
        return cls(field, ncols, pivots, transform, nullspace_from_rref(coeffs, pivots, ncols, field))

    def solve(self, b: Sequence[Raw]):
        f = self.field
        p = f.p
        r = len(self.pivots)
        tb = []
        for row in self.transform:
            s = sum(t * v for t, v in zip(row, b) if t)
            tb.append(s % p if p else s)
        if any(tb[r:]):
            return None
        x = [f.zero] * self.ncols
        for pc, v in zip(self.pivots, tb):
            x[pc] = v
        return x, self.nullspace


def _rref_prefix(A, field: Field, ncols: int):
    """Like :func:`rref` but pivots only in the first ``ncols`` columns and keeps zero rows."""
    A = [list(r) for r in A]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        row = A[r]
        inv = field.inv(row[col])
        if inv != 1:
            row = A[r] = [field.mul(v, inv) for v in row]
        for i in range(len(A)):
            if i != r and A[i][col]:
                factor = A[i][col]
                A[i] = [field.sub(a, field.mul(factor, b)) for a, b in zip(A[i], row)]
        pivots.append(col)
        r += 1
    return A, pivots


def gray_affine(particular: Sequence[Raw], basis: Sequence[Sequence[Raw]], field: Field):
    """Yield every point of ``particular + span(basis)`` over a finite field.

    Walks coefficient vectors in reflected (p-ary) Gray-code order, so each
    step adds one basis vector once.
    """
    p = field.order
    k = len(basis)
    x = list(particular)
    yield tuple(x)
    if k == 0:
        return
    digits = [0] * k
    direction = [1] * k
    for _ in range(p**k - 1):
        # the lowest digit that can still move in its direction
        i = 0
        while True:
            nd = digits[i] + direction[i]
            if 0 <= nd < p:
                break
            direction[i] = -direction[i]
            i += 1
        digits[i] = nd
        step = basis[i] if direction[i] == 1 else [field.neg(v) for v in basis[i]]
        x = [field.add(a, s) for a, s in zip(x, step)]
        yield tuple(x)
