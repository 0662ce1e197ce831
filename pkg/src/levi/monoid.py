"""Finite monoids as Cayley tables, plus a small catalog of builders.

Element indexing is fixed per builder so fixtures are reproducible:

* ``cyclic(n)``: residue ``k`` is element ``k`` under addition mod n.
* ``meet_semilattice(k)``: element ``i`` is the subset with bitmask
  ``full ^ i`` (bit ``t`` set means ``t+1`` is a member), so the full set
  (the identity) is element 0 and the empty set is last.
* ``symmetric3()``: permutations of {0,1,2} in lexicographic one-line
  order, product ``(s*t)(i) = s(t(i))``.
* ``direct_product(A, B)``: ``(a, b)`` is element ``a * B.size + b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

MAX_SIZE = 4096
VALIDATION_CAP = 512


class MonoidError(Exception):
    pass


class IndexOutOfRange(MonoidError, IndexError):
    pass


class BadIdentity(MonoidError):
    def __init__(self, x: int, message: str | None = None):
        self.x = x
        super().__init__(message or f"identity law fails at element {x}")


class NotAssociative(MonoidError):
    def __init__(self, x: int, y: int, z: int):
        self.witness = (x, y, z)
        super().__init__(f"(x*y)*z != x*(y*z) at x={x}, y={y}, z={z}")


class UnknownName(MonoidError, KeyError):
    pass


class SizeLimit(MonoidError):
    pass


@dataclass(frozen=True)
class FiniteMonoid:
    size: int
    identity: int
    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def elements(self) -> range:
        return range(self.size)

    def to_json(self) -> dict:
        return {"size": self.size, "identity": self.identity, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, obj: dict, *, name: str = "") -> FiniteMonoid:
        return validate_monoid(obj["size"], obj["identity"], obj["table"], name=name)


def _check_shape(size, identity, table) -> tuple[tuple[int, ...], ...]:
    if not isinstance(size, int) or size < 1:
        raise MonoidError(f"size must be a positive integer, got {size!r}")
    if size > MAX_SIZE:
        raise SizeLimit(f"size {size} exceeds {MAX_SIZE}")
    if not 0 <= identity < size:
        raise IndexOutOfRange(f"identity {identity} not in [0, {size})")
    if len(table) != size or any(len(row) != size for row in table):
        raise MonoidError(f"table must be {size}x{size}")
    rows = tuple(tuple(int(v) for v in row) for row in table)
    for x, row in enumerate(rows):
        for y, v in enumerate(row):
            if not 0 <= v < size:
                raise IndexOutOfRange(f"table[{x}][{y}] = {v} not in [0, {size})")
    return rows


def first_violation(size: int, identity: int, rows) -> MonoidError | None:
    """The first identity or associativity violation, scanning in index order."""
    for x in range(size):
        if rows[identity][x] != x or rows[x][identity] != x:
            return BadIdentity(x)
    for x in range(size):
        rx = rows[x]
        for y in range(size):
            rxy = rows[rx[y]]
            ry = rows[y]
            for z in range(size):
                if rxy[z] != rx[ry[z]]:
                    return NotAssociative(x, y, z)
    return None


def validate_monoid(size: int, identity: int, table, *, name: str = "") -> FiniteMonoid:
    """Build a :class:`FiniteMonoid`, checking the identity and associativity laws.

    Raises the first violation found (:class:`BadIdentity` or
    :class:`NotAssociative`, each carrying a witness).
    """
    rows = _check_shape(size, identity, table)
    if size > VALIDATION_CAP:
        raise SizeLimit(f"exhaustive validation is capped at {VALIDATION_CAP} elements")
    err = first_violation(size, identity, rows)
    if err is not None:
        raise err
    return FiniteMonoid(size, identity, rows, name)


def is_abelian(M: FiniteMonoid) -> bool:
    t = M.table
    return all(t[x][y] == t[y][x] for x in range(M.size) for y in range(x + 1, M.size))


def is_idempotent(M: FiniteMonoid) -> bool:
    return all(M.table[x][x] == x for x in range(M.size))


# catalog ------------------------------------------------------------------


def cyclic(n: int) -> FiniteMonoid:
    if n < 1:
        raise MonoidError("cyclic(n) needs n >= 1")
    if n > MAX_SIZE:
        raise SizeLimit(f"cyclic({n}) exceeds {MAX_SIZE}")
    table = [[(x + y) % n for y in range(n)] for x in range(n)]
    return validate_monoid(n, 0, table, name=f"cyclic({n})")


def meet_semilattice(k: int) -> FiniteMonoid:
    """Subsets of {1..k} under intersection, identity = full set."""
    if k not in (1, 2, 3):
        raise MonoidError("meet_semilattice(k) needs k in {1, 2, 3}")
    full = (1 << k) - 1
    size = 1 << k
    # element i <-> mask full ^ i, so mask m is element full ^ m
    table = [[full ^ ((full ^ x) & (full ^ y)) for y in range(size)] for x in range(size)]
    return validate_monoid(size, 0, table, name=f"meet_semilattice({k})")


def subset_of(k: int, x: int) -> frozenset[int]:
    """The subset of {1..k} that is element ``x`` of ``meet_semilattice(k)``."""
    mask = ((1 << k) - 1) ^ x
    return frozenset(t + 1 for t in range(k) if mask >> t & 1)


def symmetric3() -> FiniteMonoid:
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(s[t[i]] for i in range(3))] for t in perms] for s in perms]
    return validate_monoid(6, index[(0, 1, 2)], table, name="symmetric3")


def direct_product(A: FiniteMonoid, B: FiniteMonoid) -> FiniteMonoid:
    """Componentwise product; element ``(a, b)`` has index ``a * B.size + b``.

    Products of valid monoids are monoids, so sizes above the validation
    cap are built without the exhaustive re-check.
    """
    size = A.size * B.size
    if size > MAX_SIZE:
        raise SizeLimit(f"product size {size} exceeds {MAX_SIZE}")
    nb = B.size
    table = [
        [A.table[a1][a2] * nb + B.table[b1][b2] for a2, b2 in product(range(A.size), range(nb))]
        for a1, b1 in product(range(A.size), range(nb))
    ]
    identity = A.identity * nb + B.identity
    name = f"direct_product({A.name or '?'}, {B.name or '?'})"
    if size <= VALIDATION_CAP:
        return validate_monoid(size, identity, table, name=name)
    return FiniteMonoid(size, identity, _check_shape(size, identity, table), name)


_BUILDERS = {
    "cyclic": cyclic,
    "symmetric3": symmetric3,
    "meet_semilattice": meet_semilattice,
    "direct_product": direct_product,
}


def build_catalog(name: str, *args) -> FiniteMonoid:
    """Dispatch to a catalog builder by name, e.g. ``build_catalog("cyclic", 5)``."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownName(name) from None
    return builder(*args)
