"""K-valued functions on a finite monoid, stored as exact value vectors."""

from __future__ import annotations

from typing import Iterable, Sequence

from . import linalg
from .monoid import FiniteMonoid
from .scalar import Field, InfiniteField, Raw

DEFAULT_BUDGET = 1 << 24


class MixedDomains(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class MFunc:
    """A function ``M -> K``; ``values[x]`` is the raw value at element ``x``."""

    __slots__ = ("monoid", "field", "values", "_hash")

    def __init__(self, monoid: FiniteMonoid, field: Field, values: Iterable):
        vals = tuple(field.canon(v) for v in values)
        if len(vals) != monoid.size:
            raise ValueError(f"expected {monoid.size} values, got {len(vals)}")
        self.monoid = monoid
        self.field = field
        self.values = vals
        self._hash = None

    @classmethod
    def _raw(cls, monoid, field, values: tuple) -> MFunc:
        # values already canonical
        obj = cls.__new__(cls)
        obj.monoid, obj.field, obj.values, obj._hash = monoid, field, values, None
        return obj

    @classmethod
    def zero(cls, monoid: FiniteMonoid, field: Field) -> MFunc:
        return cls._raw(monoid, field, (field.zero,) * monoid.size)

    @classmethod
    def constant(cls, monoid: FiniteMonoid, field: Field, c) -> MFunc:
        return cls._raw(monoid, field, (field.canon(c),) * monoid.size)

    def __getitem__(self, x: int) -> Raw:
        return self.values[x]

    __call__ = __getitem__

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MFunc):
            return NotImplemented
        return (
            self.values == other.values
            and self.field == other.field
            and (self.monoid is other.monoid or self.monoid == other.monoid)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.values)
        return self._hash

    def __repr__(self) -> str:
        return f"MFunc({[self.field.encode(v) for v in self.values]}, {self.field})"

    def is_zero(self) -> bool:
        return not any(self.values)

    def _check(self, other: MFunc) -> None:
        if self.field != other.field or not (self.monoid is other.monoid or self.monoid == other.monoid):
            raise MixedDomains("functions live on different monoids or fields")

    def __add__(self, other: MFunc) -> MFunc:
        self._check(other)
        add = self.field.add
        return MFunc._raw(self.monoid, self.field, tuple(add(a, b) for a, b in zip(self.values, other.values)))

    def __sub__(self, other: MFunc) -> MFunc:
        self._check(other)
        sub = self.field.sub
        return MFunc._raw(self.monoid, self.field, tuple(sub(a, b) for a, b in zip(self.values, other.values)))

    def __neg__(self) -> MFunc:
        neg = self.field.neg
        return MFunc._raw(self.monoid, self.field, tuple(neg(a) for a in self.values))

    def scale(self, c) -> MFunc:
        c = self.field.canon(c)
        mul = self.field.mul
        return MFunc._raw(self.monoid, self.field, tuple(mul(c, a) for a in self.values))

    def __rmul__(self, c) -> MFunc:
        return self.scale(c)

    def times(self, other: MFunc) -> MFunc:
        """Pointwise product."""
        self._check(other)
        mul = self.field.mul
        return MFunc._raw(self.monoid, self.field, tuple(mul(a, b) for a, b in zip(self.values, other.values)))

    def sort_key(self) -> tuple:
        return self.values

    def to_json(self) -> dict:
        return {"values": [self.field.encode(v) for v in self.values]}

    @classmethod
    def from_json(cls, obj, monoid: FiniteMonoid, field: Field) -> MFunc:
        values = obj["values"] if isinstance(obj, dict) else obj
        return cls(monoid, field, values)


def pointwise(op: str, *args) -> MFunc:
    """``pointwise("add", f, g)``, ``("sub", f, g)``, ``("scale", c, f)``, ``("negate", f)``."""
    if op == "add":
        return args[0] + args[1]
    if op == "sub":
        return args[0] - args[1]
    if op == "scale":
        return args[1].scale(args[0])
    if op == "negate":
        return -args[0]
    raise ValueError(f"unknown pointwise op {op!r}")


def linear_combination(coeffs: Sequence, funcs: Sequence[MFunc], monoid=None, field=None) -> MFunc:
    if not funcs:
        return MFunc.zero(monoid, field)
    F = funcs[0].field
    acc = [F.zero] * funcs[0].monoid.size
    for c, fn in zip(coeffs, funcs):
        funcs[0]._check(fn)
        c = F.canon(c)
        if not c:
            continue
        acc = [F.add(a, F.mul(c, v)) for a, v in zip(acc, fn.values)]
    return MFunc._raw(funcs[0].monoid, F, tuple(acc))


def multiplicative_violation(phi: MFunc):
    """First pair ``(x, y)`` with ``phi(xy) != phi(x) phi(y)``, or ``None``."""
    t = phi.monoid.table
    v = phi.values
    mul = phi.field.mul
    for x in range(len(v)):
        row = t[x]
        vx = v[x]
        for y in range(len(v)):
            if v[row[y]] != mul(vx, v[y]):
                return (x, y)
    return None


def is_multiplicative(phi: MFunc) -> bool:
    return multiplicative_violation(phi) is None


def _constraint_schedule(M: FiniteMonoid) -> list[list[tuple[int, int, int]]]:
    # pairs (x, y, xy) become checkable once their largest index is assigned
    sched: list[list[tuple[int, int, int]]] = [[] for _ in range(M.size)]
    for x in range(M.size):
        for y in range(M.size):
            xy = M.table[x][y]
            sched[max(x, y, xy)].append((x, y, xy))
    return sched


def enumerate_multiplicative(M: FiniteMonoid, field: Field, budget: int = DEFAULT_BUDGET) -> list[MFunc]:
    """All nonzero multiplicative functions ``M -> K``, in lexicographic value order.

    The search space is every vector in ``K^|M|``, scanned depth-first in
    element order and abandoned as soon as a pair whose entries are all
    assigned violates the law.
    """
    if not field.is_finite:
        raise InfiniteField("multiplicative functions can only be enumerated over a finite field")
    p = field.p
    if p ** M.size > budget:
        raise BudgetExceeded(f"|K|^|M| = {p}^{M.size} exceeds budget {budget}")
    sched = _constraint_schedule(M)
    n = M.size
    vals = [0] * n
    out: list[MFunc] = []

    def dfs(i: int) -> None:
        if i == n:
            if any(vals):
                out.append(MFunc._raw(M, field, tuple(vals)))
            return
        for v in range(p):
            vals[i] = v
            if all(vals[xy] == vals[x] * vals[y] % p for x, y, xy in sched[i]):
                dfs(i + 1)
        vals[i] = 0

    dfs(0)
    return out


def product_functions(A: FiniteMonoid, B: FiniteMonoid, P: FiniteMonoid, fa: MFunc, fb: MFunc) -> MFunc:
    """``(a, b) -> fa(a) fb(b)`` on ``P = direct_product(A, B)``.

    Every multiplicative function on a product arises this way from its
    restrictions to the two factors, which is how fixtures too large for
    exhaustive search get their multiplicative functions.
    """
    F = fa.field
    if P.size != A.size * B.size:
        raise MixedDomains("P is not the product of A and B")
    return MFunc._raw(P, F, tuple(F.mul(fa[a], fb[b]) for a in range(A.size) for b in range(B.size)))


def _same_domain(funcs: Sequence[MFunc]) -> None:
    for fn in funcs[1:]:
        funcs[0]._check(fn)


def rank(funcs: Sequence[MFunc]) -> int:
    """Rank of the ``len(funcs) x |M|`` value matrix."""
    if not funcs:
        return 0
    _same_domain(funcs)
    return linalg.rank([fn.values for fn in funcs], funcs[0].field)


def express_in_basis(target: MFunc, basis: Sequence[MFunc]):
    """Coefficients ``c`` with ``sum(c[i] * basis[i]) == target``, or ``None`` if not in the span.

    When the basis is dependent the free coefficients are set to zero.
    """
    F = target.field
    if not basis:
        return () if target.is_zero() else None
    _same_domain([target, *basis])
    A = [[b.values[x] for b in basis] for x in range(target.monoid.size)]
    sol = linalg.solve(A, target.values, F)
    if sol is None:
        return None
    return tuple(sol[0])
