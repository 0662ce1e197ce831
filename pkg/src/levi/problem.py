"""Fixed data of the equation ``f(xy) = g(x)h(y) + sum_j g_j(x)h_j(y)`` and its residual.

Block numbers ``j``/``q`` and multiplicative-function indices ``i``/``k``
are 1-based throughout the public API, matching the usual notation
``g_j = sum_{i=n_j}^{m_j} b_i mu_i``.  Monoid elements are 0-based.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Sequence

from .funcspace import MFunc, is_multiplicative, linear_combination, rank
from .monoid import FiniteMonoid
from .scalar import Field, Raw


class LeviError(ValueError):
    pass


class SpecError(LeviError):
    pass


class DomainMismatch(LeviError):
    pass


class IndexOutOfRange(LeviError, IndexError):
    pass


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    monoid: FiniteMonoid
    field: Field
    partition: tuple[tuple[int, int], ...]
    b: tuple[Raw, ...]
    mu: tuple[MFunc, ...]
    _J: tuple[int, ...] = field(init=False, repr=False)
    _g: tuple[MFunc, ...] = field(init=False, repr=False)

    def __post_init__(self):
        F, M = self.field, self.monoid
        part = tuple((int(lo), int(hi)) for lo, hi in self.partition)
        b = tuple(F.canon(v) for v in self.b)
        mu = tuple(self.mu)
        object.__setattr__(self, "partition", part)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "mu", mu)

        if len(part) < 2:
            raise SpecError("need at least two blocks (n >= 2)")
        expected = 1
        for j, (lo, hi) in enumerate(part, 1):
            if lo != expected:
                raise SpecError(f"block {j} starts at {lo}, expected {expected}")
            if hi - lo < 1:
                raise SpecError(f"block {j} = [{lo},{hi}] has fewer than two terms")
            expected = hi + 1
        m = expected - 1
        if len(b) != m or len(mu) != m:
            raise SpecError(f"partition covers {m} indices but got {len(b)} coefficients and {len(mu)} functions")
        for i, bi in enumerate(b, 1):
            if not bi:
                raise SpecError(f"b_{i} is zero")
        for i, fn in enumerate(mu, 1):
            if fn.field != F or fn.monoid != M:
                raise SpecError(f"mu_{i} lives on a different monoid or field")
            if fn.is_zero():
                raise SpecError(f"mu_{i} is the zero function")
            if not is_multiplicative(fn):
                raise SpecError(f"mu_{i} is not multiplicative")
        if len(set(mu)) != m:
            raise SpecError("the multiplicative functions are not pairwise distinct")
        if rank(list(mu)) != m:
            # distinct nonzero multiplicative functions are always independent
            raise AssertionError("internal error: distinct multiplicative functions found dependent")

        J = []
        for j, (lo, hi) in enumerate(part, 1):
            J.extend([j] * (hi - lo + 1))
        object.__setattr__(self, "_J", tuple(J))
        gs = tuple(linear_combination(b[lo - 1 : hi], mu[lo - 1 : hi]) for lo, hi in part)
        object.__setattr__(self, "_g", gs)

    @property
    def n(self) -> int:
        return len(self.partition)

    @property
    def m(self) -> int:
        return len(self.mu)

    @property
    def gs(self) -> tuple[MFunc, ...]:
        """``(g_1, ..., g_n)``."""
        return self._g

    def block(self, j: int) -> range:
        """1-based indices ``n_j..m_j`` of block ``j``."""
        lo, hi = self.partition[j - 1]
        return range(lo, hi + 1)

    def mu_(self, i: int) -> MFunc:
        return self.mu[i - 1]

    def b_(self, i: int) -> Raw:
        return self.b[i - 1]

    def zero(self) -> MFunc:
        return MFunc.zero(self.monoid, self.field)

    def to_json(self) -> dict:
        enc = self.field.encode
        return {
            "monoid": self.monoid.to_json(),
            "field": self.field.to_json(),
            "partition": [list(p) for p in self.partition],
            "b": [enc(v) for v in self.b],
            "mu": [[enc(v) for v in fn.values] for fn in self.mu],
        }

    @classmethod
    def from_json(cls, obj: dict) -> ProblemSpec:
        M = FiniteMonoid.from_json(obj["monoid"])
        F = Field.from_json(obj["field"])
        mu = [MFunc.from_json(v, M, F) for v in obj["mu"]]
        return cls(M, F, obj["partition"], obj["b"], mu)

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def j_of(spec: ProblemSpec, i: int) -> int:
    """The block number containing multiplicative-function index ``i``."""
    if not 1 <= i <= spec.m:
        raise IndexOutOfRange(f"index {i} not in [1, {spec.m}]")
    return spec._J[i - 1]


def g_component(spec: ProblemSpec, j: int) -> MFunc:
    """``g_j = sum_{i in block j} b_i mu_i``."""
    if not 1 <= j <= spec.n:
        raise IndexOutOfRange(f"block {j} not in [1, {spec.n}]")
    return spec.gs[j - 1]


@dataclass(frozen=True)
class SolutionTuple:
    f: MFunc
    g: MFunc
    h: MFunc
    hs: tuple[MFunc, ...]

    def __post_init__(self):
        object.__setattr__(self, "hs", tuple(self.hs))

    def key(self) -> tuple:
        """Concatenated value vectors; the canonical sort order for tuple sets."""
        out = self.f.values + self.g.values + self.h.values
        for hj in self.hs:
            out += hj.values
        return out

    def __lt__(self, other: SolutionTuple) -> bool:
        return self.key() < other.key()

    def to_json(self) -> dict:
        return {
            "f": self.f.to_json()["values"],
            "g": self.g.to_json()["values"],
            "h": self.h.to_json()["values"],
            "hs": [hj.to_json()["values"] for hj in self.hs],
        }

    @classmethod
    def from_json(cls, obj: dict, spec: ProblemSpec) -> SolutionTuple:
        M, F = spec.monoid, spec.field
        return cls(
            MFunc(M, F, obj["f"]),
            MFunc(M, F, obj["g"]),
            MFunc(M, F, obj["h"]),
            tuple(MFunc(M, F, v) for v in obj["hs"]),
        )


def zero_tuple(spec: ProblemSpec) -> SolutionTuple:
    z = spec.zero()
    return SolutionTuple(z, z, z, (z,) * spec.n)


def residual(spec: ProblemSpec, t: SolutionTuple) -> list[tuple[int, int, Raw]]:
    """Every pair ``(x, y)`` where the equation fails, with its exact defect.

    The defect is ``f(xy) - g(x)h(y) - sum_j g_j(x)h_j(y)``; an empty list
    means ``t`` is a solution.
    """
    M, F = spec.monoid, spec.field
    if len(t.hs) != spec.n:
        raise DomainMismatch(f"expected {spec.n} functions h_j, got {len(t.hs)}")
    for fn in (t.f, t.g, t.h, *t.hs):
        if fn.field != F or not (fn.monoid is M or fn.monoid == M):
            raise DomainMismatch("tuple does not live on the spec's monoid and field")
    p = F.p
    f, g, h = t.f.values, t.g.values, t.h.values
    hs = [hj.values for hj in t.hs]
    gs = [gj.values for gj in spec.gs]
    N = M.size
    out = []
    for x in range(N):
        row = M.table[x]
        gx = g[x]
        terms = [(gj[x], hj) for gj, hj in zip(gs, hs) if gj[x]]
        for y in range(N):
            rhs = gx * h[y]
            for c, hj in terms:
                rhs += c * hj[y]
            d = f[row[y]] - rhs
            if p:
                d %= p
            if d:
                out.append((x, y, d))
    return out


def is_solution(spec: ProblemSpec, t: SolutionTuple) -> bool:
    return not residual(spec, t)


def sum_g(spec: ProblemSpec, coeffs: Sequence) -> MFunc:
    """``sum_j coeffs[j] g_j``."""
    return linear_combination(coeffs, list(spec.gs))
