"""Exhaustive solver and the completeness comparison against the families.

For fixed ``(g, h)`` the equation is linear in the remaining unknowns
``(f, h_1, ..., h_n)``: row ``(x, y)`` reads
``f(xy) - sum_j g_j(x) h_j(y) = g(x) h(y)``.  The coefficient matrix
depends only on the problem data, so it is reduced once and the recorded row
operations are replayed on each right-hand side (bit-packed over GF(2)).
``method="naive"`` re-runs a full elimination per pair instead and exists
as an independent cross-check.
"""

from __future__ import annotations

import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from . import gf2, linalg
from .classify import InternalCaseExhaustion, classify
from .families import Family
from .funcspace import BudgetExceeded, MFunc, rank
from .problem import ProblemSpec, SolutionTuple, residual
from .scalar import InfiniteField
from .sweep import ALL_FAMILIES, sweep_by_family

OUTER_BUDGET = 1 << 32
MAX_ORACLE_SIZE = 8
NULLSPACE_CAP = 20


class NullspaceCapExceeded(RuntimeError):
    pass


def default_workers() -> int:
    return max(1, int(os.environ.get("LEVI_WORKERS", "1")))


def coefficient_rows(spec: ProblemSpec) -> list[list]:
    """Rows indexed by ``x * |M| + y``; columns ``f`` then ``h_1 .. h_n``, |M| each."""
    M, F = spec.monoid, spec.field
    N, n = M.size, spec.n
    one = F.one
    rows = []
    for x in range(N):
        gx = [F.neg(gj[x]) for gj in spec.gs]
        for y in range(N):
            row = [F.zero] * (N * (n + 1))
            row[M.table[x][y]] = one
            for j in range(n):
                row[N * (j + 1) + y] = gx[j]
            rows.append(row)
    return rows


class _System:
    """Coefficient matrix of one spec, prepared for repeated right-hand sides."""

    def __init__(self, spec: ProblemSpec, method: str = "prepared"):
        self.spec = spec
        self.method = method
        self.N = spec.monoid.size
        self.ncols = self.N * (spec.n + 1)
        self.bits = spec.field.p == 2
        rows = coefficient_rows(spec)
        if self.bits:
            self.packed = [gf2.pack(r) for r in rows]
            if method == "prepared":
                self.prep = gf2.Gf2PreparedSystem.factor(self.packed, self.ncols)
        else:
            self.rows = rows
            if method == "prepared":
                self.prep = linalg.PreparedSystem.factor(rows, spec.field, self.ncols)

    def _split(self, x) -> list[MFunc]:
        spec, N = self.spec, self.N
        M, F = spec.monoid, spec.field
        parts = [MFunc._raw(M, F, tuple(x[k * N : (k + 1) * N])) for k in range(spec.n + 1)]
        return parts

    def solutions(self, g: tuple, h: tuple) -> list[SolutionTuple]:
        spec, N, F = self.spec, self.N, self.spec.field
        M = spec.monoid
        if self.bits:
            hmask = gf2.pack(h)
            rhs = 0
            for x in range(N):
                if g[x]:
                    rhs |= hmask << (x * N)
            if self.method == "prepared":
                sol = self.prep.solve(rhs)
            else:
                sol = gf2.solve_bits(self.packed, rhs, self.ncols)
            if sol is None:
                return []
            part, basis = sol
            if len(basis) > NULLSPACE_CAP:
                raise NullspaceCapExceeded(f"nullspace dimension {len(basis)} > {NULLSPACE_CAP}")
            points = (gf2.unpack(v, self.ncols) for v in gf2.gray_affine_bits(part, basis))
        else:
            rhs = [F.mul(g[x], h[y]) for x in range(N) for y in range(N)]
            if self.method == "prepared":
                sol = self.prep.solve(rhs)
            else:
                sol = linalg.solve(self.rows, rhs, F)
            if sol is None:
                return []
            part, basis = sol
            if len(basis) > NULLSPACE_CAP:
                raise NullspaceCapExceeded(f"nullspace dimension {len(basis)} > {NULLSPACE_CAP}")
            if not F.is_finite:
                if basis:
                    raise InfiniteField("solution set is infinite over the rationals")
                points = iter([part])
            else:
                points = linalg.gray_affine(part, basis, F)
        gf = MFunc._raw(M, F, tuple(g))
        hf = MFunc._raw(M, F, tuple(h))
        out = []
        for x in points:
            parts = self._split(x)
            out.append(SolutionTuple(parts[0], gf, hf, tuple(parts[1:])))
        return out


def solve_fixed(spec: ProblemSpec, g: MFunc, h: MFunc, method: str = "naive") -> list[SolutionTuple]:
    """All solutions with the given ``g`` and ``h``.

    No size limit beyond the monoid's own; used for restricted runs such as
    ``g = h = 0`` on fixtures too large for the full outer loop.  Over the
    rationals a nontrivial nullspace cannot be enumerated and raises.
    """
    system = _System(spec, method)
    return sorted(system.solutions(g.values, h.values), key=SolutionTuple.key)


def _check_budget(spec: ProblemSpec, budget: int) -> None:
    if not spec.field.is_finite:
        raise InfiniteField("the oracle needs a finite prime field")
    N = spec.monoid.size
    if N > MAX_ORACLE_SIZE:
        raise BudgetExceeded(f"|M| = {N} exceeds the oracle limit {MAX_ORACLE_SIZE}")
    if spec.field.p ** (2 * N) > budget:
        raise BudgetExceeded(f"{spec.field.p}^{2 * N} outer iterations exceed budget {budget}")


def _solve_chunk(spec: ProblemSpec, start: int, stop: int, method: str) -> list[SolutionTuple]:
    """Solutions for the ``g`` vectors with lexicographic rank in ``[start, stop)``."""
    system = _System(spec, method)
    K = spec.field.elements()
    N = spec.monoid.size
    p = spec.field.p
    hs = list(product(K, repeat=N))
    out = []
    for gi in range(start, stop):
        g = tuple((gi // p ** (N - 1 - t)) % p for t in range(N))
        for h in hs:
            out.extend(system.solutions(g, h))
    return out


def solve_all(
    spec: ProblemSpec,
    *,
    workers: int | None = None,
    method: str = "prepared",
    budget: int = OUTER_BUDGET,
    self_check: bool = True,
) -> list[SolutionTuple]:
    """Every solution of the equation, sorted by :meth:`SolutionTuple.key`.

    The outer space of ``g`` vectors is split into contiguous ranges, one
    per worker; results are merged and sorted so the output does not
    depend on the split.
    """
    _check_budget(spec, budget)
    workers = default_workers() if workers is None else max(1, workers)
    total = spec.field.p ** spec.monoid.size
    bounds = [total * w // workers for w in range(workers + 1)]
    ranges = [(bounds[w], bounds[w + 1]) for w in range(workers) if bounds[w] < bounds[w + 1]]
    if workers == 1:
        chunks = [_solve_chunk(spec, a, b, method) for a, b in ranges]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_solve_chunk, spec, a, b, method) for a, b in ranges]
            chunks = [fut.result() for fut in futures]
    sols = sorted((t for chunk in chunks for t in chunk), key=SolutionTuple.key)
    if self_check and sols:
        picks = set(range(0, len(sols), 100)) | {len(sols) - 1}
        for i in sorted(picks):
            if residual(spec, sols[i]):
                raise AssertionError(f"oracle produced a non-solution: {sols[i].to_json()}")
    return sols


# structural checks ------------------------------------------------------------------


def independence_counterexamples(spec: ProblemSpec, solutions: Iterable[SolutionTuple]) -> list[SolutionTuple]:
    """Solutions with ``f != 0``, ``{g, mu}`` independent and ``{f, mu}`` dependent."""
    mu = list(spec.mu)
    m1 = spec.m + 1
    return [
        t
        for t in solutions
        if not t.f.is_zero() and rank([t.g, *mu]) == m1 and rank([t.f, *mu]) != m1
    ]


# comparison ---------------------------------------------------------------------


@dataclass
class OracleReport:
    spec_digest: str
    oracle_count: int
    family_count: int
    missing: list[SolutionTuple]
    extra: list[SolutionTuple]
    per_family: dict[str, int]
    generated_per_family: dict[str, int]
    unclassified: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def clean(self) -> bool:
        return (
            not self.missing
            and not self.extra
            and not self.unclassified
            and self.oracle_count == self.family_count
        )

    def to_json(self, *, include_timing: bool = False) -> dict:
        out = {
            "spec_digest": self.spec_digest,
            "oracle_count": self.oracle_count,
            "family_count": self.family_count,
            "missing": [t.to_json() for t in sorted(self.missing, key=SolutionTuple.key)],
            "extra": [t.to_json() for t in sorted(self.extra, key=SolutionTuple.key)],
            "per_family": dict(sorted(self.per_family.items())),
            "generated_per_family": dict(sorted(self.generated_per_family.items())),
            "unclassified": list(self.unclassified),
            "clean": self.clean,
        }
        if include_timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def compare(
    spec: ProblemSpec,
    *,
    workers: int | None = None,
    families: Iterable[Family] = ALL_FAMILIES,
    method: str = "prepared",
) -> OracleReport:
    """Oracle solution set versus the union of the family sweeps."""
    t0 = time.perf_counter()
    oracle = solve_all(spec, workers=workers, method=method)
    by_family = sweep_by_family(spec, families)
    generated: set[SolutionTuple] = set()
    for tuples in by_family.values():
        generated |= tuples
    oracle_set = set(oracle)
    missing = [t for t in oracle if t not in generated]
    extra = sorted((t for t in generated if residual(spec, t)), key=SolutionTuple.key)

    per_family: Counter = Counter()
    unclassified = []
    for t in oracle:
        try:
            per_family[classify(spec, t).family.value] += 1
        except InternalCaseExhaustion as exc:
            unclassified.append(str(exc))
    return OracleReport(
        spec_digest=spec.digest(),
        oracle_count=len(oracle_set),
        family_count=len(generated),
        missing=missing,
        extra=extra,
        per_family=dict(per_family),
        generated_per_family={fam.value: len(ts) for fam, ts in by_family.items()},
        unclassified=unclassified,
        wall_time=time.perf_counter() - t0,
    )
