"""Materialise every tuple the five families produce over a finite field."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator

from .families import (
    Classification,
    DegenerateNonzeroH,
    DependentPair,
    DependentSingle,
    Family,
    Independent,
    Trivial,
)
from .funcspace import DEFAULT_BUDGET, BudgetExceeded, MFunc, enumerate_multiplicative
from .problem import ProblemSpec, SolutionTuple
from .scalar import InfiniteField

ALL_FAMILIES = tuple(Family)


def _chis(spec: ProblemSpec) -> list[MFunc]:
    mu = set(spec.mu)
    return [chi for chi in enumerate_multiplicative(spec.monoid, spec.field) if chi not in mu]


def parameter_count(spec: ProblemSpec, families: Iterable[Family] = ALL_FAMILIES) -> int:
    """Number of admissible parameter choices (before deduplication)."""
    if not spec.field.is_finite:
        raise InfiniteField("parameter sweeps need a finite field")
    p, n, N = spec.field.p, spec.n, spec.monoid.size
    fams = set(families)
    total = 0
    if Family.INDEPENDENT in fams:
        total += len(_chis(spec)) * (p - 1) ** 2 * p**n
    for q in range(1, n + 1):
        size = len(spec.block(q))
        if Family.DEPENDENT_PAIR in fams and size == 2:
            total += (p * p - 1) * p * (p - 1) * p ** (n - 1)
        if Family.DEPENDENT_SINGLE in fams and size >= 3:
            total += size * (p - 1) * p * (p - 1) * p ** (n - 1)
    if Family.DEGENERATE in fams:
        total += (p**N - 1) * p**n
    if Family.TRIVIAL in fams:
        total += p**N
    return total


def iter_admissible(spec: ProblemSpec, families: Iterable[Family] = ALL_FAMILIES) -> Iterator[Classification]:
    """Every admissible parameter record, family by family, in a fixed order."""
    if not spec.field.is_finite:
        raise InfiniteField("parameter sweeps need a finite field")
    F, n, M = spec.field, spec.n, spec.monoid
    K = F.elements()
    Kstar = K[1:]
    fams = set(families)

    if Family.INDEPENDENT in fams:
        for chi in _chis(spec):
            for a, b in product(Kstar, Kstar):
                for c in product(K, repeat=n):
                    yield Independent(chi, a, b, c)
    for q in range(1, n + 1):
        size = len(spec.block(q))
        others = [j for j in range(1, n + 1) if j != q]
        if Family.DEPENDENT_PAIR in fams and size == 2:
            for a, b in product(K, K):
                if not a and not b:
                    continue
                for c, d in product(K, K):
                    if c == d:
                        continue
                    for cs in product(K, repeat=n - 1):
                        yield DependentPair(q, a, b, c, d, dict(zip(others, cs)))
        if Family.DEPENDENT_SINGLE in fams and size >= 3:
            for k in spec.block(q):
                for a in Kstar:
                    for c, d in product(K, K):
                        if c == d:
                            continue
                        for cs in product(K, repeat=n - 1):
                            yield DependentSingle(q, k, a, c, d, dict(zip(others, cs)))
    if Family.DEGENERATE in fams:
        for hv in product(K, repeat=M.size):
            if not any(hv):
                continue
            h = MFunc._raw(M, F, hv)
            for c in product(K, repeat=n):
                yield DegenerateNonzeroH(c, h)
    if Family.TRIVIAL in fams:
        for gv in product(K, repeat=M.size):
            yield Trivial(MFunc._raw(M, F, gv))


def sweep_by_family(
    spec: ProblemSpec, families: Iterable[Family] = ALL_FAMILIES, budget: int = DEFAULT_BUDGET
) -> dict[Family, set[SolutionTuple]]:
    families = tuple(families)
    count = parameter_count(spec, families)
    if count > budget:
        raise BudgetExceeded(f"{count} parameter choices exceed budget {budget}")
    out: dict[Family, set[SolutionTuple]] = {fam: set() for fam in families}
    for cl in iter_admissible(spec, families):
        out[cl.family].add(cl.generate(spec))
    return out


def sweep_families(
    spec: ProblemSpec, families: Iterable[Family] = ALL_FAMILIES, budget: int = DEFAULT_BUDGET
) -> list[SolutionTuple]:
    """The deduplicated union of all generated tuples, sorted by :meth:`SolutionTuple.key`.

    ``families`` exists so a harness can deliberately drop a family as a
    negative control.
    """
    union: set[SolutionTuple] = set()
    for tuples in sweep_by_family(spec, families, budget).values():
        union |= tuples
    return sorted(union, key=SolutionTuple.key)
