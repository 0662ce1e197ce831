"""Recover the family and parameters of a solution.

The case split:

* ``f = 0``: ``Trivial`` when ``h = 0``, otherwise ``DegenerateNonzeroH``
  with ``c_j = -h_j(y0)/h(y0)`` at the first ``y0`` where ``h`` is nonzero.
* ``f != 0`` and ``{g, mu_1..mu_m}`` independent: ``Independent`` with
  ``chi = h/h(e)``.
* ``f != 0`` and ``g = sum a_i mu_i``: exactly one block ``q`` has
  non-proportional ``(a_i, b_i)``; its size picks ``DependentPair`` or
  ``DependentSingle``.

Every classification is regenerated and compared with the input; a
mismatch (or any branch that finds no family) raises
:class:`InternalCaseExhaustion`, which would be a counterexample to the
completeness of the five families.
"""

from __future__ import annotations

from collections import Counter

from .families import (
    Classification,
    DegenerateNonzeroH,
    DependentPair,
    DependentSingle,
    Independent,
    Trivial,
)
from .funcspace import express_in_basis, rank
from .problem import LeviError, ProblemSpec, SolutionTuple, residual


class NotASolution(LeviError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__(f"tuple violates the equation at {len(violations)} pairs, first {violations[0]}")


class InternalCaseExhaustion(AssertionError):
    def __init__(self, reason: str, spec: ProblemSpec, t: SolutionTuple):
        self.reason = reason
        self.tuple = t
        super().__init__(f"no family matches: {reason}; tuple = {t.to_json()}")


def classify(spec: ProblemSpec, t: SolutionTuple) -> Classification:
    violations = residual(spec, t)
    if violations:
        raise NotASolution(violations)
    try:
        cl = _classify(spec, t)
        regen = cl.generate(spec)
    except InternalCaseExhaustion:
        raise
    except LeviError as exc:
        raise InternalCaseExhaustion(f"recovered parameters rejected ({exc})", spec, t) from exc
    if regen != t:
        raise InternalCaseExhaustion(f"{cl.family.value} parameters do not regenerate the tuple", spec, t)
    return cl


def _classify(spec: ProblemSpec, t: SolutionTuple) -> Classification:
    F = spec.field
    e = spec.monoid.identity
    mu = list(spec.mu)

    if t.f.is_zero():
        if t.h.is_zero():
            return Trivial(t.g)
        y0 = next(y for y, v in enumerate(t.h.values) if v)
        hy = t.h[y0]
        c = tuple(F.neg(F.div(hj[y0], hy)) for hj in t.hs)
        return DegenerateNonzeroH(c, t.h)

    if rank([t.g, *mu]) == spec.m + 1:
        if rank([t.f, *mu]) != spec.m + 1:
            raise InternalCaseExhaustion("{g, mu} independent but {f, mu} dependent", spec, t)
        a = t.h[e]
        if not a:
            raise InternalCaseExhaustion("independent case with h(e) = 0", spec, t)
        inv_a = F.inv(a)
        chi = t.h.scale(inv_a)
        c = tuple(F.mul(hj[e], inv_a) for hj in t.hs)
        b = t.g[e]
        for ck, gk in zip(c, spec.gs):
            b = F.add(b, F.mul(ck, gk[e]))
        return Independent(chi, a, b, c)

    coeffs = express_in_basis(t.g, mu)
    if coeffs is None:
        raise InternalCaseExhaustion("g outside span(mu) despite rank deficiency", spec, t)
    ratio = {i: F.div(coeffs[i - 1], spec.b_(i)) for i in range(1, spec.m + 1)}
    mixed = [j for j in range(1, spec.n + 1) if len({ratio[i] for i in spec.block(j)}) > 1]
    if len(mixed) != 1:
        raise InternalCaseExhaustion(f"{len(mixed)} blocks with non-proportional coefficients", spec, t)
    q = mixed[0]
    cj = {j: ratio[spec.block(j)[0]] for j in range(1, spec.n + 1) if j != q}
    blk = spec.block(q)

    if len(blk) == 2:
        s, k = blk
        ab = express_in_basis(t.h, [spec.mu_(k), spec.mu_(s)])
        if ab is None:
            raise InternalCaseExhaustion("h is not a combination of the block's two functions", spec, t)
        return DependentPair(q, ab[0], ab[1], ratio[k], ratio[s], cj, coeffs)

    counts = Counter(ratio[i] for i in blk)
    outliers = [i for i in blk if counts[ratio[i]] == 1]
    if len(counts) != 2 or len(outliers) != 1:
        raise InternalCaseExhaustion(f"block {q} ratios do not single out one index", spec, t)
    k = outliers[0]
    d = next(r for r in counts if r != ratio[k])
    return DependentSingle(q, k, t.h[e], ratio[k], d, cj, coeffs)
