"""The seven solution forms for two blocks, written out directly.

Here ``g_1 = sum_{i<=N} b_i mu_i`` and ``g_2 = sum_{i>N} b_i mu_i``.  These
are spelled out independently of the generic generators in
:mod:`levi.families` so the two can be checked against each other.

Forms 3 and 5 need ``h_2 = -a c_2 mu_k`` (resp. ``h_1 = -a c_1 mu_k``).
``printed=True`` gives the variant without the factor ``a``, which fails
the equation unless ``a = 1`` or the ``c`` coefficient is zero.
"""

from __future__ import annotations

from .families import Family, WrongBlockShape
from .funcspace import MFunc
from .problem import IndexOutOfRange, ProblemSpec, SolutionTuple

FORM_FAMILY = {
    1: Family.INDEPENDENT,
    2: Family.DEPENDENT_PAIR,
    3: Family.DEPENDENT_SINGLE,
    4: Family.DEPENDENT_PAIR,
    5: Family.DEPENDENT_SINGLE,
    6: Family.DEGENERATE,
    7: Family.TRIVIAL,
}


def _setup(spec: ProblemSpec):
    if spec.n != 2:
        raise WrongBlockShape("the two-block forms need n = 2")
    F = spec.field
    N = spec.partition[0][1]
    mu = lambda i: spec.mu[i - 1]  # noqa: E731
    b = lambda i: spec.b[i - 1]  # noqa: E731
    g1, g2 = spec.gs
    return F, N, spec.m, mu, b, g1, g2


def form1(spec: ProblemSpec, chi: MFunc, a, b, c1, c2) -> SolutionTuple:
    F, *_, g1, g2 = _setup(spec)
    a, b, c1, c2 = (F.canon(v) for v in (a, b, c1, c2))
    return SolutionTuple(
        f=chi.scale(F.mul(a, b)),
        g=chi.scale(b) - g1.scale(c1) - g2.scale(c2),
        h=chi.scale(a),
        hs=(chi.scale(F.mul(a, c1)), chi.scale(F.mul(a, c2))),
    )


def form2(spec: ProblemSpec, a, b, c, d, c2) -> SolutionTuple:
    F, N, m, mu, bb, g1, g2 = _setup(spec)
    if N != 2:
        raise WrongBlockShape("form 2 needs N = 2")
    a, b, c, d, c2 = (F.canon(v) for v in (a, b, c, d, c2))
    dc = F.sub(d, c)
    return SolutionTuple(
        f=mu(1).scale(F.mul(dc, F.mul(b, bb(1)))) - mu(2).scale(F.mul(dc, F.mul(a, bb(2)))),
        g=mu(1).scale(F.mul(d, bb(1))) + mu(2).scale(F.mul(c, bb(2))) + g2.scale(c2),
        h=mu(2).scale(a) + mu(1).scale(b),
        hs=(
            -(mu(2).scale(F.mul(d, a)) + mu(1).scale(F.mul(c, b))),
            -(mu(2).scale(F.mul(c2, a)) + mu(1).scale(F.mul(c2, b))),
        ),
    )


def form3(spec: ProblemSpec, k: int, a, c, d, c2, *, printed: bool = False) -> SolutionTuple:
    F, N, m, mu, bb, g1, g2 = _setup(spec)
    if N < 3:
        raise WrongBlockShape("form 3 needs N >= 3")
    if not 1 <= k <= N:
        raise IndexOutOfRange(f"k = {k} not in [1, {N}]")
    a, c, d, c2 = (F.canon(v) for v in (a, c, d, c2))
    cd = F.sub(c, d)
    h2 = mu(k).scale(F.neg(c2)) if printed else mu(k).scale(F.neg(F.mul(c2, a)))
    return SolutionTuple(
        f=mu(k).scale(F.mul(a, F.mul(cd, bb(k)))),
        g=g1.scale(d) + mu(k).scale(F.mul(cd, bb(k))) + g2.scale(c2),
        h=mu(k).scale(a),
        hs=(mu(k).scale(F.neg(F.mul(d, a))), h2),
    )


def form4(spec: ProblemSpec, a, b, c, d, c1) -> SolutionTuple:
    F, N, m, mu, bb, g1, g2 = _setup(spec)
    if m - N != 2:
        raise WrongBlockShape("form 4 needs m - N = 2")
    a, b, c, d, c1 = (F.canon(v) for v in (a, b, c, d, c1))
    dc = F.sub(d, c)
    lo = N + 1
    return SolutionTuple(
        f=mu(lo).scale(F.mul(dc, F.mul(b, bb(lo)))) - mu(m).scale(F.mul(dc, F.mul(a, bb(m)))),
        g=mu(lo).scale(F.mul(d, bb(lo))) + mu(m).scale(F.mul(c, bb(m))) + g1.scale(c1),
        h=mu(m).scale(a) + mu(lo).scale(b),
        hs=(
            -(mu(m).scale(F.mul(c1, a)) + mu(lo).scale(F.mul(c1, b))),
            -(mu(m).scale(F.mul(d, a)) + mu(lo).scale(F.mul(c, b))),
        ),
    )


def form5(spec: ProblemSpec, k: int, a, c, d, c1, *, printed: bool = False) -> SolutionTuple:
    F, N, m, mu, bb, g1, g2 = _setup(spec)
    if m - N < 3:
        raise WrongBlockShape("form 5 needs m - N >= 3")
    if not N + 1 <= k <= m:
        raise IndexOutOfRange(f"k = {k} not in [{N + 1}, {m}]")
    a, c, d, c1 = (F.canon(v) for v in (a, c, d, c1))
    cd = F.sub(c, d)
    h1 = mu(k).scale(F.neg(c1)) if printed else mu(k).scale(F.neg(F.mul(c1, a)))
    return SolutionTuple(
        f=mu(k).scale(F.mul(a, F.mul(cd, bb(k)))),
        g=g2.scale(d) + mu(k).scale(F.mul(cd, bb(k))) + g1.scale(c1),
        h=mu(k).scale(a),
        hs=(h1, mu(k).scale(F.neg(F.mul(d, a)))),
    )


def form6(spec: ProblemSpec, h: MFunc, c1, c2) -> SolutionTuple:
    F, *_, g1, g2 = _setup(spec)
    c1, c2 = F.canon(c1), F.canon(c2)
    return SolutionTuple(
        f=spec.zero(),
        g=g1.scale(c1) + g2.scale(c2),
        h=h,
        hs=(h.scale(F.neg(c1)), h.scale(F.neg(c2))),
    )


def form7(spec: ProblemSpec, g: MFunc) -> SolutionTuple:
    _setup(spec)
    z = spec.zero()
    return SolutionTuple(f=z, g=g, h=z, hs=(z, z))
