import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levi.classify import InternalCaseExhaustion, NotASolution, classify
from levi.families import (
    ChiCollidesWithMu,
    DegenerateParams,
    DependentPair,
    Family,
    NotMultiplicative,
    WrongBlockShape,
    ZeroH,
    ZeroParameter,
    classification_from_json,
    classification_to_json,
    gen_degenerate,
    gen_dependent_pair,
    gen_dependent_single,
    gen_independent,
    gen_trivial,
)
from levi.fixtures import filter_indicators
from levi.funcspace import MFunc, linear_combination
from levi.monoid import meet_semilattice
from levi.problem import (
    DomainMismatch,
    IndexOutOfRange,
    ProblemSpec,
    SolutionTuple,
    SpecError,
    g_component,
    j_of,
    residual,
    zero_tuple,
)
from levi.scalar import GF, QQ


def sl2_spec(F, b=(1, 1, 1, 1)):
    mus = filter_indicators(2, F)
    return ProblemSpec(meet_semilattice(2), F, [[1, 2], [3, 4]], b, mus)


def sl3_proper(F, partition, b=None):
    mus = [fn for fn in filter_indicators(3, F) if not all(v == 1 for v in fn.values)]
    m = partition[-1][1]
    return ProblemSpec(meet_semilattice(3), F, partition, b or [1] * m, mus[:m])


# ProblemSpec ----------------------------------------------------------------------


def test_spec_validation():
    F = GF(3)
    mus = filter_indicators(2, F)
    M = meet_semilattice(2)
    with pytest.raises(SpecError):
        ProblemSpec(M, F, [[1, 4]], [1] * 4, mus)
    with pytest.raises(SpecError):
        ProblemSpec(M, F, [[1, 1], [2, 4]], [1] * 4, mus)
    with pytest.raises(SpecError):
        ProblemSpec(M, F, [[1, 2], [4, 5]], [1] * 4, mus)
    with pytest.raises(SpecError):
        ProblemSpec(M, F, [[1, 2], [3, 4]], [1, 0, 1, 1], mus)
    with pytest.raises(SpecError):
        ProblemSpec(M, F, [[1, 2], [3, 4]], [1] * 4, [mus[0], mus[0], mus[1], mus[2]])
    with pytest.raises(SpecError):
        ProblemSpec(M, F, [[1, 2], [3, 4]], [1] * 4, [mus[0], mus[1], mus[2], MFunc(M, F, [1, 2, 0, 0])])
    with pytest.raises(SpecError):
        ProblemSpec(M, F, [[1, 2], [3, 4]], [1] * 4, mus[:3] + [MFunc.zero(M, F)])


def test_j_of():
    spec = sl2_spec(GF(2))
    assert j_of(spec, 2) == 1
    assert j_of(spec, 3) == 2
    assert j_of(sl3_proper(GF(2), [[1, 3], [4, 5]]), 1) == 1
    with pytest.raises(IndexOutOfRange):
        j_of(spec, 5)
    # J^{-1}(k) is exactly block k
    for j in (1, 2):
        assert [i for i in range(1, 5) if j_of(spec, i) == j] == list(spec.block(j))


def test_g_component():
    spec = sl2_spec(GF(2))
    mu = spec.mu
    assert g_component(spec, 1) == mu[0] + mu[1]
    assert g_component(spec, 2)[spec.monoid.identity] == 0
    total = g_component(spec, 1) + g_component(spec, 2)
    assert total == linear_combination(spec.b, list(spec.mu))
    with pytest.raises(IndexOutOfRange):
        g_component(spec, 3)


def test_spec_json_roundtrip(specs):
    for name in ("sl2_q", "sl3_gf5", "na24_gf3"):
        spec = specs(name)
        again = ProblemSpec.from_json(spec.to_json())
        assert again.to_json() == spec.to_json()
        assert again.digest() == spec.digest()


# residual ---------------------------------------------------------------------------


def test_residual_zero_and_trivial():
    spec = sl2_spec(GF(3))
    assert residual(spec, zero_tuple(spec)) == []
    g = MFunc(spec.monoid, spec.field, [2, 0, 1, 1])
    assert residual(spec, gen_trivial(spec, g)) == []


def test_residual_locates_perturbation():
    F = GF(2)
    spec = sl3_proper(F, [[1, 2], [3, 4]])
    chi = MFunc.constant(spec.monoid, F, 1)
    t = gen_independent(spec, chi, 1, 1, [1, 0])
    assert residual(spec, t) == []
    z = 5
    bumped = list(t.f.values)
    bumped[z] ^= 1
    bad = SolutionTuple(MFunc(spec.monoid, F, bumped), t.g, t.h, t.hs)
    pairs = {(x, y) for x, y, _ in residual(spec, bad)}
    M = spec.monoid
    assert pairs == {(x, y) for x in range(8) for y in range(8) if M.table[x][y] == z}


def test_residual_domain_mismatch():
    spec = sl2_spec(GF(3))
    other = sl2_spec(GF(5))
    with pytest.raises(DomainMismatch):
        residual(spec, zero_tuple(other))


# generators -------------------------------------------------------------------------


def test_independent_examples():
    F = GF(2)
    spec = sl3_proper(F, [[1, 2], [3, 4]])
    chi = MFunc.constant(spec.monoid, F, 1)
    t = gen_independent(spec, chi, 1, 1, [1, 0])
    assert t.hs[0] == chi and t.hs[1].is_zero()
    assert t.g == chi - g_component(spec, 1)
    assert residual(spec, t) == []

    F5 = GF(5)
    spec5 = sl3_proper(F5, [[1, 2], [3, 4]])
    chi5 = MFunc.constant(spec5.monoid, F5, 1)
    t = gen_independent(spec5, chi5, 1, 1, [0, 0])
    assert t.f == t.g == t.h == chi5
    assert residual(spec5, t) == []
    t = gen_independent(spec5, chi5, 3, 4, [2, 1])
    assert t.f[spec5.monoid.identity] == 2  # ab = 12 = 2 mod 5


def test_independent_errors():
    spec = sl3_proper(GF(3), [[1, 2], [3, 4]])
    chi = MFunc.constant(spec.monoid, GF(3), 1)
    with pytest.raises(ChiCollidesWithMu):
        gen_independent(spec, spec.mu[0], 1, 1, [0, 0])
    with pytest.raises(ZeroParameter):
        gen_independent(spec, chi, 0, 1, [0, 0])
    with pytest.raises(NotMultiplicative):
        gen_independent(spec, MFunc(spec.monoid, GF(3), [1, 2, 0, 0, 0, 0, 0, 0]), 1, 1, [0, 0])


def test_dependent_pair_examples():
    spec = sl2_spec(QQ)
    mu1, mu2 = spec.mu[0], spec.mu[1]
    t = gen_dependent_pair(spec, 1, 1, 0, 0, 1, [0])
    assert t.f == -mu2
    assert t.g == mu1
    assert t.h == mu2
    assert t.hs[0] == -mu2 and t.hs[1].is_zero()
    assert residual(spec, t) == []

    t = gen_dependent_pair(spec, 1, 0, 1, 1, 0, {2: 0})
    assert t.f == -mu1
    assert residual(spec, t) == []

    with pytest.raises(DegenerateParams):
        gen_dependent_pair(spec, 1, 1, 0, 1, 1, [0])
    with pytest.raises(DegenerateParams):
        gen_dependent_pair(spec, 1, 0, 0, 0, 1, [0])


def test_dependent_pair_wrong_shape():
    spec = sl3_proper(GF(3), [[1, 3], [4, 5]])
    with pytest.raises(WrongBlockShape):
        gen_dependent_pair(spec, 1, 1, 0, 0, 1, [0])


def test_dependent_single_examples():
    F = GF(3)
    spec = sl3_proper(F, [[1, 3], [4, 5]])
    t = gen_dependent_single(spec, 1, 2, 1, 1, 0, [1])
    assert residual(spec, t) == []

    # the printed h_j = -c_j mu_k breaks the equation once a != 1
    t = gen_dependent_single(spec, 1, 2, 2, 1, 0, [1])
    assert residual(spec, t) == []
    printed = SolutionTuple(t.f, t.g, t.h, (t.hs[0], spec.mu_(2).scale(F.neg(1))))
    assert residual(spec, printed)

    with pytest.raises(DegenerateParams):
        gen_dependent_single(spec, 1, 2, 0, 1, 0, [1])
    with pytest.raises(DegenerateParams):
        gen_dependent_single(spec, 1, 2, 1, 1, 1, [1])
    with pytest.raises(IndexOutOfRange):
        gen_dependent_single(spec, 1, 4, 1, 1, 0, [1])
    with pytest.raises(WrongBlockShape):
        gen_dependent_single(spec, 2, 4, 1, 1, 0, [1])


def test_degenerate_examples():
    spec = sl2_spec(GF(2))
    h = MFunc(spec.monoid, GF(2), [0, 1, 1, 0])
    t = gen_degenerate(spec, h, [0, 0])
    assert t.f.is_zero() and t.g.is_zero() and all(hj.is_zero() for hj in t.hs)
    assert residual(spec, t) == []

    mu1 = spec.mu[0]
    t = gen_degenerate(spec, mu1, [1, 1])
    assert t.g == g_component(spec, 1) + g_component(spec, 2)
    assert t.hs == (mu1, mu1)
    assert residual(spec, t) == []

    with pytest.raises(ZeroH):
        gen_degenerate(spec, spec.zero(), [1, 1])


def test_trivial_with_non_multiplicative_g():
    spec = sl2_spec(GF(5))
    g = MFunc(spec.monoid, GF(5), [3, 1, 4, 1])
    assert residual(spec, gen_trivial(spec, g)) == []


# hypothesis soundness over random parameters -------------------------------------------

SPEC_NAMES = ["sl2_gf3", "sl2_gf5", "sl3_gf2", "sl3_gf3", "sl3_gf5", "sl3_gf5_pairs", "v4_gf3", "na24_gf3"]


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(SPEC_NAMES), st.data())
def test_generators_are_sound(specs, name, data):
    spec = specs(name)
    F = spec.field
    p, n, N = F.p, spec.n, spec.monoid.size
    k_ = st.integers(0, p - 1)
    kstar = st.integers(1, p - 1)
    fam = data.draw(st.sampled_from(list(Family)))
    if fam is Family.DEGENERATE:
        h = data.draw(st.lists(k_, min_size=N, max_size=N).filter(any))
        t = gen_degenerate(spec, MFunc(spec.monoid, F, h), data.draw(st.lists(k_, min_size=n, max_size=n)))
    elif fam is Family.TRIVIAL:
        t = gen_trivial(spec, MFunc(spec.monoid, F, data.draw(st.lists(k_, min_size=N, max_size=N))))
    else:
        qs = [q for q in range(1, n + 1) if (len(spec.block(q)) == 2) == (fam is Family.DEPENDENT_PAIR)]
        if fam is Family.INDEPENDENT or not qs:
            chi = MFunc.constant(spec.monoid, F, 1)
            if chi in spec.mu:
                return
            c = data.draw(st.lists(k_, min_size=n, max_size=n))
            t = gen_independent(spec, chi, data.draw(kstar), data.draw(kstar), c)
        else:
            q = data.draw(st.sampled_from(qs))
            c, d = data.draw(st.lists(k_, min_size=2, max_size=2, unique=True))
            cj = data.draw(st.lists(k_, min_size=n - 1, max_size=n - 1))
            if fam is Family.DEPENDENT_PAIR:
                a, b = data.draw(st.tuples(k_, k_).filter(any))
                t = gen_dependent_pair(spec, q, a, b, c, d, cj)
            else:
                k = data.draw(st.sampled_from(list(spec.block(q))))
                t = gen_dependent_single(spec, q, k, data.draw(kstar), c, d, cj)
    assert residual(spec, t) == []
    # setting y = e in the equation: f = h(e) g + sum h_j(e) g_j
    e = spec.monoid.identity
    rhs = linear_combination([t.h[e], *(hj[e] for hj in t.hs)], [t.g, *spec.gs])
    assert t.f == rhs


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(max_denominator=7).filter(lambda q: abs(q) < 20), min_size=6, max_size=6))
def test_sound_over_rationals(specs, vals):
    spec = specs("sl3_q")
    a, b, c, d, c2, k_off = vals
    if c == d or a == 0:
        return
    k = 1 + int(abs(k_off)) % 3
    t = gen_dependent_single(spec, 1, k, a, c, d, [c2])
    assert residual(spec, t) == []
    chi = [fn for fn in filter_indicators(3, QQ) if fn not in spec.mu][0]
    if b:
        assert residual(spec, gen_independent(spec, chi, a, b, [c, d])) == []


# classify ------------------------------------------------------------------------------


def test_classify_trivial_and_not_a_solution():
    spec = sl2_spec(GF(3))
    assert classify(spec, zero_tuple(spec)).family is Family.TRIVIAL
    bad = zero_tuple(spec)
    bad = SolutionTuple(MFunc.constant(spec.monoid, GF(3), 1), bad.g, bad.h, bad.hs)
    with pytest.raises(NotASolution):
        classify(spec, bad)


def test_classify_recovers_parameters():
    F = GF(3)
    spec = sl3_proper(F, [[1, 3], [4, 5]])
    chi = MFunc.constant(spec.monoid, F, 1)
    cl = classify(spec, gen_independent(spec, chi, 2, 1, [1, 2]))
    assert cl.family is Family.INDEPENDENT
    assert cl.chi == chi and (cl.a, cl.b, cl.c) == (2, 1, (1, 2))

    cl = classify(spec, gen_dependent_single(spec, 1, 3, 2, 0, 1, [2]))
    assert cl.family is Family.DEPENDENT_SINGLE
    assert (cl.q, cl.k, cl.a, cl.c, cl.d, dict(cl.cj)) == (1, 3, 2, 0, 1, {2: 2})

    cl = classify(spec, gen_dependent_pair(spec, 2, 1, 2, 0, 2, [1]))
    assert cl.family is Family.DEPENDENT_PAIR
    assert (cl.q, cl.a, cl.b, cl.c, cl.d, dict(cl.cj)) == (2, 1, 2, 0, 2, {1: 1})

    h = MFunc(spec.monoid, F, [0, 0, 2, 1, 0, 0, 0, 0])
    cl = classify(spec, gen_degenerate(spec, h, [2, 1]))
    assert cl.family is Family.DEGENERATE and cl.c == (2, 1)


def test_classify_rationals_roundtrip(specs):
    spec = specs("sl2_q")
    t = gen_dependent_pair(spec, 2, Fraction(1, 3), -2, 5, Fraction(-1, 2), [Fraction(7, 3)])
    cl = classify(spec, t)
    assert cl.family is Family.DEPENDENT_PAIR
    assert cl.generate(spec) == t


def test_classification_json_roundtrip():
    F = GF(5)
    spec = sl3_proper(F, [[1, 3], [4, 6]])
    chi = [fn for fn in filter_indicators(3, F) if fn not in spec.mu][0]
    tuples = [
        gen_independent(spec, chi, 2, 3, [1, 4]),
        gen_dependent_single(spec, 2, 5, 4, 1, 3, [2]),
        gen_degenerate(spec, spec.mu[0], [3, 3]),
        gen_trivial(spec, spec.mu[1]),
    ]
    for t in tuples:
        cl = classify(spec, t)
        again = classification_from_json(classification_to_json(cl, spec), spec)
        assert again.generate(spec) == t


def test_classify_reports_exhaustion_verbatim(monkeypatch):
    spec = sl2_spec(GF(3))
    t = gen_dependent_pair(spec, 1, 1, 1, 0, 1, [2])
    mod = sys.modules["levi.classify"]
    monkeypatch.setattr(mod, "_classify", lambda s, tt: DependentPair(1, 1, 1, 0, 2, {2: 2}))
    with pytest.raises(InternalCaseExhaustion) as info:
        classify(spec, t)
    assert str(t.to_json()) in str(info.value)
