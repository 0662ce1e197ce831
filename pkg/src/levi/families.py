"""The five solution families and their generators.

=====================  =============================================
``Independent``        f = ab chi, chi a new multiplicative function
``DependentPair``      f in span(mu), one mixed block q of size 2
``DependentSingle``    f in span(mu), one mixed block q of size >= 3
``DegenerateNonzeroH`` f = 0, h != 0
``Trivial``            f = 0, h = h_j = 0, g arbitrary
=====================  =============================================

In ``DependentSingle`` the functions ``h_j`` (j != q) are ``-a c_j mu_k``.
Dropping the factor ``a`` only agrees with the equation when ``a = 1`` or
``c_j = 0`` (see ``levi.nequals2``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import ClassVar, Mapping, Sequence, Union

from .funcspace import MFunc, is_multiplicative
from .problem import IndexOutOfRange, LeviError, ProblemSpec, SolutionTuple, sum_g
from .scalar import Raw


class Family(str, enum.Enum):
    INDEPENDENT = "Independent"
    DEPENDENT_PAIR = "DependentPair"
    DEPENDENT_SINGLE = "DependentSingle"
    DEGENERATE = "DegenerateNonzeroH"
    TRIVIAL = "Trivial"


class ChiCollidesWithMu(LeviError):
    pass


class NotMultiplicative(LeviError):
    pass


class ZeroParameter(LeviError):
    pass


class WrongBlockShape(LeviError):
    pass


class DegenerateParams(LeviError):
    pass


class ZeroH(LeviError):
    pass


def _cj_map(spec: ProblemSpec, q: int, cj) -> dict[int, Raw]:
    """Normalise ``c_j`` for ``j != q``: a mapping keyed by block number, or a
    sequence listing the values in increasing ``j``."""
    others = [j for j in range(1, spec.n + 1) if j != q]
    if isinstance(cj, Mapping):
        keys = {int(j) for j in cj}
        if keys != set(others):
            raise LeviError(f"c_j must be given exactly for j in {others}, got {sorted(keys)}")
        return {j: spec.field.canon(cj[j] if j in cj else cj[str(j)]) for j in others}
    cj = list(cj)
    if len(cj) != len(others):
        raise LeviError(f"expected {len(others)} values c_j, got {len(cj)}")
    return {j: spec.field.canon(v) for j, v in zip(others, cj)}


def _check_q(spec: ProblemSpec, q: int) -> None:
    if not 1 <= q <= spec.n:
        raise IndexOutOfRange(f"block {q} not in [1, {spec.n}]")


# generators ----------------------------------------------------------------


def gen_independent(spec: ProblemSpec, chi: MFunc, a, b, c: Sequence) -> SolutionTuple:
    """``f = ab chi, g = b chi - sum c_k g_k, h = a chi, h_j = a c_j chi``."""
    F = spec.field
    a, b = F.canon(a), F.canon(b)
    c = [F.canon(v) for v in c]
    if len(c) != spec.n:
        raise LeviError(f"expected {spec.n} values c_j, got {len(c)}")
    if not a or not b:
        raise ZeroParameter("a and b must be nonzero")
    if chi.is_zero() or not is_multiplicative(chi):
        raise NotMultiplicative("chi must be a nonzero multiplicative function")
    if chi in spec.mu:
        raise ChiCollidesWithMu("chi coincides with one of the mu_i")
    h = chi.scale(a)
    return SolutionTuple(
        f=h.scale(b),
        g=chi.scale(b) - sum_g(spec, c),
        h=h,
        hs=tuple(h.scale(cj) for cj in c),
    )


def gen_dependent_pair(spec: ProblemSpec, q: int, a, b, c, d, cj) -> SolutionTuple:
    """Block ``q = [s, k]`` of size two.

    ``f = (d-c)(b b_s mu_s - a b_k mu_k)``, ``g = d b_s mu_s + c b_k mu_k + sum c_j g_j``,
    ``h = a mu_k + b mu_s``, ``h_q = -d a mu_k - c b mu_s``, ``h_j = -c_j h``.
    """
    F = spec.field
    _check_q(spec, q)
    blk = spec.block(q)
    if len(blk) != 2:
        raise WrongBlockShape(f"block {q} has {len(blk)} terms; this family needs exactly 2")
    a, b, c, d = (F.canon(v) for v in (a, b, c, d))
    cj = _cj_map(spec, q, cj)
    if c == d:
        raise DegenerateParams("c must differ from d")
    if not a and not b:
        raise DegenerateParams("(a, b) must not be (0, 0)")
    s, k = blk
    mus, muk = spec.mu_(s), spec.mu_(k)
    bs, bk = spec.b_(s), spec.b_(k)
    mul, sub = F.mul, F.sub
    coeffs = [cj.get(j, 0) for j in range(1, spec.n + 1)]
    h = muk.scale(a) + mus.scale(b)
    hs = []
    for j in range(1, spec.n + 1):
        if j == q:
            hs.append(-(muk.scale(mul(d, a)) + mus.scale(mul(c, b))))
        else:
            hs.append(h.scale(F.neg(cj[j])))
    return SolutionTuple(
        f=mus.scale(mul(sub(d, c), mul(b, bs))) - muk.scale(mul(sub(d, c), mul(a, bk))),
        g=mus.scale(mul(d, bs)) + muk.scale(mul(c, bk)) + sum_g(spec, coeffs),
        h=h,
        hs=tuple(hs),
    )


def gen_dependent_single(spec: ProblemSpec, q: int, k: int, a, c, d, cj) -> SolutionTuple:
    """Block ``q`` with at least three terms, distinguished index ``k`` in it.

    ``f = a(c-d) b_k mu_k``, ``g = d g_q + (c-d) b_k mu_k + sum c_j g_j``,
    ``h = a mu_k``, ``h_q = -d a mu_k``, ``h_j = -a c_j mu_k``.
    """
    F = spec.field
    _check_q(spec, q)
    blk = spec.block(q)
    if len(blk) < 3:
        raise WrongBlockShape(f"block {q} has {len(blk)} terms; this family needs at least 3")
    if k not in blk:
        raise IndexOutOfRange(f"k = {k} is not in block {q} = [{blk[0]},{blk[-1]}]")
    a, c, d = (F.canon(v) for v in (a, c, d))
    cj = _cj_map(spec, q, cj)
    if not a:
        raise DegenerateParams("a must be nonzero")
    if c == d:
        raise DegenerateParams("c must differ from d")
    muk, bk = spec.mu_(k), spec.b_(k)
    mul, sub = F.mul, F.sub
    coeffs = [d if j == q else cj[j] for j in range(1, spec.n + 1)]
    h = muk.scale(a)
    hs = tuple(
        h.scale(F.neg(d)) if j == q else h.scale(F.neg(cj[j])) for j in range(1, spec.n + 1)
    )
    return SolutionTuple(
        f=muk.scale(mul(a, mul(sub(c, d), bk))),
        g=sum_g(spec, coeffs) + muk.scale(mul(sub(c, d), bk)),
        h=h,
        hs=hs,
    )


def gen_degenerate(spec: ProblemSpec, h: MFunc, c: Sequence) -> SolutionTuple:
    """``f = 0, g = sum c_k g_k, h`` any nonzero function, ``h_j = -c_j h``."""
    F = spec.field
    c = [F.canon(v) for v in c]
    if len(c) != spec.n:
        raise LeviError(f"expected {spec.n} values c_j, got {len(c)}")
    if h.is_zero():
        raise ZeroH("h must be a nonzero function")
    return SolutionTuple(
        f=spec.zero(),
        g=sum_g(spec, c),
        h=h,
        hs=tuple(h.scale(F.neg(cj)) for cj in c),
    )


def gen_trivial(spec: ProblemSpec, g: MFunc) -> SolutionTuple:
    """``f = 0``, ``g`` arbitrary, ``h = h_j = 0``."""
    z = spec.zero()
    return SolutionTuple(f=z, g=g, h=z, hs=(z,) * spec.n)


# classification records ------------------------------------------------------


def _enc(spec, v):
    return spec.field.encode(v)


@dataclass(frozen=True)
class Independent:
    chi: MFunc
    a: Raw
    b: Raw
    c: tuple[Raw, ...]
    family: ClassVar[Family] = Family.INDEPENDENT

    def __post_init__(self):
        if not self.a or not self.b:
            raise ZeroParameter("a and b must be nonzero")

    def generate(self, spec: ProblemSpec) -> SolutionTuple:
        return gen_independent(spec, self.chi, self.a, self.b, self.c)

    def params_json(self, spec):
        return {
            "chi": self.chi.to_json()["values"],
            "a": _enc(spec, self.a),
            "b": _enc(spec, self.b),
            "c": [_enc(spec, v) for v in self.c],
        }


@dataclass(frozen=True)
class DependentPair:
    q: int
    a: Raw
    b: Raw
    c: Raw
    d: Raw
    cj: tuple[tuple[int, Raw], ...]
    coeffs: tuple[Raw, ...] | None = None
    family: ClassVar[Family] = Family.DEPENDENT_PAIR

    def __post_init__(self):
        object.__setattr__(self, "cj", _freeze_cj(self.cj))
        if self.c == self.d:
            raise DegenerateParams("c must differ from d")
        if not self.a and not self.b:
            raise DegenerateParams("(a, b) must not be (0, 0)")

    def generate(self, spec: ProblemSpec) -> SolutionTuple:
        return gen_dependent_pair(spec, self.q, self.a, self.b, self.c, self.d, dict(self.cj))

    def params_json(self, spec):
        out = {k: _enc(spec, getattr(self, k)) for k in ("a", "b", "c", "d")}
        out["q"] = self.q
        out["cj"] = {str(j): _enc(spec, v) for j, v in self.cj}
        if self.coeffs is not None:
            out["coeffs"] = [_enc(spec, v) for v in self.coeffs]
        return out


@dataclass(frozen=True)
class DependentSingle:
    q: int
    k: int
    a: Raw
    c: Raw
    d: Raw
    cj: tuple[tuple[int, Raw], ...]
    coeffs: tuple[Raw, ...] | None = None
    family: ClassVar[Family] = Family.DEPENDENT_SINGLE

    def __post_init__(self):
        object.__setattr__(self, "cj", _freeze_cj(self.cj))
        if not self.a:
            raise DegenerateParams("a must be nonzero")
        if self.c == self.d:
            raise DegenerateParams("c must differ from d")

    def generate(self, spec: ProblemSpec) -> SolutionTuple:
        return gen_dependent_single(spec, self.q, self.k, self.a, self.c, self.d, dict(self.cj))

    def params_json(self, spec):
        out = {k: _enc(spec, getattr(self, k)) for k in ("a", "c", "d")}
        out["q"] = self.q
        out["k"] = self.k
        out["cj"] = {str(j): _enc(spec, v) for j, v in self.cj}
        if self.coeffs is not None:
            out["coeffs"] = [_enc(spec, v) for v in self.coeffs]
        return out


@dataclass(frozen=True)
class DegenerateNonzeroH:
    c: tuple[Raw, ...]
    h: MFunc
    family: ClassVar[Family] = Family.DEGENERATE

    def __post_init__(self):
        if self.h.is_zero():
            raise ZeroH("h must be a nonzero function")

    def generate(self, spec: ProblemSpec) -> SolutionTuple:
        return gen_degenerate(spec, self.h, self.c)

    def params_json(self, spec):
        return {"c": [_enc(spec, v) for v in self.c], "h": self.h.to_json()["values"]}


@dataclass(frozen=True)
class Trivial:
    g: MFunc
    family: ClassVar[Family] = Family.TRIVIAL

    def generate(self, spec: ProblemSpec) -> SolutionTuple:
        return gen_trivial(spec, self.g)

    def params_json(self, spec):
        return {"g": self.g.to_json()["values"]}


Classification = Union[Independent, DependentPair, DependentSingle, DegenerateNonzeroH, Trivial]


def _freeze_cj(cj) -> tuple[tuple[int, Raw], ...]:
    if isinstance(cj, Mapping):
        cj = cj.items()
    return tuple(sorted((int(j), v) for j, v in cj))


def classification_to_json(cl: Classification, spec: ProblemSpec) -> dict:
    out = cl.params_json(spec)
    out["family"] = cl.family.value
    return out


def classification_from_json(obj: dict, spec: ProblemSpec) -> Classification:
    F, M = spec.field, spec.monoid
    fam = Family(obj["family"])
    canon = F.canon
    coeffs = tuple(canon(v) for v in obj["coeffs"]) if "coeffs" in obj else None
    if fam is Family.INDEPENDENT:
        return Independent(MFunc(M, F, obj["chi"]), canon(obj["a"]), canon(obj["b"]), tuple(canon(v) for v in obj["c"]))
    if fam is Family.DEPENDENT_PAIR:
        cj = {int(j): canon(v) for j, v in obj["cj"].items()}
        return DependentPair(int(obj["q"]), *(canon(obj[k]) for k in "abcd"), cj, coeffs)
    if fam is Family.DEPENDENT_SINGLE:
        cj = {int(j): canon(v) for j, v in obj["cj"].items()}
        return DependentSingle(int(obj["q"]), int(obj["k"]), *(canon(obj[k]) for k in "acd"), cj, coeffs)
    if fam is Family.DEGENERATE:
        return DegenerateNonzeroH(tuple(canon(v) for v in obj["c"]), MFunc(M, F, obj["h"]))
    return Trivial(MFunc(M, F, obj["g"]))
