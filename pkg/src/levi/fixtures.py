"""Bundled fixture monoids and problem specs.

``SL2``/``SL3`` are the meet-semilattices on 2 and 3 points, ``NA24`` is
``SL2 x S3`` and ``V4`` is the Klein four-group ``C2 x C2``.  :func:`build_spec` constructs a fixture from scratch;
:func:`load_spec` reads the copy shipped in ``levi/data`` (kept in sync by
``python -m levi.fixtures``).
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .funcspace import MFunc, enumerate_multiplicative, product_functions
from .monoid import FiniteMonoid, cyclic, direct_product, meet_semilattice, subset_of, symmetric3
from .problem import ProblemSpec
from .scalar import GF, QQ, Field


def SL2() -> FiniteMonoid:
    return meet_semilattice(2)


def SL3() -> FiniteMonoid:
    return meet_semilattice(3)


def NA24() -> FiniteMonoid:
    return direct_product(SL2(), symmetric3())


def V4() -> FiniteMonoid:
    return direct_product(cyclic(2), cyclic(2))


MONOIDS = {"sl2": SL2, "sl3": SL3, "na24": NA24, "v4": V4}


def filter_indicators(k: int, field: Field) -> list[MFunc]:
    """Indicators of the principal filters ``{T : T >= S}`` of ``meet_semilattice(k)``.

    These are all the nonzero multiplicative functions of the semilattice
    over any field; returned in lexicographic value order.
    """
    M = meet_semilattice(k)
    subsets = [subset_of(k, x) for x in range(M.size)]
    out = []
    for S in subsets:
        out.append(MFunc(M, field, [1 if S <= T else 0 for T in subsets]))
    return sorted(out, key=lambda fn: tuple(int(v) for v in fn.values))


def na24_multiplicative(field: Field) -> list[MFunc]:
    """Nonzero multiplicative functions of ``SL2 x S3`` as products of factor functions."""
    A, B, P = SL2(), symmetric3(), NA24()
    left = filter_indicators(2, field)
    right = enumerate_multiplicative(B, field)
    funcs = [product_functions(A, B, P, fa, fb) for fa in left for fb in right]
    return sorted(funcs, key=lambda fn: tuple(int(v) for v in fn.values))


def _spec(monoid, field, partition, b, mu) -> ProblemSpec:
    return ProblemSpec(monoid, field, partition, b, mu)


def _sl(k, field, partition, b, skip_constant=True):
    mu = filter_indicators(k, field)
    if skip_constant:
        mu = [fn for fn in mu if not all(v == 1 for v in fn.values)]
    m = partition[-1][1]
    return _spec(meet_semilattice(k), field, partition, b, mu[:m])


SPECS = {
    # the completeness instances: every multiplicative function of SL2, b = 1
    "sl2_gf2": lambda: _sl(2, GF(2), [[1, 2], [3, 4]], [1] * 4, skip_constant=False),
    "sl2_gf3": lambda: _sl(2, GF(3), [[1, 2], [3, 4]], [1] * 4, skip_constant=False),
    "sl2_gf5": lambda: _sl(2, GF(5), [[1, 2], [3, 4]], [1, 2, 3, 4], skip_constant=False),
    "sl2_q": lambda: _sl(2, QQ, [[1, 2], [3, 4]], ["1", "-1/2", "3", "2/3"], skip_constant=False),
    "sl3_gf2": lambda: _sl(3, GF(2), [[1, 3], [4, 5]], [1] * 5),
    "sl3_gf3": lambda: _sl(3, GF(3), [[1, 3], [4, 5]], [1] * 5),
    "sl3_gf5": lambda: _sl(3, GF(5), [[1, 3], [4, 6]], [1, 2, 3, 4, 1, 2]),
    "sl3_gf5_pairs": lambda: _sl(3, GF(5), [[1, 2], [3, 4]], [2, 1, 4, 3]),
    "sl3_q": lambda: _sl(3, QQ, [[1, 3], [4, 6]], ["1", "2", "-1/3", "5/2", "-1", "3/4"]),
    # Klein four-group: a group instance with all four characters
    "v4_gf3": lambda: _spec(V4(), GF(3), [[1, 2], [3, 4]], [1, 2, 1, 1], enumerate_multiplicative(V4(), GF(3))),
    "na24_gf2": lambda: _spec(NA24(), GF(2), [[1, 2], [3, 4]], [1] * 4, na24_multiplicative(GF(2))[:4]),
    "na24_gf3": lambda: _spec(NA24(), GF(3), [[1, 2], [3, 4]], [1, 2, 2, 1], na24_multiplicative(GF(3))[:4]),
}


def build_spec(name: str) -> ProblemSpec:
    return SPECS[name]()


def load_spec(name: str) -> ProblemSpec:
    text = resources.files("levi").joinpath("data", f"spec_{name}.json").read_text()
    return ProblemSpec.from_json(json.loads(text))


def load_monoid(name: str) -> FiniteMonoid:
    text = resources.files("levi").joinpath("data", f"monoid_{name}.json").read_text()
    return FiniteMonoid.from_json(json.loads(text), name=name)


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def write_fixtures(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, build in MONOIDS.items():
        path = directory / f"monoid_{name}.json"
        path.write_text(dump(build().to_json()))
        written.append(path)
    for name, build in SPECS.items():
        path = directory / f"spec_{name}.json"
        path.write_text(dump(build().to_json()))
        written.append(path)
    return written


if __name__ == "__main__":
    for p in write_fixtures(Path(__file__).parent / "data"):
        print(p)
