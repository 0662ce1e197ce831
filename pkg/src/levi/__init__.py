"""Exact solver, generators and completeness oracle for the extended Levi-Civita equation on finite monoids."""

from .classify import InternalCaseExhaustion, NotASolution, classify
from .families import (
    Family,
    gen_degenerate,
    gen_dependent_pair,
    gen_dependent_single,
    gen_independent,
    gen_trivial,
)
from .funcspace import MFunc, enumerate_multiplicative, express_in_basis, is_multiplicative, rank
from .monoid import FiniteMonoid, build_catalog, is_abelian, validate_monoid
from .oracle import compare, solve_all
from .problem import ProblemSpec, SolutionTuple, g_component, j_of, residual
from .scalar import GF, QQ, Field, FieldScalar
from .sweep import sweep_families

__version__ = "0.1.0"
