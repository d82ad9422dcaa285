"""Exact scalars: cyclotomic numbers and rational functions of the parameters."""

from fractions import Fraction

from .cyclotomic import Cyclotomic, cyclotomic_poly, root_of_unity, zeta
from .poly import Poly, poly_gcd, var_key
from .symbolic import (
    SpecializationConflict,
    SymbolicScalar,
    as_symbolic,
    const,
    format_scalar,
    is_zero,
    parse_scalar,
    sym,
)

__all__ = [
    "Cyclotomic",
    "Fraction",
    "Poly",
    "SpecializationConflict",
    "SymbolicScalar",
    "as_symbolic",
    "const",
    "cyclotomic_poly",
    "format_scalar",
    "gamma_vector",
    "inner_product",
    "is_zero",
    "parse_scalar",
    "poly_gcd",
    "root_of_unity",
    "sym",
    "symbol_vector",
    "var_key",
    "zeta",
]


def symbol_vector(prefix: str, d: int) -> tuple:
    """(prefix1, ..., prefixd) as indeterminates."""
    return tuple(sym(f"{prefix}{i + 1}") for i in range(d))


def gamma_vector(d: int) -> tuple:
    """The generic vector gamma = (g1, ..., gd)."""
    return symbol_vector("g", d)


def inner_product(vec, m) -> SymbolicScalar:
    """sum_i vec_i * m_i for a scalar vector and an integer (or scalar) vector."""
    if len(vec) != len(m):
        raise ValueError(f"dimension mismatch: {len(vec)} != {len(m)}")
    total = as_symbolic(0)
    for v, k in zip(vec, m):
        if k:
            total = total + v * (Fraction(k) if isinstance(k, int) else k)
    return total
