"""The rational quantum torus in normal form.

A presentation is ``(d, z, orders)``: generators t_1..t_d where the pairs
(t_{2i-1}, t_{2i}) for i <= z commute up to a primitive k_i-th root of unity
and everything else commutes.  Lattice points are plain tuples of ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import prod

from .linalg import identity, matmul, zeros
from .scalars import Cyclotomic, root_of_unity


class PresentationError(ValueError):
    pass


def vadd(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a) -> tuple:
    return tuple(-x for x in a)


def vscale(c: int, a) -> tuple:
    return tuple(c * x for x in a)


@dataclass(frozen=True)
class TorusPresentation:
    d: int
    z: int = 0
    orders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(k) for k in self.orders))
        if self.d < 1:
            raise PresentationError("d must be a positive integer")
        if self.z < 0 or 2 * self.z > self.d:
            raise PresentationError(f"need 0 <= 2z <= d, got z={self.z}, d={self.d}")
        if len(self.orders) != self.z:
            raise PresentationError(f"expected {self.z} orders, got {len(self.orders)}")
        if any(k < 1 for k in self.orders):
            raise PresentationError("orders must be positive")
        for i in range(self.z - 1):
            if self.orders[i] % self.orders[i + 1]:
                raise PresentationError(
                    f"divisibility chain violated: k_{i + 2}={self.orders[i + 1]} does not divide k_{i + 1}={self.orders[i]}"
                )

    # -- derived data --------------------------------------------------------
    @cached_property
    def N(self) -> int:
        return prod(self.orders)

    @cached_property
    def L(self) -> int:
        return self.orders[0] if self.orders else 1

    @cached_property
    def steps(self) -> tuple:
        """Diagonal of the matrix B with R = B Z^d."""
        out = []
        for k in self.orders:
            out += [k, k]
        return tuple(out) + (1,) * (self.d - 2 * self.z)

    @cached_property
    def gamma_order(self) -> int:
        return prod(k * k for k in self.orders)

    def q(self, i: int) -> Cyclotomic:
        """q_i (1-based), a primitive k_i-th root of unity."""
        k = self.orders[i - 1]
        return root_of_unity(self.L, self.L // k)

    def to_dict(self) -> dict:
        return {"d": self.d, "z": self.z, "orders": list(self.orders)}

    # -- cocycle -------------------------------------------------------------
    def sigma_exponent(self, m, n) -> int:
        """e with sigma(m, n) = zeta_L^e."""
        self._check(m)
        self._check(n)
        e = 0
        for i, k in enumerate(self.orders):
            e += (self.L // k) * m[2 * i + 1] * n[2 * i]
        return e % self.L

    def sigma(self, m, n) -> Cyclotomic:
        return root_of_unity(self.L, self.sigma_exponent(m, n))

    def commutator_coeff(self, r, s):
        """sigma(r, s) - sigma(s, r)."""
        e1, e2 = self.sigma_exponent(r, s), self.sigma_exponent(s, r)
        if e1 == e2:
            return Fraction(0)
        return root_of_unity(self.L, e1) - root_of_unity(self.L, e2)

    # -- radical and grading group ---------------------------------------------
    def radical_basis(self) -> list:
        out = []
        for j, st in enumerate(self.steps):
            v = [0] * self.d
            v[j] = st
            out.append(tuple(v))
        return out

    def in_radical(self, m) -> bool:
        self._check(m)
        return all(x % st == 0 for x, st in zip(m, self.steps))

    def gamma_reduce(self, m) -> tuple:
        """(s, r) with s in Gamma_0, r in R and m = s + r."""
        self._check(m)
        s = tuple(x % st for x, st in zip(m, self.steps))
        return s, vsub(m, s)

    def red(self, m) -> tuple:
        return tuple(x % st for x, st in zip(m, self.steps))

    @cached_property
    def gamma_reps(self) -> tuple:
        """Gamma_0 in lexicographic order."""
        return tuple(product(*(range(st) for st in self.steps)))

    def to_R_coords(self, r) -> tuple:
        if not self.in_radical(r):
            raise ValueError(f"{r} is not in R")
        return tuple(x // st for x, st in zip(r, self.steps))

    def from_R_coords(self, a) -> tuple:
        return tuple(x * st for x, st in zip(a, self.steps))

    # -- monomials -------------------------------------------------------------
    def torus_mul(self, a: "TorusMonomial", b: "TorusMonomial") -> "TorusMonomial":
        return TorusMonomial(vadd(a.exponent, b.exponent), a.coefficient * b.coefficient * self.sigma(a.exponent, b.exponent))

    def matrix_realization(self, n) -> list:
        """X^n in M_N(C): the Kronecker product of the k_i x k_i blocks."""
        self._check(n)
        out = [[Fraction(1)]]
        for i, k in enumerate(self.orders):
            q = self.q(i + 1)
            clock = [[q ** j if a == j else Fraction(0) for a in range(k)] for j in range(k)]
            shift = [[Fraction(1) if a == (j + 1) % k else Fraction(0) for a in range(k)] for j in range(k)]
            block = matmul(_mpow(clock, n[2 * i] % k), _mpow(shift, n[2 * i + 1] % k))
            out = kron(out, block)
        return out

    def _check(self, m):
        if len(m) != self.d:
            raise ValueError(f"dimension mismatch: expected {self.d} entries, got {len(m)}")


@dataclass(frozen=True)
class TorusMonomial:
    exponent: tuple
    coefficient: object = field(default=Fraction(1))

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("torus monomial coefficient must be nonzero")


def _mpow(A, e: int):
    out = identity(len(A))
    for _ in range(e):
        out = matmul(out, A)
    return out


def kron(A, B) -> list:
    ra, ca = len(A), len(A[0])
    rb, cb = len(B), len(B[0])
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            a = A[i][j]
            if a == 0:
                continue
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k][j * cb + l] = a * B[k][l]
    return out
