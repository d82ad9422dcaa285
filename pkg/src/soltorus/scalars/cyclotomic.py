"""Exact arithmetic in cyclotomic fields Q(zeta_K).

An element is stored as its coefficient vector in the power basis
1, z, ..., z^(phi(K)-1) of Q(zeta_K), reduced modulo the K-th cyclotomic
polynomial, so that equality is coefficient equality.  Elements of different
orders are compared and combined inside Q(zeta_L), L = lcm of the orders.
Rational values are always stored with order 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = ["Cyclotomic", "cyclotomic_poly", "root_of_unity", "zeta"]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, low degree first, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dc in enumerate(den):
                num[i + j] -= c * dc
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(K: int) -> tuple[tuple[int, ...], ...]:
    """x^j mod Phi_K for 0 <= j < max(K, 2*phi(K) - 1)."""
    phi = _phi(K)
    cp = cyclotomic_poly(K)
    rows = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(max(K, 2 * phi - 1)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cp[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _ramanujan(K: int) -> tuple[Fraction, ...]:
    # trace of zeta_K^j over Q, divided by phi(K); used for hashing
    phi = _phi(K)
    out = []
    for j in range(phi):
        g = gcd(j, K)
        s = sum(_mobius(K // d) * d for d in range(1, g + 1) if g % d == 0)
        out.append(Fraction(s, phi))
    return tuple(out)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Cyclotomic:
    """Immutable element of Q(zeta_K)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if order < 1:
            raise ValueError("order must be positive")
        if len(coeffs) != _phi(order):
            raise ValueError(f"expected {_phi(order)} coefficients for order {order}")
        if order > 1 and not any(coeffs[1:]):
            order, coeffs = 1, coeffs[:1]
        self.order = order
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def rational(cls, value) -> "Cyclotomic":
        return cls(1, (_as_fraction(value),))

    @classmethod
    def _raw(cls, order, coeffs) -> "Cyclotomic":
        obj = object.__new__(cls)
        if order > 1 and not any(coeffs[1:]):
            order, coeffs = 1, coeffs[:1]
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # -- structure ---------------------------------------------------------
    def is_rational(self) -> bool:
        return self.order == 1

    def is_zero(self) -> bool:
        return self.order == 1 and self.coeffs[0] == 0

    def to_fraction(self) -> Fraction:
        if self.order != 1:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def lift(self, order: int) -> tuple[Fraction, ...]:
        """Coefficient vector of self inside Q(zeta_order)."""
        if order == self.order:
            return self.coeffs
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {order}")
        step = order // self.order
        table = _power_table(order)
        phi = _phi(order)
        out = [Fraction(0)] * phi
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[j * step]):
                    if t:
                        out[i] += c * t
        return tuple(out)

    def _common(self, other: "Cyclotomic"):
        if self.order == other.order:
            return self.order, self.coeffs, other.coeffs
        L = _lcm(self.order, other.order)
        return L, self.lift(L), other.lift(L)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == 1 and other.order == 1:
            return Cyclotomic._raw(1, (self.coeffs[0] + other.coeffs[0],))
        L, a, b = self._common(other)
        return Cyclotomic._raw(L, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == 1:
            c = self.coeffs[0]
            return Cyclotomic._raw(other.order, tuple(c * x for x in other.coeffs))
        if other.order == 1:
            c = other.coeffs[0]
            return Cyclotomic._raw(self.order, tuple(c * x for x in self.coeffs))
        L, a, b = self._common(other)
        phi = _phi(L)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        table = _power_table(L)
        for t in range(phi, 2 * phi - 1):
            c = conv[t]
            if c:
                for i, r in enumerate(table[t]):
                    if r:
                        out[i] += c * r
        return Cyclotomic._raw(L, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.order == 1:
            return Cyclotomic._raw(1, (1 / self.coeffs[0],))
        K = self.order
        phi = _phi(K)
        # columns: self * zeta^j
        cols = [(self * Cyclotomic._raw(K, _unit(phi, j))).lift(K) for j in range(phi)]
        aug = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            p = next(r for r in range(c, phi) if aug[r][c] != 0)
            aug[c], aug[p] = aug[p], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [v * inv for v in aug[c]]
            for r in range(phi):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
        return Cyclotomic._raw(K, tuple(aug[i][phi] for i in range(phi)))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        _, a, b = self._common(other)
        return a == b

    def __hash__(self):
        if self._hash is None:
            if self.order == 1:
                self._hash = hash(self.coeffs[0])
            else:
                tr = sum((c * t for c, t in zip(self.coeffs, _ramanujan(self.order))), Fraction(0))
                self._hash = hash(tr)
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugate (zeta -> zeta^-1)."""
        K = self.order
        if K == 1:
            return self
        table = _power_table(K)
        out = [Fraction(0)] * _phi(K)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(-j) % K]):
                    if t:
                        out[i] += c * t
        return Cyclotomic._raw(K, tuple(out))

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**j for j, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Cyclotomic({self})"

    def __str__(self):
        if self.order == 1:
            return _fmt_fraction(self.coeffs[0])
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if not c:
                continue
            if j == 0:
                body, sign = _fmt_fraction(abs(c)), c < 0
            else:
                z = f"zeta{self.order}" + (f"^{j}" if j > 1 else "")
                body = z if abs(c) == 1 else f"{_fmt_fraction(abs(c))}*{z}"
                sign = c < 0
            parts.append((sign, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += (" - " if sign else " + ") + body
        return out


def _unit(n: int, j: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == j)) for i in range(n))


def _fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic._raw(1, (Fraction(x),))
    return NotImplemented


ONE = Cyclotomic._raw(1, (Fraction(1),))


@lru_cache(maxsize=None)
def root_of_unity(K: int, e: int) -> Cyclotomic:
    """zeta_K ** e with zeta_K = exp(2 pi i / K)."""
    return Cyclotomic._raw(K, tuple(Fraction(t) for t in _power_table(K)[e % K]))


def zeta(K: int) -> Cyclotomic:
    return root_of_unity(K, 1)
