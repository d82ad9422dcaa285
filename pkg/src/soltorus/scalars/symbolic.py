"""Rational functions over Q(zeta) in the parameters gamma, alpha, beta, ...

``SymbolicScalar`` is the coefficient type for everything that depends on a
generic parameter.  A nonzero numerator means invertible: this is how
genericity of gamma (and of unspecified alpha, beta) is encoded.

Specializations are applied eagerly: substituting ``b = 0`` removes ``b`` from
the expression and records the assignment, so later arithmetic with a scalar
that disagrees about ``b`` raises :class:`SpecializationConflict`.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction

from .cyclotomic import Cyclotomic, root_of_unity
from .poly import Poly, poly_gcd, var_key

__all__ = [
    "SymbolicScalar",
    "SpecializationConflict",
    "sym",
    "const",
    "parse_scalar",
    "format_scalar",
    "is_zero",
    "as_symbolic",
]


class SpecializationConflict(ValueError):
    pass


_ONE = Poly.const(1)


def _merge_fixed(a: tuple, b: tuple, pa: Poly, pb: Poly, qa: Poly, qb: Poly) -> tuple:
    if not a and not b:
        return ()
    if a == b:
        return a
    merged = dict(a)
    for name, val in b:
        if name in merged and merged[name] != val:
            raise SpecializationConflict(f"{name} specialized to {merged[name]} and {val}")
        merged[name] = val
    free_a = pa.variables() | qa.variables()
    free_b = pb.variables() | qb.variables()
    for name, _ in b:
        if name in free_a:
            raise SpecializationConflict(f"{name} is specialized in one operand and free in the other")
    for name, _ in a:
        if name in free_b:
            raise SpecializationConflict(f"{name} is specialized in one operand and free in the other")
    return tuple(sorted(merged.items(), key=lambda t: var_key(t[0])))


class SymbolicScalar:
    """Immutable reduced fraction ``num / den`` with a monic-leading denominator."""

    __slots__ = ("num", "den", "fixed", "_hash")

    def __init__(self, num, den=None, fixed=()):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = _ONE if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        self.num, self.den = _reduce(num, den)
        self.fixed = tuple(fixed)
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly, fixed: tuple) -> "SymbolicScalar":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj.fixed = fixed
        obj._hash = None
        return obj

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def constant_value(self):
        """The value as Fraction / Cyclotomic; raises if a parameter remains."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        v = self.num.constant_value()
        return v if self.den.terms[()] == 1 else v / self.den.terms[()]

    def variables(self) -> frozenset:
        return self.num.variables() | self.den.variables()

    def specialize(self, values: dict) -> "SymbolicScalar":
        """Substitute exact values for parameters and record the assignment."""
        if not values:
            return self
        vals = {k: _exact(v) for k, v in values.items()}
        fixed = dict(self.fixed)
        for k, v in vals.items():
            if k in fixed and fixed[k] != v:
                raise SpecializationConflict(f"{k} already specialized to {fixed[k]}")
            fixed[k] = v
        num = self.num.substitute(vals)
        den = self.den.substitute(vals)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator vanishes under {values}")
        n, d = _reduce(num, den)
        return SymbolicScalar._raw(n, d, tuple(sorted(fixed.items(), key=lambda t: var_key(t[0]))))

    # -- arithmetic --------------------------------------------------------
    def _fixed_with(self, o: "SymbolicScalar") -> tuple:
        if not self.fixed and not o.fixed:
            return ()
        return _merge_fixed(self.fixed, o.fixed, self.num, o.num, self.den, o.den)

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        fixed = self._fixed_with(o)
        if o.num.is_zero():
            return SymbolicScalar._raw(self.num, self.den, fixed)
        if self.num.is_zero():
            return SymbolicScalar._raw(o.num, o.den, fixed)
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_constant() and d.is_constant():
            bc, dc = b.terms[()], d.terms[()]
            if bc == dc:
                n = a + c
                return SymbolicScalar._raw(n, b if not n.is_zero() else _ONE, fixed)
            return SymbolicScalar._raw(*_normalize_const_den(a * dc + c * bc, bc * dc), fixed)
        if b == d:
            n, dd = _reduce(a + c, b)
            return SymbolicScalar._raw(n, dd, fixed)
        if d.is_constant():
            # gcd(a d + c b, b d) = gcd(c b, b) up to units when a/b reduced
            n = a * d.terms[()] + c * b
            return SymbolicScalar._raw(*_normalize_lead(n, b * d.terms[()]), fixed)
        if b.is_constant():
            n = a * d + c * b.terms[()]
            return SymbolicScalar._raw(*_normalize_lead(n, d * b.terms[()]), fixed)
        n, dd = _reduce(a * d + c * b, b * d)
        return SymbolicScalar._raw(n, dd, fixed)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicScalar._raw(-self.num, self.den, self.fixed)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        fixed = self._fixed_with(o)
        if self.num.is_zero() or o.num.is_zero():
            return SymbolicScalar._raw(Poly._raw({}), _ONE, fixed)
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_constant() and d.is_constant():
            return SymbolicScalar._raw(*_normalize_const_den(a * c, b.terms[()] * d.terms[()]), fixed)
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if not g1.is_constant():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_constant():
            c, b = c.exact_div(g2), b.exact_div(g2)
        return SymbolicScalar._raw(*_normalize_lead(a * c, b * d), fixed)

    __rmul__ = __mul__

    def inverse(self) -> "SymbolicScalar":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return SymbolicScalar._raw(*_normalize_lead(self.den, self.num), self.fixed)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return SymbolicScalar._raw(self.num**e, self.den**e, self.fixed)

    # -- comparison / display ----------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"SymbolicScalar({self})"

    def __str__(self):
        return format_scalar(self)


def _exact(v):
    if isinstance(v, SymbolicScalar):
        return v.constant_value()
    if isinstance(v, str):
        return parse_scalar(v).constant_value()
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, Cyclotomic):
        return v.coeffs[0] if v.order == 1 else v
    return v


def _normalize_const_den(num: Poly, den):
    if den == 1:
        return num, _ONE
    if num.is_zero():
        return num, _ONE
    return num.scale(1 / den if not isinstance(den, Cyclotomic) else den.inverse()), _ONE


def _normalize_lead(num: Poly, den: Poly):
    if num.is_zero():
        return num, _ONE
    if den.is_constant():
        return _normalize_const_den(num, den.terms[()])
    lc = den.leading()[1]
    if lc == 1:
        return num, den
    inv = lc.inverse() if isinstance(lc, Cyclotomic) else 1 / lc
    return num.scale(inv), den.scale(inv)


def _reduce(num: Poly, den: Poly):
    if num.is_zero():
        return num, _ONE
    if den.is_constant():
        return _normalize_const_den(num, den.terms[()])
    g = poly_gcd(num, den)
    if not g.is_constant():
        num, den = num.exact_div(g), den.exact_div(g)
    return _normalize_lead(num, den)


def _coerce(x):
    if isinstance(x, SymbolicScalar):
        return x
    if isinstance(x, (int, Fraction, Cyclotomic)):
        return SymbolicScalar._raw(Poly.const(x), _ONE, ())
    if isinstance(x, Poly):
        return SymbolicScalar._raw(x, _ONE, ())
    return NotImplemented


def as_symbolic(x) -> SymbolicScalar:
    o = _coerce(x)
    if o is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to a scalar")
    return o


def sym(name: str) -> SymbolicScalar:
    """The indeterminate ``name`` (g1.. for gamma, a1.. for alpha, b for beta)."""
    return SymbolicScalar._raw(Poly.var(name), _ONE, ())


def const(value) -> SymbolicScalar:
    return as_symbolic(Fraction(value) if isinstance(value, int) else value)


def is_zero(x) -> bool:
    """Exact zero test for any scalar type used in the package."""
    if isinstance(x, SymbolicScalar):
        return x.num.is_zero()
    return x == 0


# -- textual grammar ------------------------------------------------------------
#
#   expr   := term (('+' | '-') term)*
#   term   := factor (('*' | '/') factor)*
#   factor := ('-' | '+') factor | atom ('^' integer)?
#   atom   := integer | name | 'zeta' K | '(' expr ')'
#
# Names are g1.., a1.., b, or any identifier; ``zetaK`` is exp(2 pi i / K).

_ZETA = re.compile(r"^zeta(\d+)$")


def format_scalar(x) -> str:
    """Canonical text for any scalar; inverse of :func:`parse_scalar`."""
    if isinstance(x, SymbolicScalar):
        num = str(x.num)
        if x.den.is_constant():
            return num
        den = str(x.den)
        if len(x.num.terms) > 1 or "/" in num:
            num = f"({num})"
        if len(x.den.terms) > 1 or any(len(m) > 1 for m in x.den.terms):
            den = f"({den})"
        return f"{num}/{den}"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def parse_scalar(text: str) -> SymbolicScalar:
    """Parse the canonical grammar (``(2*g1 - g2)/(b + 1)``, ``zeta4^3``, ``1/2``)."""
    if not isinstance(text, str):
        return as_symbolic(Fraction(text) if isinstance(text, int) else text)
    src = text.strip().replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc
    return as_symbolic(_eval(tree.body, text))


def _eval(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return SymbolicScalar._raw(Poly.const(node.value), _ONE, ())
    if isinstance(node, ast.Name):
        m = _ZETA.match(node.id)
        if m:
            return as_symbolic(root_of_unity(int(m.group(1)), 1))
        return sym(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval(node.left, text)
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ValueError(f"exponent must be an integer in {text!r}")
            return left ** (sign * exp.value)
        right = _eval(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise ValueError(f"unsupported syntax in scalar {text!r}")
