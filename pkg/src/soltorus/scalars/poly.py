"""Sparse multivariate polynomials over the cyclotomic numbers.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by the global
variable order (see :func:`var_key`).  Coefficients are ``Fraction`` when
rational and :class:`Cyclotomic` otherwise, so equal polynomials have equal
term maps.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import Cyclotomic

__all__ = ["Poly", "var_key", "poly_gcd"]

_VAR_RE = re.compile(r"^([A-Za-z]+?)(\d*)$")
_GROUPS = {"g": 0, "a": 1, "b": 2}
_END = ((99,),)


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple:
    """Total order on indeterminates: gamma (g1..), alpha (a1..), beta (b), then others."""
    m = _VAR_RE.match(name)
    if not m:
        raise ValueError(f"bad variable name {name!r}")
    prefix, idx = m.group(1), m.group(2)
    return (_GROUPS.get(prefix, 3), prefix, int(idx) if idx else 0)


def _norm(c):
    if isinstance(c, Cyclotomic):
        return c.coeffs[0] if c.order == 1 else c
    if isinstance(c, int):
        return Fraction(c)
    return c


def _is0(c) -> bool:
    return c == 0


def _inv(c):
    if isinstance(c, Cyclotomic):
        return _norm(c.inverse())
    return 1 / c


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda t: var_key(t[0])))


def _mono_div(a: tuple, b: tuple):
    """a / b as a monomial, or None if b does not divide a."""
    d = dict(a)
    for v, e in b:
        r = d.get(v, 0) - e
        if r < 0:
            return None
        if r:
            d[v] = r
        else:
            del d[v]
    return tuple(sorted(d.items(), key=lambda t: var_key(t[0])))


@lru_cache(maxsize=100_000)
def _lex(mono: tuple) -> tuple:
    # smaller key == lex-larger monomial
    return tuple((var_key(v), -e) for v, e in mono) + (_END,)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps monomials to nonzero coefficients."""

    __slots__ = ("terms", "_hash", "_vars")

    def __init__(self, terms=None):
        out = {}
        if terms:
            for m, c in terms.items():
                c = _norm(c)
                if not _is0(c):
                    out[m] = c
        self.terms = out
        self._hash = None
        self._vars = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        obj._vars = None
        return obj

    @classmethod
    def const(cls, c) -> "Poly":
        c = _norm(c)
        return cls._raw({} if _is0(c) else {(): c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        var_key(name)
        return cls._raw({((name, 1),): Fraction(1)})

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def variables(self) -> frozenset:
        if self._vars is None:
            self._vars = frozenset(v for m in self.terms for v, _ in m)
        return self._vars

    def degree_in(self, var: str) -> int:
        if not self.terms:
            return -1
        return max(dict(m).get(var, 0) for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def leading(self):
        """(monomial, coefficient) of the lex-leading term."""
        m = min(self.terms, key=_lex)
        return m, self.terms[m]

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = _norm(s + c)
                if _is0(s):
                    del out[m]
                else:
                    out[m] = s
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def scale(self, c) -> "Poly":
        c = _norm(c)
        if _is0(c):
            return Poly._raw({})
        if c == 1:
            return self
        out = {}
        for m, x in self.terms.items():
            out[m] = _norm(x * c)
        return Poly._raw(out)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self.terms or not other.terms:
            return Poly._raw({})
        if len(other.terms) == 1 and () in other.terms:
            return self.scale(other.terms[()])
        if len(self.terms) == 1 and () in self.terms:
            return other.scale(self.terms[()])
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly({m: c for m, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result, base = Poly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(_inv(self.leading()[1]))

    def exact_div(self, other: "Poly") -> "Poly":
        """self / other, raising ArithmeticError unless the division is exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if other.is_constant():
            return self.scale(_inv(other.terms[()]))
        lm, lc = other.leading()
        ilc = _inv(lc)
        rem = self
        quot: dict = {}
        while rem.terms:
            m, c = rem.leading()
            q = _mono_div(m, lm)
            if q is None:
                raise ArithmeticError("inexact polynomial division")
            qc = _norm(c * ilc)
            quot[q] = qc
            rem = rem - other * Poly._raw({q: qc})
        return Poly._raw(quot)

    def substitute(self, values: dict) -> "Poly":
        """Replace variables by exact constants (other variables are kept)."""
        if not values or not (self.variables() & values.keys()):
            return self
        out = Poly._raw({})
        for m, c in self.terms.items():
            coeff = c
            rest = []
            for v, e in m:
                if v in values:
                    coeff = coeff * values[v] ** e
                else:
                    rest.append((v, e))
            out = out + Poly({tuple(rest): coeff})
        return out

    def evaluate(self, values: dict):
        p = self.substitute(values)
        if not p.is_constant():
            raise ValueError(f"unassigned variables {sorted(p.variables())}")
        return p.constant_value()

    # -- univariate view ---------------------------------------------------
    def as_univariate(self, var: str) -> dict:
        """{degree: coefficient Poly} viewing self as a polynomial in ``var``."""
        out: dict = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for v, k in m:
                if v == var:
                    e = k
                else:
                    rest.append((v, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly._raw(t) for e, t in out.items()}

    @staticmethod
    def from_univariate(var: str, coeffs: dict) -> "Poly":
        out = Poly._raw({})
        for e, c in coeffs.items():
            out = out + c * (Poly.var(var) ** e if e else Poly.const(1))
        return out

    # -- comparison / display ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.terms == Poly.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _lex(t[0]))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def _fmt_coeff_body(c) -> tuple[bool, str, bool]:
    """(negative, text, compound) for a coefficient's absolute value."""
    if isinstance(c, Fraction):
        neg = c < 0
        a = abs(c)
        return neg, (str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"), False
    s = str(c)
    if "+" in s[1:] or " - " in s:
        return False, f"({s})", True
    if s.startswith("-"):
        return True, s[1:], False
    return False, s, False


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for m, c in p.sorted_terms():
        neg, body, _ = _fmt_coeff_body(c)
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
        if not mono:
            text = body
        elif body == "1":
            text = mono
        else:
            text = f"{body}*{mono}"
        pieces.append((neg, text))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, text in pieces[1:]:
        out += (" - " if neg else " + ") + text
    return out


# -- gcd ---------------------------------------------------------------------

_ONE = Poly.const(1)


def _main_var(a: Poly, b: Poly) -> str:
    return max(a.variables() | b.variables(), key=var_key)


def _content(p: Poly, var: str) -> Poly:
    g = Poly._raw({})
    for c in p.as_univariate(var).values():
        g = poly_gcd(g, c)
        if g.is_constant():
            return _ONE
    return g


def _prem(a: dict, b: dict) -> dict:
    """Pseudo-remainder of univariate views (dicts degree -> Poly)."""
    db = max(b)
    lb = b[db]
    a = dict(a)
    while a and max(a) >= db:
        da = max(a)
        la = a[da]
        shift = da - db
        new = {}
        for e, c in a.items():
            new[e] = c * lb
        for e, c in b.items():
            k = e + shift
            new[k] = new.get(k, Poly._raw({})) - c * la
        a = {e: c for e, c in new.items() if not c.is_zero()}
    return a


def _primitive(u: dict) -> dict:
    g = Poly._raw({})
    for c in u.values():
        g = poly_gcd(g, c)
        if g.is_constant():
            break
    if g.is_constant():
        return u
    return {e: c.exact_div(g) for e, c in u.items()}


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over Q(zeta) (recursive primitive PRS)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return _ONE
    if a == b:
        return a.monic()
    x = _main_var(a, b)
    if x not in a.variables():
        return poly_gcd(a, _content(b, x))
    if x not in b.variables():
        return poly_gcd(_content(a, x), b)
    ca, cb = _content(a, x), _content(b, x)
    ua = {e: c.exact_div(ca) for e, c in a.as_univariate(x).items()}
    ub = {e: c.exact_div(cb) for e, c in b.as_univariate(x).items()}
    if max(ua) < max(ub):
        ua, ub = ub, ua
    while ub:
        r = _prem(ua, ub)
        ua, ub = ub, (_primitive(r) if r else {})
    g = _ONE if max(ua) == 0 else Poly.from_univariate(x, _primitive(ua))
    return (poly_gcd(ca, cb) * g).monic()
