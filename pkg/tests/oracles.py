"""Independent reference computations built on sympy.

Nothing here imports the arithmetic of the package under test; values cross the
boundary as strings in the scalar grammar.
"""

import math

import sympy as sp

Z = sp.Symbol("z")


def cyclotomic_to_sympy_poly(c):
    """Coefficient vector of a Cyclotomic as a polynomial in z, reduced mod Phi_K."""
    K = c.order
    expr = sum(sp.Rational(x.numerator, x.denominator) * Z**j for j, x in enumerate(c.coeffs))
    return K, sp.rem(sp.Poly(expr, Z), sp.Poly(sp.cyclotomic_poly(K, Z), Z))


def cyclotomic_product_oracle(a, b, K):
    """(a*b) in Q[z]/Phi_K with a and b lifted to order K."""
    def lift(c):
        step = K // c.order
        return sum(sp.Rational(x.numerator, x.denominator) * Z ** (j * step) for j, x in enumerate(c.coeffs))

    phi = sp.Poly(sp.cyclotomic_poly(K, Z), Z)
    return sp.rem(sp.Poly(sp.expand(lift(a) * lift(b)), Z), phi)


def scalar_to_sympy(text: str):
    """Parse a scalar string; zetaK becomes z^(L/K) for a common order L recorded on the result."""
    expr = sp.sympify(text.replace("^", "**"))
    orders = [int(str(v)[4:]) for v in expr.free_symbols if str(v).startswith("zeta")]
    L = math.lcm(*orders) if orders else 1
    roots = {v: Z ** (L // int(str(v)[4:])) for v in expr.free_symbols if str(v).startswith("zeta")}
    return expr.subs(roots), L


def sympy_is_zero(expr, L) -> bool:
    """expr is a rational function in z and parameters; zero iff its numerator vanishes mod Phi_L(z)."""
    num = sp.numer(sp.together(sp.expand(expr)))
    if L == 1:
        return sp.expand(num) == 0
    return sp.rem(sp.expand(num), sp.cyclotomic_poly(L, Z), Z) == 0


def same_scalar(a_text: str, b_text: str) -> bool:
    ea, La = scalar_to_sympy(a_text)
    eb, Lb = scalar_to_sympy(b_text)
    L = math.lcm(La, Lb)
    ea = ea.subs(Z, Z ** (L // La))
    eb = eb.subs(Z, Z ** (L // Lb))
    return sympy_is_zero(ea - eb, L)


# -- the derivation algebra realised by matrix-valued functions --------------------------


class MatrixFunctionRealization:
    """x^p d_gamma as the vector field x^p sum gamma_i d/dx_i, x^l tbar^s as x^l e^{(x|s)} X^s.

    Brackets of these functions are computed with sympy and then rewritten in
    the basis x^l tbar^s, expanding the leftover exponential in x up to D_max.
    Only presentations with rational cocycle values (k = 2) are supported.
    """

    def __init__(self, d, reps, matrix_of, D_max):
        self.d = d
        self.x = sp.symbols(f"x1:{d + 1}")
        self.g = sp.symbols(f"g1:{d + 1}")
        self.reps = list(reps)
        self.X = {s: sp.Matrix(matrix_of(s)) for s in self.reps}
        self.N = self.X[self.reps[0]].shape[0]
        self.D_max = D_max
        self.eps = sp.Symbol("eps")

    def _mono(self, p):
        out = sp.Integer(1)
        for xi, e in zip(self.x, p):
            out *= xi**e
        return out

    def _dgamma(self, f):
        return sum(gi * sp.diff(f, xi) for gi, xi in zip(self.g, self.x))

    def _lin(self, s):
        return sum(si * xi for si, xi in zip(s, self.x))

    def element(self, symbol):
        if symbol[0] == "d":
            return ("field", self._mono(symbol[1]))
        _, l, s = symbol
        return ("func", self._mono(l) * sp.exp(self._lin(s)) * self.X[s])

    def bracket(self, a, b):
        ka, A = self.element(a)
        kb, Bm = self.element(b)
        if ka == "field" and kb == "field":
            return ("field", sp.expand(A * self._dgamma(Bm) - Bm * self._dgamma(A)))
        if ka == "field":
            return ("func", Bm.applyfunc(lambda f: A * self._dgamma(f)))
        if kb == "field":
            return ("func", -A.applyfunc(lambda f: Bm * self._dgamma(f)))
        return ("func", A * Bm - Bm * A)

    def decompose(self, value) -> dict:
        """Rewrite in basis symbols, dropping every term of degree above D_max."""
        kind, F = value
        out = {}
        if kind == "field":
            poly = sp.Poly(F, *self.x)
            for mon, c in poly.terms():
                if sum(mon) - 1 <= self.D_max and c != 0:
                    out[("d", tuple(mon))] = sp.expand(c)
            return out
        for s in self.reps:
            Xs = self.X[s]
            coef = sp.simplify((Xs.inv() * F).trace() / self.N)
            g = sp.simplify(coef * sp.exp(-self._lin(s)))
            if g == 0:
                continue
            scaled = g.subs({xi: self.eps * xi for xi in self.x}, simultaneous=True)
            series = sp.series(scaled, self.eps, 0, self.D_max + 1).removeO()
            poly = sp.Poly(sp.expand(series.subs(self.eps, 1)), *self.x)
            for mon, c in poly.terms():
                if sum(mon) <= self.D_max and c != 0:
                    out[("t", tuple(mon), s)] = sp.expand(c)
        return out


# -- clock and shift matrices ----------------------------------------------------------


def torus_matrix(orders, n):
    """X^n built directly from clock and shift matrices, entries polynomials in z = zeta_L (L = orders[0])."""
    L = orders[0] if orders else 1
    out = sp.Matrix([[1]])
    for i, k in enumerate(orders):
        q = Z ** (L // k)
        clock = sp.diag(*[q**j for j in range(k)])
        shift = sp.zeros(k, k)
        for j in range(k):
            shift[j, (j + 1) % k] = 1
        block = clock ** (n[2 * i] % k) * shift ** (n[2 * i + 1] % k)
        out = sp.kronecker_product(out, block)
    return out


def reduce_matrix(A, L):
    if L == 1:
        return A.applyfunc(sp.expand)
    phi = sp.cyclotomic_poly(L, Z)
    return A.applyfunc(lambda e: sp.rem(sp.expand(e), phi, Z))


def cyclotomic_as_poly(c, L):
    return sum(sp.Rational(x.numerator, x.denominator) * Z**j for j, x in enumerate(c.lift(L)))
