"""Representations of the derivation algebra and cuspidal modules with a centre action.

Going from a module to a representation:

* ``extract_D_operators`` reads D(m) = t^-m L_m on U_k and
  D(m, r) = t^-(m+c) L_(m+r) : U_k -> U_(k+r mod R), where c = k + r - red(k + r)
  is the correction that brings the target back to its Gamma_0 representative;
* ``fit_polynomials`` interpolates them exactly as polynomials in m and expands
  in the basis m^p / p!, giving the operators P_0^p and P_r^p;
* ``rep_from_family`` packages those as an :class:`LRepresentation`.

``module_from_rep`` goes back through the explicit action formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial

from .algebras import DerivationAlgebra, _linear_power, _monomials, lattice_str
from .linalg import inverse, is_zero_matrix, matmul, zeros
from .scalars import format_scalar, gamma_vector, inner_product, is_zero
from .tensor_modules import ModuleError, SolenoidalZModule, WeightModule, graded_simple
from .torus import TorusPresentation, vadd, vneg, vsub

ONE = Fraction(1)


class FitError(ArithmeticError):
    pass


def _mono(m, q):
    out = Fraction(1)
    for x, e in zip(m, q):
        if e:
            out *= Fraction(x) ** e
    return out


def _qfact(q) -> int:
    out = 1
    for e in q:
        out *= factorial(e)
    return out


def _mat_lin(coeffs, mats, rows, cols):
    out = zeros(rows, cols)
    for c, M in zip(coeffs, mats):
        if is_zero(c):
            continue
        for i in range(rows):
            Mi, oi = M[i], out[i]
            for j in range(cols):
                if not is_zero(Mi[j]):
                    oi[j] = oi[j] + c * Mi[j]
    return out


def _sub(A, B):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(A, B)]


def _scaled(A, c):
    return [[c * x for x in row] for row in A]


def _mat_json(A):
    return [[format_scalar(x) for x in row] for row in A]


# -- extraction -----------------------------------------------------------------------


def extract_D_operators(M: WeightModule, B: int) -> dict:
    """Samples of D(m) and D(m, r) for m in R with every vector involved inside the window."""
    if not M.has_z or not isinstance(M, SolenoidalZModule):
        raise ModuleError("missing Z-action: D-operators need an associative action of the centre")
    P = M.P
    win = M.window(B)
    classes = [k for k in P.gamma_reps if M.dim(k)]
    radical = [m for m in win.points if P.in_radical(m)]
    D0: dict = {k: {} for k in classes}
    Dr: dict = {}
    for k in classes:
        for m in radical:
            t = vadd(k, m)
            if t not in win:
                continue
            D0[k][m] = matmul(M.act_z(vneg(m), t), M.act(("L", m), k))
        for r in P.gamma_reps:
            if not any(r):
                continue
            tgt = P.red(vadd(k, r))
            if not M.dim(tgt):
                continue
            c = vsub(vadd(k, r), tgt)
            fam = Dr.setdefault((r, k), {})
            for m in radical:
                t = vadd(vadd(k, m), r)
                if t not in win:
                    continue
                fam[m] = matmul(M.act_z(vneg(vadd(m, c)), t), M.act(("L", vadd(m, r)), k))
    return {
        "presentation": P,
        "gamma": M.gamma,
        "dims": {k: M.dim(k) for k in P.gamma_reps},
        "D0": D0,
        "Dr": Dr,
        "window": win.describe(),
    }


# -- fitting --------------------------------------------------------------------------


def _fit_one(samples: dict, steps: tuple, D_cap: int):
    """Smallest D with an exact tensor-degree-D fit on {0..D}^d (R-coordinates) that also matches every other sample."""
    d = len(steps)
    pts = set(samples)
    for D in range(0, D_cap + 1):
        grid = [tuple(st * a for st, a in zip(steps, aa)) for aa in product(range(D + 1), repeat=d)]
        if not all(g in pts for g in grid):
            break
        holdout = [m for m in sorted(pts) if m not in set(grid)]
        if not holdout:
            break
        qs = list(product(range(D + 1), repeat=d))
        V = [[_mono(m, q) for q in qs] for m in grid]
        Vinv = inverse(V)
        rows = len(samples[grid[0]])
        cols = len(samples[grid[0]][0]) if rows else 0
        ys = [samples[m] for m in grid]
        coeffs = {q: _mat_lin(Vinv[a], ys, rows, cols) for a, q in enumerate(qs)}
        ok = True
        for m in holdout:
            val = _mat_lin([_mono(m, q) for q in qs], [coeffs[q] for q in qs], rows, cols)
            if not is_zero_matrix(_sub(val, samples[m])):
                ok = False
                break
        if ok:
            out = {}
            for q, C in coeffs.items():
                if not is_zero_matrix(C):
                    out[q] = _scaled(C, Fraction(_qfact(q)))
            return out, D, len(holdout)
    raise FitError("not polynomial within cap")


@dataclass
class PolynomialOperatorFamily:
    presentation: TorusPresentation
    gamma: tuple
    dims: dict
    P0: dict  # k -> {p: matrix on U_k}
    Pr: dict  # (r, k) -> {p: matrix U_k -> U_red(k+r)}
    degree: int
    info: dict = field(default_factory=dict)

    def P0_at(self, k, p):
        n = self.dims[k]
        return self.P0.get(k, {}).get(p) or zeros(n, n)

    def Pr_at(self, r, k, p):
        tgt = self.presentation.red(vadd(k, r))
        return self.Pr.get((r, k), {}).get(p) or zeros(self.dims[tgt], self.dims[k])

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dims": {lattice_str(k): v for k, v in self.dims.items()},
            "P0": {lattice_str(k): {lattice_str(p): _mat_json(A) for p, A in sorted(fam.items())} for k, fam in sorted(self.P0.items())},
            "Pr": {f"{lattice_str(r)}@{lattice_str(k)}": {lattice_str(p): _mat_json(A) for p, A in sorted(fam.items())}
                   for (r, k), fam in sorted(self.Pr.items())},
            "fit": self.info,
        }


def fit_polynomials(samples: dict, D_cap: int = 4) -> PolynomialOperatorFamily:
    P = samples["presentation"]
    steps = P.steps
    P0, Pr, info = {}, {}, {}
    degree = 0
    for k, fam in samples["D0"].items():
        coeffs, D, held = _fit_one(fam, steps, D_cap)
        P0[k] = coeffs
        info[f"D0@{lattice_str(k)}"] = {"fit_degree": D, "holdout": held}
        degree = max(degree, max((sum(q) for q in coeffs), default=0))
    for (r, k), fam in samples["Dr"].items():
        coeffs, D, held = _fit_one(fam, steps, D_cap)
        Pr[(r, k)] = coeffs
        info[f"D{lattice_str(r)}@{lattice_str(k)}"] = {"fit_degree": D, "holdout": held}
        degree = max(degree, max((sum(q) for q in coeffs), default=0))
    return PolynomialOperatorFamily(P, samples["gamma"], dict(samples["dims"]), P0, Pr, degree, info)


# -- bracket relations among the P operators -------------------------------------------


def verify_P_brackets(fam: PolynomialOperatorFamily) -> dict:
    """The three families of relations among P_0^p and P_r^p, on every block."""
    P = fam.presentation
    g = fam.gamma
    d = P.d
    top = max(fam.degree, 1)
    idx = [q for n in range(top + 1) for q in _monomials(d, n)]
    classes = [k for k in P.gamma_reps if fam.dims.get(k)]
    nonzero_r = [r for r in P.gamma_reps if any(r)]
    violations = []
    counts = {"P0_P0": 0, "P0_Pr": 0, "Pr_Pr": 0}
    verbatim_p0 = 0

    def bad(kind, **kw):
        violations.append({"relation": kind, **{a: lattice_str(b) if isinstance(b, tuple) else b for a, b in kw.items()}})

    for k in classes:
        for p, l in product(idx, repeat=2):
            counts["P0_P0"] += 1
            A, Bm = fam.P0_at(k, p), fam.P0_at(k, l)
            lhs = _sub(matmul(A, Bm), matmul(Bm, A))
            n = fam.dims[k]
            terms = []
            if any(p) and any(l):
                for i in range(d):
                    if l[i] != p[i]:
                        e = list(vadd(p, l))
                        e[i] -= 1
                        terms.append((g[i] * (l[i] - p[i]), fam.P0_at(k, tuple(e))))
            rhs = _mat_lin([t[0] for t in terms], [t[1] for t in terms], n, n)
            if not is_zero_matrix(_sub(lhs, rhs)):
                bad("P0_P0", k=k, p=p, l=l)
    for k in classes:
        for s in nonzero_r:
            tgt = P.red(vadd(k, s))
            if not fam.dims.get(tgt):
                continue
            c = vsub(vadd(k, s), tgt)
            rows, cols = fam.dims[tgt], fam.dims[k]
            for p, l in product(idx, repeat=2):
                counts["P0_Pr"] += 1
                Bm = fam.Pr_at(s, k, l)
                lhs = _sub(matmul(fam.P0_at(tgt, p), Bm), matmul(Bm, fam.P0_at(k, p)))
                if any(p):
                    terms = [(inner_product(g, s), fam.Pr_at(s, k, vadd(p, l)))]
                    for i in range(d):
                        if l[i]:
                            e = list(vadd(p, l))
                            e[i] -= 1
                            terms.append((g[i] * l[i], fam.Pr_at(s, k, tuple(e))))
                    rhs = _mat_lin([t[0] for t in terms], [t[1] for t in terms], rows, cols)
                else:
                    rhs = _scaled(Bm, inner_product(g, vsub(s, c)))
                    if any(c) and not is_zero_matrix(_sub(lhs, _scaled(Bm, inner_product(g, s)))):
                        verbatim_p0 += 1
                if not is_zero_matrix(_sub(lhs, rhs)):
                    bad("P0_Pr", k=k, s=s, p=p, l=l)
    for k in classes:
        for r, s in product(nonzero_r, repeat=2):
            kr, ks = P.red(vadd(k, r)), P.red(vadd(k, s))
            krs = P.red(vadd(vadd(k, r), s))
            if not (fam.dims.get(kr) and fam.dims.get(ks) and fam.dims.get(krs)):
                continue
            coef = P.commutator_coeff(r, s)
            red, c = P.gamma_reduce(vadd(r, s))
            rows, cols = fam.dims[krs], fam.dims[k]
            for p, l in product(idx, repeat=2):
                counts["Pr_Pr"] += 1
                lhs = _sub(matmul(fam.Pr_at(r, ks, p), fam.Pr_at(s, k, l)), matmul(fam.Pr_at(s, kr, l), fam.Pr_at(r, k, p)))
                if is_zero(coef):
                    rhs = zeros(rows, cols)
                else:
                    base = vadd(p, l)
                    terms = []
                    for j in range(0, top + 1 - sum(base) if any(c) else 1):
                        for e, w in _linear_power(c, j).items():
                            terms.append((coef * w, fam.Pr_at(red, k, vadd(base, e))))
                    rhs = _mat_lin([t[0] for t in terms], [t[1] for t in terms], rows, cols) if terms else zeros(rows, cols)
                if not is_zero_matrix(_sub(lhs, rhs)):
                    bad("Pr_Pr", k=k, r=r, s=s, p=p, l=l)
    return {
        "check": "P_brackets",
        "degree": fam.degree,
        "relations_checked": counts,
        "violations": violations,
        "wrapped_p0_cases_differing_from_uncorrected_form": verbatim_p0,
    }


def constant_term_check(fam: PolynomialOperatorFamily, alpha) -> dict:
    """P_0^0 on U_k must be (gamma | alpha + k) Id."""
    bad = []
    zero = (0,) * fam.presentation.d
    for k, n in fam.dims.items():
        if not n:
            continue
        want = inner_product(fam.gamma, alpha) + inner_product(fam.gamma, k)
        A = fam.P0_at(k, zero)
        if any(not is_zero(A[i][j] - (want if i == j else 0)) for i in range(n) for j in range(n)):
            bad.append(lattice_str(k))
    return {"check": "constant_term", "violations": bad}


# -- representations ------------------------------------------------------------------


class LRepresentation:
    """A Gamma-graded representation of the derivation algebra (modulo degree > D_max).

    ``blocks[symbol][k]`` is the matrix of the symbol from U_k to U_k (for
    x^p d_gamma) or to U_(k+s) (for x^l tbar^s); absent blocks are zero.
    """

    def __init__(self, presentation: TorusPresentation, dims: dict, D_max: int, blocks: dict, gamma=None):
        self.P = presentation
        self.dims = {k: int(dims.get(k, 0)) for k in presentation.gamma_reps}
        self.D_max = D_max
        self.gamma = tuple(gamma) if gamma is not None else gamma_vector(presentation.d)
        self.algebra = DerivationAlgebra(presentation, D_max, gamma=self.gamma)
        self.blocks = {s: {k: A for k, A in bl.items() if self.dims.get(k)} for s, bl in blocks.items()}
        self.classes = [k for k in presentation.gamma_reps if self.dims[k]]
        off, o = {}, 0
        for k in presentation.gamma_reps:
            off[k] = o
            o += self.dims[k]
        self.offsets = off
        self.total_dim = o

    def target(self, s, k):
        return k if s[0] == "d" else self.P.red(vadd(k, s[2]))

    def block(self, s, k):
        A = self.blocks.get(s, {}).get(k)
        if A is None:
            return zeros(self.dims[self.target(s, k)], self.dims[k])
        return A

    def matrix(self, s):
        n = self.total_dim
        out = zeros(n, n)
        for k in self.classes:
            t = self.target(s, k)
            if not self.dims[t]:
                continue
            A = self.block(s, k)
            for i in range(self.dims[t]):
                for j in range(self.dims[k]):
                    out[self.offsets[t] + i][self.offsets[k] + j] = A[i][j]
        return out

    def symbols(self) -> list:
        return self.algebra.window()

    def check(self) -> dict:
        """rho([a, b]) = [rho(a), rho(b)] on all pairs of the window, blockwise."""
        syms = self.symbols()
        mats = {s: self.matrix(s) for s in syms}
        violations = []
        for a, b in product(syms, repeat=2):
            lhs = _sub(matmul(mats[a], mats[b]), matmul(mats[b], mats[a]))
            br = self.algebra.bracket_basis(a, b)
            rhs = _mat_lin(list(br.values()), [mats.get(s) or self.matrix(s) for s in br], self.total_dim, self.total_dim)
            if not is_zero_matrix(_sub(lhs, rhs)):
                violations.append([self.algebra.symbol_str(a), self.algebra.symbol_str(b)])
        grading = []
        for s, bl in self.blocks.items():
            for k, A in bl.items():
                t = self.target(s, k)
                if len(A) != self.dims[t] or (A and len(A[0]) != self.dims[k]):
                    grading.append([self.algebra.symbol_str(s), lattice_str(k)])
        return {"check": "representation", "pairs_checked": len(syms) ** 2, "violations": violations, "shape_errors": grading}

    def D_eff(self) -> int:
        """Smallest D with rho(L_j) = 0 for all j > D (-1 if rho vanishes)."""
        top = -1
        for s, bl in self.blocks.items():
            if any(not is_zero_matrix(A) for A in bl.values()):
                top = max(top, self.algebra.degree(s))
        return top

    def to_json(self) -> dict:
        out = {}
        for s in self.symbols():
            bl = self.blocks.get(s, {})
            nz = {lattice_str(k): _mat_json(A) for k, A in sorted(bl.items()) if not is_zero_matrix(A)}
            if nz:
                out[self.algebra.symbol_str(s)] = nz
        return {
            "presentation": self.P.to_dict(),
            "dims": {lattice_str(k): v for k, v in self.dims.items()},
            "D_max": self.D_max,
            "matrices": out,
        }


def rep_from_family(fam: PolynomialOperatorFamily) -> LRepresentation:
    P = fam.presentation
    D_max = max(1, fam.degree)
    blocks: dict = {}
    for k, coeffs in fam.P0.items():
        for p, A in coeffs.items():
            if any(p):
                blocks.setdefault(("d", p), {})[k] = A
    for (r, k), coeffs in fam.Pr.items():
        for l, A in coeffs.items():
            blocks.setdefault(("t", l, r), {})[k] = A
    return LRepresentation(P, fam.dims, D_max, blocks, fam.gamma)


class RepModule(SolenoidalZModule):
    """The cuspidal module attached to an LRepresentation and a weight alpha."""

    def __init__(self, rep: LRepresentation, alpha):
        super().__init__()
        self.rep = rep
        self.P = rep.P
        self.gamma = rep.gamma
        from .algebras import SolenoidalAlgebra

        self.algebra = SolenoidalAlgebra(self.P, self.gamma)
        self.alpha = tuple(alpha)
        self.steps = self.P.steps
        self.reps = self.P.gamma_reps
        self._ga = inner_product(self.gamma, self.alpha)
        self._d_syms = [s for s in rep.symbols() if s[0] == "d"]
        self._t_syms = [s for s in rep.symbols() if s[0] == "t"]

    def dim(self, u) -> int:
        return self.rep.dims[self.P.red(u)]

    def _act(self, symbol, u):
        v = symbol[1]
        k = self.P.red(u)
        n = self.dim(u)
        if self.P.in_radical(v):
            c = self._ga + inner_product(self.gamma, u)
            out = [[c if i == j else Fraction(0) for j in range(n)] for i in range(n)]
            for s in self._d_syms:
                w = _mono(v, s[1]) / _qfact(s[1])
                if w:
                    A = self.rep.block(s, k)
                    out = [[x + w * y for x, y in zip(r1, r2)] for r1, r2 in zip(out, A)]
            return out
        r = self.P.red(v)
        m = vsub(v, r)
        t = self.P.red(vadd(k, r))
        out = zeros(self.rep.dims[t], n)
        for s in self._t_syms:
            if s[2] != r:
                continue
            w = _mono(m, s[1]) / _qfact(s[1])
            if w:
                A = self.rep.block(s, k)
                out = [[x + w * y for x, y in zip(r1, r2)] for r1, r2 in zip(out, A)]
        return out

    def generators(self) -> list:
        rb = self.P.radical_basis()
        gens = [("L", b) for b in rb] + [("L", vneg(b)) for b in rb]
        return gens + [("L", s) for s in self.P.gamma_reps if any(s)]

    def axiom_generators(self) -> list:
        pts = set(self.P.gamma_reps) | set(self.P.radical_basis())
        pts |= {vneg(p) for p in pts}
        return [("L", p) for p in sorted(pts)]

    def z_generators(self) -> list:
        rb = self.P.radical_basis()
        return rb + [vneg(b) for b in rb]

    def describe(self) -> dict:
        return {"module": "from_representation", "presentation": self.P.to_dict(),
                "alpha": [format_scalar(a) for a in self.alpha], "dims": {lattice_str(k): v for k, v in self.rep.dims.items()}}


def module_from_rep(rep: LRepresentation, alpha) -> RepModule:
    report = rep.check()
    if report["violations"] or report["shape_errors"]:
        raise ValueError("input violates the bracket relations of the derivation algebra")
    return RepModule(rep, alpha)


def compare_actions(M1: WeightModule, M2: WeightModule, B: int) -> dict:
    """Exact equality of all generator matrices on a common window."""
    win = M1.window(B)
    mismatches, checked = [], 0
    for u in win.points:
        if M1.dim(u) != M2.dim(u):
            mismatches.append({"offset": lattice_str(u), "kind": "dimension"})
            continue
        if not M1.dim(u):
            continue
        for g in M1.axiom_generators():
            if vadd(u, M1.shift(g)) not in win:
                continue
            checked += 1
            if not is_zero_matrix(_sub(M1.act(g, u), M2.act(g, u))):
                mismatches.append({"offset": lattice_str(u), "generator": M1.algebra.symbol_str(g)})
    return {"check": "action_equality", "blocks_checked": checked, "mismatches": mismatches}


def compare_reps(r1: LRepresentation, r2: LRepresentation) -> dict:
    syms = set(r1.symbols()) | set(r2.symbols())
    bad = []
    for s in sorted(syms, key=repr):
        if s not in set(r1.symbols()) or s not in set(r2.symbols()):
            if not all(is_zero_matrix(A) for A in list(r1.blocks.get(s, {}).values()) + list(r2.blocks.get(s, {}).values())):
                bad.append(r1.algebra.symbol_str(s) if s in set(r1.symbols()) else r2.algebra.symbol_str(s))
            continue
        for k in r1.classes:
            if not is_zero_matrix(_sub(r1.block(s, k), r2.block(s, k))):
                bad.append(f"{r1.algebra.symbol_str(s)}@{lattice_str(k)}")
    return {"check": "rep_equality", "mismatches": bad}


# -- analysis -------------------------------------------------------------------------------


def _is_scalar_matrix(A):
    n = len(A)
    if n == 0:
        return True, Fraction(0)
    c = A[0][0]
    for i in range(n):
        for j in range(n):
            if not is_zero(A[i][j] - (c if i == j else 0)):
                return False, None
    return True, c


def analyze_rep(rep: LRepresentation, flag: dict | None = None) -> dict:
    """Structure report: L_+ action, gl_{d,gamma} eigenvalues, gl_N graded simplicity, classification."""
    P = rep.P
    d = P.d
    syms = rep.symbols()
    nonzero_plus = [rep.algebra.symbol_str(s) for s in syms if rep.algebra.degree(s) >= 1 and any(
        not is_zero_matrix(A) for A in rep.blocks.get(s, {}).values())]
    report: dict = {"dims": {lattice_str(k): v for k, v in rep.dims.items()}, "D_eff": rep.D_eff()}
    report["L_plus_killed"] = not nonzero_plus
    report["L_plus_nonzero"] = nonzero_plus
    e = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    xd = [rep.matrix(("d", ei)) for ei in e]
    tbar = {s: rep.matrix(("t", (0,) * d, s)) for s in P.gamma_reps}
    report["induced_action"] = {
        **{f"x{i + 1}d_g": _mat_json(A) for i, A in enumerate(xd)},
        **{f"t^{lattice_str(s)}": _mat_json(A) for s, A in tbar.items() if not is_zero_matrix(A)},
    }
    scalar, c1 = _is_scalar_matrix(xd[0])
    beta = None
    single_beta = False
    if scalar and rep.total_dim:
        beta = c1 / rep.gamma[0]
        single_beta = True
        for i in range(d):
            ok, ci = _is_scalar_matrix(xd[i])
            if not ok or not is_zero(ci - beta * rep.gamma[i]):
                single_beta = False
    else:
        diag = all(is_zero(xd[0][i][j]) for i in range(rep.total_dim) for j in range(rep.total_dim) if i != j)
        if diag:
            vals = []
            for i in range(rep.total_dim):
                v = xd[0][i][i] / rep.gamma[0]
                if not any(is_zero(v - w) for w in vals):
                    vals.append(v)
            report["beta_candidates"] = [format_scalar(v) for v in vals]
    report["single_beta"] = single_beta
    report["beta"] = format_scalar(beta) if single_beta else None
    t_ops = [tbar[s] for s in P.gamma_reps if any(s)]
    degrees = []
    for k in P.gamma_reps:
        degrees += [k] * rep.dims[k]
    t_acts = any(not is_zero_matrix(A) for A in t_ops)
    report["t_part_acts"] = t_acts
    simple = graded_simple(t_ops, degrees) if rep.total_dim else False
    report["graded_simple_gl_N"] = simple
    report["regular_module_iso"] = _regular_iso(rep, tbar) if t_acts else False
    reasons = []
    if not report["L_plus_killed"]:
        reasons.append("L_+ acts nontrivially")
    if not single_beta:
        reasons.append("no single beta: x_i d_gamma is not beta*gamma_i*Id")
    if t_acts and not simple:
        reasons.append("U is not graded-simple over gl_N")
    if not t_acts and rep.total_dim != 1:
        reasons.append("L_t acts as zero but dim U != 1")
    if reasons:
        report["classification"] = "not irreducible"
        report["reasons"] = reasons
    elif not t_acts:
        report["classification"] = "T(alpha,beta)"
    else:
        report["classification"] = "V(alpha,beta,W)"
        report["W"] = "regular" if report["regular_module_iso"] else "graded-simple"
    report["upper_triangular"] = upper_triangular_check(rep, flag)
    return report


def _regular_iso(rep: LRepresentation, tbar: dict) -> bool:
    """u_k = rho(tbar^k) u_0 is a basis and rho(tbar^s) u_k = sigma(s,k) u_(s+k)."""
    P = rep.P
    zero = (0,) * P.d
    if rep.total_dim != len(P.gamma_reps) or any(rep.dims[k] != 1 for k in P.gamma_reps):
        return False
    n = rep.total_dim
    u0 = [ONE if i == rep.offsets[zero] else Fraction(0) for i in range(n)]
    vecs = {zero: u0}
    for k in P.gamma_reps:
        if any(k):
            vecs[k] = [sum((tbar[k][i][j] * u0[j] for j in range(n)), Fraction(0)) for i in range(n)]
    from .linalg import rank

    if rank([vecs[k] for k in P.gamma_reps]) != n:
        return False
    for s in P.gamma_reps:
        if not any(s):
            continue
        for k in P.gamma_reps:
            lhs = [sum((tbar[s][i][j] * vecs[k][j] for j in range(n)), Fraction(0)) for i in range(n)]
            rhs = [P.sigma(s, k) * x for x in vecs[P.red(vadd(s, k))]]
            if any(not is_zero(a - b) for a, b in zip(lhs, rhs)):
                return False
    return True


def upper_triangular_check(rep: LRepresentation, flag: dict | None) -> dict:
    """With a flag (per class: list of basis column vectors), every rho(tbar^r) must be upper triangular."""
    if flag is None:
        return {"status": "unverified", "reason": "no filtration supplied"}
    P = rep.P
    zero = (0,) * P.d
    bad = []
    for r in P.gamma_reps:
        if not any(r):
            continue
        s = ("t", zero, r)
        for k in rep.classes:
            t = rep.target(s, k)
            if not rep.dims[t]:
                continue
            Fk = [list(col) for col in zip(*flag[k])]
            Ft = [list(col) for col in zip(*flag[t])]
            A = matmul(inverse(Ft), matmul(rep.block(s, k), Fk))
            if any(not is_zero(A[i][j]) for i in range(len(A)) for j in range(len(A[0])) if i > j):
                bad.append(f"{lattice_str(r)}@{lattice_str(k)}")
    return {"status": "verified" if not bad else "failed", "violations": bad}


# -- constructors for test representations -----------------------------------------------


def tensor_rep(presentation: TorusPresentation, beta, W=None, gamma=None, D_max: int = 1) -> LRepresentation:
    """The representation factoring through gl_{d,gamma} + gl_N: x_i d_gamma -> beta gamma_i, tbar^s -> X^s on W."""
    from .tensor_modules import GradedGlnModule

    W = W or GradedGlnModule.regular(presentation)
    gamma = tuple(gamma) if gamma is not None else gamma_vector(presentation.d)
    d = presentation.d
    dims = {k: W.graded_dim(k) for k in presentation.gamma_reps}
    blocks: dict = {}
    for i in range(d):
        ei = tuple(1 if j == i else 0 for j in range(d))
        blocks[("d", ei)] = {k: [[beta * gamma[i] if a == b else Fraction(0) for b in range(n)] for a in range(n)]
                             for k, n in dims.items() if n}
    for s in presentation.gamma_reps:
        if any(s):
            blocks[("t", (0,) * d, s)] = {k: W.block(s, k) for k, n in dims.items() if n}
    return LRepresentation(presentation, dims, D_max, blocks, gamma)


def direct_sum(r1: LRepresentation, r2: LRepresentation) -> LRepresentation:
    P = r1.P
    dims = {k: r1.dims[k] + r2.dims[k] for k in P.gamma_reps}
    blocks: dict = {}
    for s in set(r1.blocks) | set(r2.blocks):
        bl = {}
        for k in P.gamma_reps:
            if not dims[k]:
                continue
            t = r1.target(s, k)
            A, Bm = r1.block(s, k), r2.block(s, k)
            out = zeros(dims[t], dims[k])
            for i in range(r1.dims[t]):
                for j in range(r1.dims[k]):
                    out[i][j] = A[i][j]
            for i in range(r2.dims[t]):
                for j in range(r2.dims[k]):
                    out[r1.dims[t] + i][r1.dims[k] + j] = Bm[i][j]
            bl[k] = out
        blocks[s] = bl
    return LRepresentation(P, dims, max(r1.D_max, r2.D_max), blocks, r1.gamma)


def nilpotent_rep(presentation: TorusPresentation, beta, gamma=None, D_max: int = 1) -> LRepresentation:
    """A representation with rho(L_+) != 0.

    On U = W_reg (x) C^2 (or C^2 when z = 0): x_i d_gamma -> gamma_i (beta - H),
    x^p d_gamma (|p| = 2) -> (d_gamma^2 x^p) N and tbar^s -> X^s (x) 1, with
    H = diag(0, 1) and N = E_12.  Everything of higher degree acts by zero.
    """
    from .tensor_modules import GradedGlnModule

    gamma = tuple(gamma) if gamma is not None else gamma_vector(presentation.d)
    d = presentation.d
    W = GradedGlnModule.regular(presentation)
    dims = {k: 2 * W.graded_dim(k) for k in presentation.gamma_reps}
    Z = Fraction(0)

    def local(A2):
        return {k: _kron_id(A2, W.graded_dim(k)) for k, n in dims.items() if n}

    blocks: dict = {}
    for i in range(d):
        ei = tuple(1 if j == i else 0 for j in range(d))
        blocks[("d", ei)] = local([[beta * gamma[i], Z], [Z, beta * gamma[i] - gamma[i]]])
    for p in _monomials(d, 2):
        phi = Fraction(0)
        # d_gamma^2 applied to x^p
        nz = [i for i in range(d) if p[i]]
        phi = 2 * gamma[nz[0]] * gamma[nz[0]] if len(nz) == 1 else 2 * gamma[nz[0]] * gamma[nz[1]]
        blocks[("d", p)] = local([[Z, phi], [Z, Z]])
    for s in presentation.gamma_reps:
        if any(s):
            blocks[("t", (0,) * d, s)] = {k: _kron_right(W.block(s, k)) for k, n in dims.items() if n}
    return LRepresentation(presentation, dims, D_max, blocks, gamma)


def nilpotent_flag(rep: LRepresentation) -> dict:
    """Flag adapted to the filtration span{e_1 parts} inside U for :func:`nilpotent_rep`."""
    out = {}
    for k in rep.classes:
        n = rep.dims[k]
        half = n // 2
        order = [2 * i for i in range(half)] + [2 * i + 1 for i in range(half)]
        out[k] = [[ONE if j == c else Fraction(0) for j in range(n)] for c in order]
    return out


def _kron_id(A2, w: int):
    """A2 (2x2) acting on the C^2 factor of C^w (x) C^2."""
    n = 2 * w
    out = zeros(n, n)
    for b in range(w):
        for i in range(2):
            for j in range(2):
                out[2 * b + i][2 * b + j] = A2[i][j]
    return out


def _kron_right(A):
    """A (x) Id_2."""
    rows, cols = len(A), len(A[0]) if A else 0
    out = zeros(2 * rows, 2 * cols)
    for i in range(rows):
        for j in range(cols):
            for t in range(2):
                out[2 * i + t][2 * j + t] = A[i][j]
    return out


__all__ = [
    "FitError",
    "LRepresentation",
    "PolynomialOperatorFamily",
    "RepModule",
    "analyze_rep",
    "compare_actions",
    "compare_reps",
    "constant_term_check",
    "direct_sum",
    "extract_D_operators",
    "fit_polynomials",
    "module_from_rep",
    "nilpotent_flag",
    "nilpotent_rep",
    "rep_from_family",
    "tensor_rep",
    "upper_triangular_check",
    "verify_P_brackets",
]
