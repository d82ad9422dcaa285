"""Windowed version of the centre cover (g'_R (x) M) / J.

Tensor vectors live in ``g'_R (x) M`` with g'_R = span{L_s : s not in R} and are
stored as ``{(s, u): coefficient list}``, where ``u`` is an M offset.  For a
fixed weight w, the map

    Phi_w(sum L_s (x) v_s) = (sum_s L_(n+s) v_s)  for n in the R-window

defines window-J = ker Phi_w.  The cover at w is the quotient, of dimension
rank Phi_w, and pi is the n = 0 component of Phi_w.  Because constraints are
only imposed for n in a finite window, window-J can only be larger than the
true J.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Subspace, matmul, zeros
from .scalars import inner_product, is_zero
from .tensor_modules import ModuleError, SolenoidalZModule, WeightModule
from .torus import vadd, vsub
from .algebras import lattice_str


class ZeroModule(SolenoidalZModule):
    """The zero module over the solenoidal algebra."""

    def __init__(self, presentation, gamma=None):
        super().__init__()
        from .algebras import SolenoidalAlgebra

        self.P = presentation
        self.algebra = SolenoidalAlgebra(presentation, gamma)
        self.gamma = self.algebra.gamma
        self.steps = presentation.steps
        self.reps = presentation.gamma_reps

    def dim(self, u) -> int:
        return 0

    def _act(self, symbol, u):
        return []

    def generators(self) -> list:
        return [("L", b) for b in self.P.radical_basis()] + [("L", s) for s in self.P.gamma_reps if any(s)]

    def describe(self) -> dict:
        return {"module": "zero", "presentation": self.P.to_dict()}


def _vec_add(acc: dict, key, vec, c=Fraction(1)):
    cur = acc.get(key)
    if cur is None:
        acc[key] = [c * x for x in vec]
    else:
        acc[key] = [a + c * x for a, x in zip(cur, vec)]


def _msub(A, B):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(A, B)]


def _col(A, v):
    return [sum((a * x for a, x in zip(row, v) if not is_zero(a) and not is_zero(x)), Fraction(0)) for row in A]


class TensorSpace:
    """g'_R (x) M restricted to s and u in the window of radius B."""

    def __init__(self, M: WeightModule, B: int):
        if not M.has_z or not isinstance(M, SolenoidalZModule):
            raise ModuleError("the cover needs a module with an associative centre action")
        self.M = M
        self.P = M.P
        self.B = B
        self.window = M.window(B)
        self.S = [s for s in self.window.points if not self.P.in_radical(s)]
        self.N = [n for n in self.window.points if self.P.in_radical(n)]

    # -- bookkeeping ---------------------------------------------------------------
    def columns(self, w) -> list:
        """Coordinates (s, u, i) of the tensor weight space at offset w."""
        out = []
        for s in self.S:
            u = vsub(w, s)
            if u in self.window:
                out += [(s, u, i) for i in range(self.M.dim(u))]
        return out

    def dim(self, w) -> int:
        return len(self.columns(w))

    def _bracket(self, m, s) -> dict:
        return self.M.algebra.bracket_basis(("L", m), ("L", s))

    # -- actions -----------------------------------------------------------------
    def act(self, m, vec: dict) -> dict:
        """L_m (L_s (x) v) = [L_m, L_s] (x) v + L_s (x) L_m v."""
        out: dict = {}
        for (s, u), v in vec.items():
            for sym, c in self._bracket(m, s).items():
                _vec_add(out, (sym[1], u), v, c)
            _vec_add(out, (s, vadd(u, m)), _col(self.M.act(("L", m), u), v))
        return {k: x for k, x in out.items() if any(not is_zero(y) for y in x)}

    def z_act(self, n, vec: dict) -> dict:
        """t^n (L_s (x) v) = L_(n+s) (x) v."""
        if not self.P.in_radical(n):
            raise ValueError("t^n is central only for n in R")
        return {(vadd(n, s), u): list(v) for (s, u), v in vec.items()}

    def pi(self, vec: dict) -> dict:
        out: dict = {}
        for (s, u), v in vec.items():
            _vec_add(out, vadd(u, s), _col(self.M.act(("L", s), u), v))
        return out

    def basis_vector(self, s, u, i) -> dict:
        n = self.M.dim(u)
        return {(s, u): [Fraction(1) if j == i else Fraction(0) for j in range(n)]}

    # -- constraints -------------------------------------------------------------
    def phi_rows(self, w, ns=None):
        """Rows of Phi_w as functionals on the coordinates of ``columns(w)``."""
        cols = self.columns(w)
        act = self.M.act
        dim = self.M.dim
        for n in (self.N if ns is None else ns):
            rows = [[] for _ in range(dim(vadd(w, n)))]
            if rows:
                for s, u, j in cols:
                    A = act(("L", vadd(n, s)), u)
                    for i, row in enumerate(rows):
                        row.append(A[i][j])
            for row in rows:
                yield n, row

    def constraint_space(self, w, ns=None) -> Subspace:
        sub = Subspace(self.dim(w))
        seen = set()
        for _, row in self.phi_rows(w, ns):
            if sub.is_full():
                break
            key = tuple(row)
            if key in seen:
                continue
            seen.add(key)
            sub.add(row)
        return sub


def compute_J(space: TensorSpace, w) -> dict:
    """window-J at weight offset w, given as a basis of column vectors over ``columns(w)``."""
    cols = space.columns(w)
    sub = space.constraint_space(w)
    free = [c for c in range(len(cols)) if c not in sub.pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * len(cols)
        v[f] = Fraction(1)
        for row, p in zip(sub.rows, sub.pivots):
            v[p] = -row[f]
        basis.append(v)
    return {"columns": cols, "constraints": sub, "basis": basis}


class CoverWindow:
    """Cover data at window radius B with an inner margin for the reported weights."""

    def __init__(self, M: WeightModule, B: int, margin: int = 1):
        self.M = M
        self.space = TensorSpace(M, B)
        self.B = B
        self.inner = self.space.window.inner(margin)
        self._cons: dict = {}

    def constraints(self, w) -> Subspace:
        hit = self._cons.get(w)
        if hit is None:
            hit = self._cons[w] = self.space.constraint_space(w)
        return hit

    def hat_dim(self, w) -> int:
        return len(self.constraints(w))

    def J_dim(self, w) -> int:
        return self.space.dim(w) - self.hat_dim(w)

    def pi_rank(self, w) -> int:
        sub = Subspace(self.space.dim(w))
        for _, row in self.space.phi_rows(w, [tuple(0 for _ in w)]):
            sub.add(row)
        return len(sub)

    def J_in_ker_pi(self, w) -> bool:
        """Every pi row lies in the row space of Phi_w, i.e. ker Phi_w is inside ker pi."""
        cons = self.constraints(w)
        return all(cons.contains(row) for _, row in self.space.phi_rows(w, [tuple(0 for _ in w)]))

    def hat_action(self, m, w):
        """Matrix of L_m from the cover at w to the cover at w + m, in quotient coordinates."""
        src = self.constraints(w)
        tgt_w = vadd(w, m)
        tgt = self.constraints(tgt_w)
        cols = self.space.columns(w)
        tcols = {c: i for i, c in enumerate(self.space.columns(tgt_w))}
        out = zeros(len(tgt), len(src))
        for j, p in enumerate(src.pivots):
            s, u, i = cols[p]
            img = self.space.act(m, self.space.basis_vector(s, u, i))
            full = [Fraction(0)] * len(tcols)
            for (s2, u2), v in img.items():
                for i2, c in enumerate(v):
                    if is_zero(c):
                        continue
                    key = (s2, u2, i2)
                    if key not in tcols:
                        raise ValueError(f"image leaves the tensor window at {lattice_str(s2)}")
                    full[tcols[key]] = c
            # quotient coordinates of a vector x are Phi_w-row coordinates: value at the pivots after reduction
            red = [Fraction(0)] * len(tgt)
            for r, (row, _) in enumerate(zip(tgt.rows, tgt.pivots)):
                red[r] = sum((a * x for a, x in zip(row, full) if not is_zero(a) and not is_zero(x)), Fraction(0))
            for r in range(len(tgt)):
                out[r][j] = red[r]
        return out

    # -- checks ----------------------------------------------------------------
    def homomorphism_residual(self, generators=None, weights=None) -> dict:
        """pi(L_m x) - L_m pi(x) on the tensor blocks L_s (x) M_u at the given weights.

        Computed blockwise: sum_c c L_(m+s) + L_s L_m - L_m L_s restricted to M_u.
        """
        M, sp = self.M, self.space
        gens = generators or M.axiom_generators()
        bad, checked = [], 0
        for w in weights if weights is not None else self.inner.points:
            for s in sp.S:
                u = vsub(w, s)
                if u not in sp.window or not M.dim(u):
                    continue
                for g in gens:
                    m = g[1]
                    checked += 1
                    res = _msub(matmul(M.act(("L", s), vadd(u, m)), M.act(g, u)),
                                matmul(M.act(g, vadd(u, s)), M.act(("L", s), u)))
                    for sym, c in sp._bracket(m, s).items():
                        A = M.act(sym, u)
                        res = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(res, A)]
                    if any(not is_zero(x) for row in res for x in row):
                        bad.append({"weight": lattice_str(w), "s": lattice_str(s), "u": lattice_str(u),
                                    "generator": M.algebra.symbol_str(g)})
        return {"checked": checked, "violations": bad}

    def J_invariance(self, generators=None, weights=None) -> dict:
        """L_m(window-J at w) satisfies the constraints at w + m for n in the window shrunk by one step."""
        M, sp = self.M, self.space
        gens = generators or M.axiom_generators()
        inner_N = [n for n in sp.N if n in sp.window.inner(1)]
        bad, checked = [], 0
        for w in weights if weights is not None else self.inner.points:
            cons = self.constraints(w)
            cols = sp.columns(w)
            for g in gens:
                m = g[1]
                t = vadd(w, m)
                for n in inner_N:
                    for i in range(M.dim(vadd(t, n))):
                        row = []
                        for s, u, j in cols:
                            val = Fraction(0)
                            for sym, c in sp._bracket(m, s).items():
                                val = val + c * M.act(("L", vadd(n, sym[1])), u)[i][j]
                            B1 = M.act(("L", vadd(n, s)), vadd(u, m))
                            A = M.act(g, u)
                            for k in range(len(A)):
                                if not is_zero(B1[i][k]) and not is_zero(A[k][j]):
                                    val = val + B1[i][k] * A[k][j]
                            row.append(val)
                        checked += 1
                        if not cons.contains(row):
                            bad.append({"weight": lattice_str(w), "generator": M.algebra.symbol_str(g), "n": lattice_str(n)})
        return {"checked": checked, "violations": bad}

    def z_compatibility(self, weights=None) -> dict:
        """[L_m, t^n] = (gamma|n) t^(m+n) for m in R and [L_r, t^n] = 0 otherwise, plus associativity of t."""
        M, sp = self.M, self.space
        P = M.P
        rb = P.radical_basis()
        zs = rb + [tuple(-x for x in b) for b in rb]
        bad, checked = [], 0
        for w in weights if weights is not None else self.inner.points:
            for s, u, i in sp.columns(w):
                x = sp.basis_vector(s, u, i)
                for n in zs:
                    for n2 in zs:
                        checked += 1
                        if sp.z_act(n, sp.z_act(n2, x)) != sp.z_act(vadd(n, n2), x):
                            bad.append({"kind": "associativity", "weight": lattice_str(w)})
                    for g in M.axiom_generators():
                        m = g[1]
                        checked += 1
                        lhs = sp.act(m, sp.z_act(n, x))
                        tmp = sp.z_act(n, sp.act(m, x))
                        for k, v in tmp.items():
                            _vec_add(lhs, k, v, Fraction(-1))
                        if P.in_radical(m):
                            for k, v in sp.z_act(vadd(m, n), x).items():
                                _vec_add(lhs, k, v, -inner_product(M.gamma, n))
                        if any(not is_zero(y) for v in lhs.values() for y in v):
                            bad.append({"kind": "centre bracket", "weight": lattice_str(w), "generator": M.algebra.symbol_str(g)})
        return {"checked": checked, "violations": bad}

    def report(self) -> dict:
        rows = []
        surjective = True
        J_ok = True
        for w in self.inner.points:
            md = self.M.dim(w)
            pr = self.pi_rank(w) if md else 0
            inc = self.J_in_ker_pi(w)
            J_ok &= inc
            surjective &= pr == md
            rows.append({"weight": lattice_str(w), "tensor_dim": self.space.dim(w), "J_dim": self.J_dim(w),
                         "hat_dim": self.hat_dim(w), "pi_rank": pr, "M_dim": md, "J_in_ker_pi": inc})
        return {
            "B": self.B,
            "inner_window": self.inner.describe(),
            "J_label": "window-J (constraints for n in the R-window only)",
            "weights": rows,
            "J_in_ker_pi": J_ok,
            "pi_surjective_inner": surjective,
            "max_hat_multiplicity": max((r["hat_dim"] for r in rows), default=0),
        }


def build_cover(M: WeightModule, B: int, margin: int = 1) -> CoverWindow:
    return CoverWindow(M, B, margin)


def cuspidality_probe(M: WeightModule, sizes=(2, 3, 4), margin: int = 1, covers: dict | None = None) -> dict:
    """Maximal inner multiplicity of the cover per window size; passes if the two largest agree.

    ``covers`` may map window sizes to already computed :class:`CoverWindow` objects.
    """
    sizes = sorted(sizes)
    if M.P.z == 0:
        return {"branch": "z=0", "detail": "g'_R = 0, so the tensor space and the cover vanish",
                "sizes": sizes, "max_multiplicity": {str(b): 0 for b in sizes}, "bounded": True}
    table = {}
    for b in sizes:
        cw = covers.get(b) if covers else None
        cw = cw or CoverWindow(M, b, margin)
        table[str(b)] = max((cw.hat_dim(w) for w in cw.inner.points), default=0)
    last = [table[str(b)] for b in sizes[-2:]]
    return {"branch": "general", "sizes": sizes, "max_multiplicity": table, "bounded": len(set(last)) == 1}


__all__ = [
    "CoverWindow",
    "TensorSpace",
    "ZeroModule",
    "build_cover",
    "compute_J",
    "cuspidality_probe",
]
