"""Weight modules on lattice windows.

A module here is a rule: for every lattice offset ``u`` it knows the dimension
of the weight space at alpha + u and, for every basis symbol of its algebra,
the matrix from that weight space to the one at alpha + u + shift.  A
:class:`Window` picks the finite set of offsets that is actually computed with.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebras import GapVirasoro, SolenoidalAlgebra, WittMu, box, lattice_str
from .linalg import Subspace, identity, is_zero_matrix, matmul, matvec, zeros
from .scalars import SymbolicScalar, format_scalar, inner_product, is_zero, sym
from .torus import TorusPresentation, vadd, vneg

ONE = Fraction(1)


class ModuleError(ValueError):
    pass


# -- Gamma-graded gl_N-modules ------------------------------------------------------


class GradedGlnModule:
    """A Gamma-graded gl_N-module W given by the matrices of X^n, n in Gamma_0."""

    def __init__(self, presentation: TorusPresentation, degrees, actions: dict, kind: str = "custom"):
        self.P = presentation
        self.degrees = [tuple(x) for x in degrees]
        self.dim = len(self.degrees)
        self.actions = {tuple(n): A for n, A in actions.items()}
        self.kind = kind
        self._blocks: dict = {}

    @classmethod
    def regular(cls, presentation: TorusPresentation) -> "GradedGlnModule":
        """M_N(C) under left multiplication, basis X^k (k in Gamma_0) in degree k."""
        reps = list(presentation.gamma_reps)
        index = {k: i for i, k in enumerate(reps)}
        actions = {}
        for s in reps:
            A = zeros(len(reps), len(reps))
            for k in reps:
                A[index[presentation.red(vadd(s, k))]][index[k]] = presentation.sigma(s, k)
            actions[s] = A
        return cls(presentation, reps, actions, kind="regular")

    @classmethod
    def trivial(cls, presentation: TorusPresentation, degree=None) -> "GradedGlnModule":
        """One-dimensional, concentrated in one degree; X^0 acts as 1, everything else as 0."""
        deg = tuple(degree) if degree is not None else (0,) * presentation.d
        actions = {s: [[ONE if not any(s) else Fraction(0)]] for s in presentation.gamma_reps}
        return cls(presentation, [deg], actions, kind="trivial")

    def indices(self, s) -> list:
        return [i for i, k in enumerate(self.degrees) if k == s]

    def graded_dim(self, s) -> int:
        return len(self.indices(s))

    def X(self, n):
        return self.actions[self.P.red(n)]

    def block(self, n, s):
        """Matrix of X^n from W_s to W_{s+n}."""
        key = (self.P.red(n), s)
        hit = self._blocks.get(key)
        if hit is None:
            A = self.actions[key[0]]
            src = self.indices(s)
            dst = self.indices(self.P.red(vadd(s, n)))
            hit = [[A[i][j] for j in src] for i in dst]
            self._blocks[key] = hit
        return hit

    def validate(self) -> dict:
        """Grading, gl_N bracket relations, and graded simplicity."""
        P = self.P
        problems = []
        for s in P.gamma_reps:
            if s not in self.actions:
                problems.append(f"missing action of X^{lattice_str(s)}")
        if problems:
            return {"valid": False, "problems": problems}
        for s, A in self.actions.items():
            if len(A) != self.dim or any(len(r) != self.dim for r in A):
                problems.append(f"X^{lattice_str(s)} has the wrong shape")
                continue
            for i, j in product(range(self.dim), repeat=2):
                if not is_zero(A[i][j]) and self.degrees[i] != P.red(vadd(s, self.degrees[j])):
                    problems.append(f"X^{lattice_str(s)} breaks the grading at ({i},{j})")
                    break
        if not problems:
            for m, n in product(P.gamma_reps, repeat=2):
                lhs = _commutator(self.actions[m], self.actions[n])
                c = P.commutator_coeff(m, n)
                rhs = [[c * x for x in row] for row in self.actions[P.red(vadd(m, n))]]
                if any(not is_zero(a - b) for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb)):
                    problems.append(f"bracket relation fails for X^{lattice_str(m)}, X^{lattice_str(n)}")
        simple = graded_simple([self.actions[s] for s in P.gamma_reps], self.degrees) if not problems else False
        unital = not problems and _is_identity(self.actions[(0,) * P.d])
        return {"valid": not problems, "problems": problems, "graded_simple": simple, "unital": unital}

    def describe(self) -> dict:
        return {"type": self.kind, "dim": self.dim, "degrees": [lattice_str(s) for s in self.degrees]}


def _commutator(A, B):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(matmul(A, B), matmul(B, A))]


def _is_identity(A) -> bool:
    return all(is_zero(A[i][j] - (1 if i == j else 0)) for i in range(len(A)) for j in range(len(A)))


def graded_simple(operators: list, degrees: list) -> bool:
    """Every nonzero homogeneous vector generates the whole space.

    Builds the associative algebra A generated by ``operators`` (with the
    identity) and checks that each diagonal block A_kk is all of End(U_k) and
    each off-diagonal block A_k'k is nonzero.
    """
    n = len(degrees)
    if n == 0:
        return False
    alg = Subspace(n * n)
    frontier = []
    I = identity(n)
    alg.add(_flat(I))
    frontier.append(I)
    while frontier:
        M = frontier.pop()
        for G in operators:
            prod_ = matmul(G, M)
            if alg.add(_flat(prod_)):
                frontier.append(prod_)
    classes = sorted(set(degrees))
    idx = {c: [i for i, dgr in enumerate(degrees) if dgr == c] for c in classes}
    basis = [_unflat(v, n) for v in alg.basis()]
    for c1 in classes:
        for c2 in classes:
            blocks = [[[M[i][j] for j in idx[c2]] for i in idx[c1]] for M in basis]
            sub = Subspace(len(idx[c1]) * len(idx[c2]))
            for B in blocks:
                sub.add(_flat(B))
            if c1 == c2 and not sub.is_full():
                return False
            if c1 != c2 and len(sub) == 0:
                return False
    return True


def _flat(M) -> list:
    return [x for row in M for x in row]


def _unflat(v, n) -> list:
    return [v[i * n:(i + 1) * n] for i in range(n)]


# -- F matrices for Vir_p ---------------------------------------------------------------


@dataclass(frozen=True)
class FMatrix:
    """Entries f[i-1][j] = f_{i,j} for 1 <= i <= p-1, 0 <= j <= p-1."""

    p: int
    entries: tuple

    def f(self, i: int, j: int):
        return self.entries[i - 1][j % self.p]

    def support(self) -> list:
        return sorted({j for j in range(self.p) for i in range(1, self.p) if not is_zero(self.f(i, j))})

    def to_json(self):
        return [[format_scalar(x) for x in row] for row in self.entries]


def make_F(p: int, rows) -> FMatrix:
    from .scalars import parse_scalar

    conv = tuple(tuple(parse_scalar(x) if isinstance(x, str) else (Fraction(x) if isinstance(x, int) else x) for x in row) for row in rows)
    return FMatrix(p, conv)


def validate_F(F: FMatrix) -> dict:
    p = F.p
    if len(F.entries) != p - 1 or any(len(r) != p for r in F.entries):
        return {"valid": False, "condition": "shape", "detail": f"expected {p - 1}x{p}"}
    o = F.support()
    if 0 not in o:
        return {"valid": False, "condition": "I", "detail": "0 is not in the support o(F)"}
    for i in range(1, p):
        for j in range(p):
            if not is_zero(F.f(i, j)) and (i + j) % p not in o:
                return {"valid": False, "condition": "II", "indices": [i, j],
                        "detail": f"f_{i},{j} != 0 but column {(i + j) % p} is zero"}
    for i in range(p):
        for r in range(1, p):
            for s in range(1, p):
                if not is_zero(F.f(r, i + s) * F.f(s, i) - F.f(s, i + r) * F.f(r, i)):
                    return {"valid": False, "condition": "III", "indices": [i, r, s],
                            "detail": f"f_{r},{(i + s) % p} f_{s},{i} != f_{s},{(i + r) % p} f_{r},{i}"}
    return {"valid": True, "support": o}


def all_F_patterns(p: int) -> list:
    """Every valid F with entries in {0, 1}."""
    out = []
    for bits in product((0, 1), repeat=(p - 1) * p):
        rows = tuple(tuple(Fraction(bits[(i) * p + j]) for j in range(p)) for i in range(p - 1))
        F = FMatrix(p, rows)
        if validate_F(F)["valid"]:
            out.append(F)
    return out


# -- windows --------------------------------------------------------------------------


class Window:
    """Offsets u = s + diag(steps) a with s in ``reps`` and |a_i| <= B."""

    def __init__(self, steps, reps, B: int):
        if B < 0:
            raise ModuleError("degenerate window")
        self.steps = tuple(steps)
        self.reps = tuple(sorted(tuple(r) for r in reps))
        self._repset = set(self.reps)
        self.B = B
        pts = []
        for a in product(range(-B, B + 1), repeat=len(self.steps)):
            for s in self.reps:
                pts.append(tuple(si + st * ai for si, st, ai in zip(s, self.steps, a)))
        self.points = sorted(pts)
        self._set = set(self.points)

    def __contains__(self, u) -> bool:
        return tuple(u) in self._set

    def radius(self, u) -> int:
        return max((abs((x - (x % st)) // st) for x, st in zip(u, self.steps)), default=0)

    def inner(self, margin: int) -> "Window":
        if self.B - margin < 0:
            raise ModuleError("degenerate window: inner window is empty")
        return Window(self.steps, self.reps, self.B - margin)

    def describe(self) -> dict:
        return {"B": self.B, "steps": list(self.steps), "points": len(self.points)}


# -- modules ----------------------------------------------------------------------------


class WeightModule:
    """Base class; subclasses define ``dim``, ``_act``, ``shift`` and the generator sets."""

    algebra = None
    steps: tuple = ()
    reps: tuple = ()
    has_z = False

    def __init__(self):
        self._cache: dict = {}

    def dim(self, u) -> int:
        raise NotImplementedError

    def shift(self, symbol) -> tuple:
        return tuple(symbol[1])

    def _act(self, symbol, u):
        raise NotImplementedError

    def act(self, symbol, u):
        """Matrix of ``symbol`` from the weight space at u to the one at u + shift."""
        key = (symbol, u)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._act(symbol, u)
            self._cache[key] = hit
        return hit

    def act_z(self, m, u):
        if not self.has_z:
            raise ModuleError("module has no torus-centre action")
        return identity(self.dim(u))

    def window(self, B: int) -> Window:
        return Window(self.steps, self.reps, B)

    def generators(self) -> list:
        raise NotImplementedError

    def axiom_generators(self) -> list:
        return self.generators()

    def z_generators(self) -> list:
        return []

    def z_bracket(self, x, m, u):
        """[x, t^m] acting from u; zero unless a subclass says otherwise."""
        t = vadd(vadd(u, self.shift(x)), m)
        return zeros(self.dim(t), self.dim(u))

    def describe(self) -> dict:
        return {}

    def basis(self, window: Window) -> list:
        return [(u, i) for u in window.points for i in range(self.dim(u))]


def _scalar_matrix(c, n):
    return [[c if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def _parse_param(x, name):
    from .scalars import parse_scalar

    if isinstance(x, (SymbolicScalar, Fraction)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if x == "sym":
        return sym(name)
    return parse_scalar(str(x))


def param_vector(values, prefix: str, d: int) -> tuple:
    """Parameters from config strings: "sym" becomes the indeterminate prefix_i."""
    if values is None or values == "sym":
        values = ["sym"] * d
    if len(values) != d:
        raise ModuleError(f"{prefix} needs {d} entries")
    return tuple(_parse_param(v, f"{prefix}{i + 1}") for i, v in enumerate(values))


def param_scalar(value, name: str):
    return _parse_param("sym" if value is None else value, name)


class SolenoidalZModule(WeightModule):
    """Shared centre-action law for modules over the solenoidal algebra."""

    has_z = True

    def z_bracket(self, x, m, u):
        if self.P.in_radical(self.shift(x)):
            c = inner_product(self.gamma, m)
            return [[c * v for v in row] for row in self.act_z(vadd(m, self.shift(x)), u)]
        return super().z_bracket(x, m, u)


class TensorFieldModule(SolenoidalZModule):
    """V(alpha, beta, W) over the solenoidal algebra, with the torus-centre action."""

    has_z = True

    def __init__(self, presentation: TorusPresentation, alpha, beta, W: GradedGlnModule, gamma=None):
        super().__init__()
        report = W.validate()
        if not report["valid"]:
            raise ModuleError("invalid W: " + "; ".join(report["problems"]))
        self.P = presentation
        self.algebra = SolenoidalAlgebra(presentation, gamma)
        self.gamma = self.algebra.gamma
        self.alpha = tuple(alpha)
        self.beta = beta
        self.W = W
        self.steps = presentation.steps
        self.reps = presentation.gamma_reps
        self._ga = inner_product(self.gamma, self.alpha)

    def dim(self, u) -> int:
        return self.W.graded_dim(self.P.red(u))

    def _act(self, symbol, u):
        m = symbol[1]
        s = self.P.red(u)
        if self.P.in_radical(m):
            c = self._ga + inner_product(self.gamma, u) + self.beta * inner_product(self.gamma, m)
            return _scalar_matrix(c, self.dim(u))
        return self.W.block(m, s)

    def generators(self) -> list:
        rb = self.P.radical_basis()
        gens = [("L", b) for b in rb] + [("L", vneg(b)) for b in rb]
        gens += [("L", s) for s in self.P.gamma_reps if any(s)]
        return gens

    def axiom_generators(self) -> list:
        pts = set(self.P.gamma_reps) | set(self.P.radical_basis())
        pts |= {vneg(p) for p in pts}
        return [("L", p) for p in sorted(pts)]

    def z_generators(self) -> list:
        rb = self.P.radical_basis()
        return rb + [vneg(b) for b in rb]

    def describe(self) -> dict:
        return {
            "module": "V(alpha,beta,W)",
            "presentation": self.P.to_dict(),
            "alpha": [format_scalar(a) for a in self.alpha],
            "beta": format_scalar(self.beta),
            "W": self.W.describe(),
        }


class TensorModuleWmu(WeightModule):
    """T(alpha, beta) over W_mu: x^m D . v_s = (mu | alpha + s + beta m) v_(m+s)."""

    has_z = True

    def __init__(self, mu, alpha, beta):
        super().__init__()
        self.mu = tuple(mu)
        self.d = len(self.mu)
        self.algebra = WittMu(self.mu)
        self.alpha = tuple(alpha)
        self.beta = beta
        self.steps = (1,) * self.d
        self.reps = ((0,) * self.d,)
        self._ma = inner_product(self.mu, self.alpha)

    def dim(self, u) -> int:
        return 1

    def _act(self, symbol, u):
        m = symbol[1]
        return [[self._ma + inner_product(self.mu, u) + self.beta * inner_product(self.mu, m)]]

    def generators(self) -> list:
        out = []
        for i in range(self.d):
            e = tuple(1 if j == i else 0 for j in range(self.d))
            out += [("W", e), ("W", vneg(e))]
        return out

    def axiom_generators(self) -> list:
        return [("W", m) for m in box(self.d, 1)]

    def z_generators(self) -> list:
        return [g[1] for g in self.generators()]

    def z_bracket(self, x, m, u):
        c = inner_product(self.mu, m)
        return [[c * v for v in row] for row in self.act_z(vadd(m, self.shift(x)), u)]

    def describe(self) -> dict:
        return {
            "module": "T(alpha,beta)",
            "mu": [format_scalar(x) for x in self.mu],
            "alpha": [format_scalar(a) for a in self.alpha],
            "beta": format_scalar(self.beta),
        }


class VirpModule(WeightModule):
    """V(a, b, F) over Vir_p on the classes o(F); central symbols act as zero."""

    def __init__(self, a, b, F: FMatrix):
        super().__init__()
        report = validate_F(F)
        if not report["valid"]:
            raise ModuleError(f"invalid F: condition {report['condition']} ({report['detail']})")
        self.p = F.p
        self.F = F
        self.a, self.b = a, b
        self.algebra = GapVirasoro(F.p)
        self.support = tuple(F.support())
        self.steps = (F.p,)
        self.reps = tuple((j,) for j in self.support)

    def dim(self, u) -> int:
        return 1 if u[0] % self.p in self.support else 0

    def shift(self, symbol):
        return (0,) if symbol[0] == "C" else (symbol[1],)

    def _act(self, symbol, u):
        n_out = self.dim(vadd(u, self.shift(symbol)))
        n_in = self.dim(u)
        if symbol[0] == "C" or not n_in or not n_out:
            if symbol[0] == "x" and n_in and not is_zero(self.F.f(symbol[1] % self.p, u[0])):
                raise ModuleError("x^s leaves the support of F")
            return zeros(n_out, n_in)
        if symbol[0] == "D":
            m = symbol[1]
            return [[self.a + u[0] + m * self.b]]
        s = symbol[1]
        return [[self.F.f(s % self.p, u[0])]]

    def generators(self) -> list:
        p = self.p
        return [("D", p), ("D", -p)] + [("x", s) for s in range(1, p)] + [("x", -s) for s in range(1, p)]

    def axiom_generators(self) -> list:
        out = []
        for m in range(-self.p - 1, self.p + 2):
            out.append(("D", m) if m % self.p == 0 else ("x", m))
        return out + sorted({self.algebra.central(i) for i in range(self.p)})

    def describe(self) -> dict:
        return {"module": "V(a,b,F)", "p": self.p, "a": format_scalar(self.a), "b": format_scalar(self.b), "F": self.F.to_json()}


# -- verification -------------------------------------------------------------------------


def _sub(A, B):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(A, B)]


def _add_into(A, B, c=ONE):
    return [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(A, B)]


def verify_module_axioms(M: WeightModule, B: int, generators=None) -> dict:
    """[x, y] v = x(y v) - y(x v) on every in-window weight block, plus the Z-action laws."""
    win = M.window(B)
    gens = generators or M.axiom_generators()
    alg = M.algebra
    violations = []
    checked = 0
    shape_errors = []
    for u in win.points:
        n = M.dim(u)
        if not n:
            continue
        for x in gens:
            A = M.act(x, u)
            if len(A) != M.dim(vadd(u, M.shift(x))) or (A and len(A[0]) != n):
                shape_errors.append([alg.symbol_str(x), lattice_str(u)])
        for x, y in product(gens, repeat=2):
            ux, uy = vadd(u, M.shift(x)), vadd(u, M.shift(y))
            uxy = vadd(ux, M.shift(y))
            if ux not in win or uy not in win or uxy not in win:
                continue
            checked += 1
            lhs = _sub(matmul(M.act(x, uy), M.act(y, u)), matmul(M.act(y, ux), M.act(x, u)))
            rhs = zeros(M.dim(uxy), n)
            for s, c in alg.bracket_basis(x, y).items():
                rhs = _add_into(rhs, M.act(s, u), c)
            if not is_zero_matrix(_sub(lhs, rhs)):
                violations.append({"x": alg.symbol_str(x), "y": alg.symbol_str(y), "weight": lattice_str(u)})
    z_checked, z_violations = 0, []
    if M.has_z:
        zg = M.z_generators()
        for u in win.points:
            n = M.dim(u)
            if not n:
                continue
            for m1, m2 in product(zg, repeat=2):
                u1, u12 = vadd(u, m1), vadd(vadd(u, m1), m2)
                if u1 not in win or u12 not in win:
                    continue
                z_checked += 1
                if not is_zero_matrix(_sub(matmul(M.act_z(m2, u1), M.act_z(m1, u)), M.act_z(vadd(m1, m2), u))):
                    z_violations.append({"kind": "associativity", "m": lattice_str(m1), "n": lattice_str(m2), "weight": lattice_str(u)})
            for x in gens:
                for m in zg:
                    ux, um = vadd(u, M.shift(x)), vadd(u, m)
                    uxm = vadd(ux, m)
                    if ux not in win or um not in win or uxm not in win:
                        continue
                    z_checked += 1
                    lhs = _sub(matmul(M.act(x, um), M.act_z(m, u)), matmul(M.act_z(m, ux), M.act(x, u)))
                    rhs = M.z_bracket(x, m, u)
                    if not is_zero_matrix(_sub(lhs, rhs)):
                        z_violations.append({"kind": "derivation", "x": alg.symbol_str(x), "m": lattice_str(m), "weight": lattice_str(u)})
    report = M.describe()
    report.update({
        "window": win.describe(),
        "triples_checked": checked,
        "violations": violations + z_violations,
        "shape_errors": shape_errors,
        "z_checks": z_checked,
    })
    return report


# -- reachability ---------------------------------------------------------------------------


def _reach(M: WeightModule, win: Window, inner: Window, gens: list):
    points = [u for u in win.points if M.dim(u)]
    edges = {u: [] for u in points}
    for u in points:
        for g in gens:
            t = vadd(u, M.shift(g))
            if t in win and M.dim(t):
                A = M.act(g, u)
                if not is_zero_matrix(A):
                    edges[u].append((t, A))
    one_dim = all(M.dim(u) == 1 for u in points)
    inner_pts = [u for u in inner.points if M.dim(u)]
    results = []
    for u0 in inner_pts:
        for i in range(M.dim(u0)):
            if one_dim:
                seen = {u0}
                stack = [u0]
                while stack:
                    u = stack.pop()
                    for t, _ in edges[u]:
                        if t not in seen:
                            seen.add(t)
                            stack.append(t)
                span = {u: [[ONE]] for u in seen}
            else:
                subs: dict = {}
                v = [ONE if j == i else Fraction(0) for j in range(M.dim(u0))]
                subs[u0] = Subspace(M.dim(u0))
                subs[u0].add(v)
                stack = [(u0, subs[u0].rows[-1])]
                while stack:
                    u, v = stack.pop()
                    for t, A in edges[u]:
                        w = matvec(A, v)
                        sp = subs.get(t)
                        if sp is None:
                            sp = subs[t] = Subspace(M.dim(t))
                        if sp.add(w):
                            stack.append((t, sp.rows[-1]))
                span = {u: sp.basis() for u, sp in subs.items() if len(sp)}
            restricted = {u: rows for u, rows in span.items() if u in inner}
            full = all(len(restricted.get(u, [])) == M.dim(u) for u in inner_pts)
            results.append(((u0, i), restricted, full))
    return results, inner_pts


def _witness(results):
    failing = [r for r in results if not r[2]]
    if not failing:
        return None
    return min(failing, key=lambda r: (sum(len(v) for v in r[1].values()), r[0]))


def _span_key(span: dict, keep: Window) -> tuple:
    return tuple(sorted((u, tuple(tuple(format_scalar(x) for x in row) for row in rows)) for u, rows in span.items() if u in keep))


def reachability_irreducible(M: WeightModule, B: int, margin: int = 1, generators=None) -> dict:
    """Windowed irreducibility oracle: every inner basis vector must reach all inner weights.

    The decision is repeated on a window one step larger; a verdict (or
    witness) that changes is reported as inconclusive.
    """
    if margin < 1:
        raise ModuleError("inner margin must be >= 1")
    gens = generators or M.generators()
    runs = []
    for b in (B, B + 1):
        win = M.window(b)
        inner = win.inner(margin)
        if not any(M.dim(u) for u in inner.points):
            raise ModuleError("degenerate window: inner window has no vectors")
        results, inner_pts = _reach(M, win, inner, gens)
        runs.append((win, inner, results, _witness(results)))
    (w0, in0, res0, wit0), (w1, in1, res1, wit1) = runs
    report = M.describe()
    report.update({"window": w0.describe(), "margin": margin, "starts_checked": len(res0)})
    if wit0 is None and wit1 is None:
        report["verdict"] = "window_irreducible"
        return report
    if wit0 is not None and wit1 is not None:
        # the same start vector must fail in the larger window with the same span on the smaller inner window
        again = next((r for r in res1 if r[0] == wit0[0]), None)
        if again is not None and not again[2] and _span_key(again[1], in0) == _span_key(wit0[1], in0):
            report["verdict"] = "reducible"
            report["witness"] = _witness_json(M, wit0, in0)
            report["witness_invariant"] = _check_invariance(M, wit0[1], in0)
            return report
    report["verdict"] = "inconclusive"
    report["reason"] = "verdict or witness changed when the window was enlarged"
    return report


def _witness_json(M, wit, inner: Window) -> dict:
    (u0, i), span, _ = wit
    inner_pts = [u for u in inner.points if M.dim(u)]
    total = sum(M.dim(u) for u in inner_pts)
    got = sum(len(v) for v in span.values())
    missing = [lattice_str(u) for u in inner_pts if len(span.get(u, [])) < M.dim(u)]
    return {
        "start": {"offset": lattice_str(u0), "index": i},
        "span": {lattice_str(u): [[format_scalar(x) for x in row] for row in rows] for u, rows in sorted(span.items())},
        "span_dim": got,
        "inner_dim": total,
        "codim": total - got,
        "weights_not_reached": missing,
    }


def _check_invariance(M, span: dict, inner: Window) -> dict:
    """Apply every axiom generator to the witness span; results inside the inner window must stay in it."""
    checked, bad = 0, []
    for u, rows in span.items():
        for g in M.axiom_generators():
            t = vadd(u, M.shift(g))
            if t not in inner or not M.dim(t):
                continue
            A = M.act(g, u)
            target = Subspace(M.dim(t))
            for r in span.get(t, []):
                target.add(r)
            for r in rows:
                checked += 1
                if not target.contains(matvec(A, r)):
                    bad.append({"generator": M.algebra.symbol_str(g), "offset": lattice_str(u)})
    return {"checked": checked, "violations": bad}


def _is_integer(x) -> bool:
    if isinstance(x, SymbolicScalar):
        if not x.is_constant():
            return False
        x = x.constant_value()
    return isinstance(x, Fraction) and x.denominator == 1


def reducibility_criterion(alpha, beta, dim_W: int, presentation: TorusPresentation | None = None, degree=None) -> bool:
    """Closed-form reducibility test for V(alpha, beta, W).

    Reducible iff dim W == 1, alpha is integral and beta in {0, 1}.  When the
    torus is noncommutative and W sits in degree s, integrality is tested for
    alpha + s modulo R rather than modulo Z^d, since only the weights alpha + s + R
    occur.
    """
    if dim_W != 1:
        return False
    if not all(_is_integer(a) for a in alpha):
        return False
    b = beta
    if isinstance(b, SymbolicScalar):
        if not b.is_constant():
            return False
        b = b.constant_value()
    if b not in (0, 1):
        return False
    if presentation is not None and presentation.z > 0:
        s = tuple(degree) if degree is not None else (0,) * presentation.d
        ints = [int(a.constant_value() if isinstance(a, SymbolicScalar) else a) for a in alpha]
        return presentation.in_radical(vadd(tuple(ints), s))
    return True


__all__ = [
    "FMatrix",
    "GradedGlnModule",
    "ModuleError",
    "SolenoidalZModule",
    "TensorFieldModule",
    "TensorModuleWmu",
    "VirpModule",
    "WeightModule",
    "Window",
    "all_F_patterns",
    "reducibility_criterion",
    "graded_simple",
    "make_F",
    "param_scalar",
    "param_vector",
    "reachability_irreducible",
    "validate_F",
    "verify_module_axioms",
]
