"""Acceptance suite: one test per criterion, each with its runtime budget.

Each test writes a single ``[criterion N] PASS|FAIL`` line to the terminal,
whether or not output capture is on.
"""

import json
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import product

import pytest

from oracles import cyclotomic_as_poly, reduce_matrix, torus_matrix
from soltorus.algebras import DerivationAlgebra, GapVirasoro, GlDGamma, GlN, SolenoidalAlgebra, lattice_str, verify_lie_axioms
from soltorus.correspondence import (
    analyze_rep,
    compare_actions,
    constant_term_check,
    direct_sum,
    extract_D_operators,
    fit_polynomials,
    module_from_rep,
    rep_from_family,
    tensor_rep,
    verify_P_brackets,
)
from soltorus.cover import build_cover, cuspidality_probe
from soltorus.scalars import is_zero, sym
from soltorus.tensor_modules import (
    GradedGlnModule,
    TensorFieldModule,
    TensorModuleWmu,
    VirpModule,
    all_F_patterns,
    reducibility_criterion,
    param_scalar,
    param_vector,
    reachability_irreducible,
    verify_module_axioms,
)
from soltorus.torus import TorusPresentation, vadd

P2 = TorusPresentation(2, 1, (2,))


def _V(P, alpha="sym", beta="sym", W=None):
    W = W or GradedGlnModule.regular(P)
    return TensorFieldModule(P, param_vector(alpha, "a", P.d), param_scalar(beta, "b"), W)


@pytest.fixture
def criterion(request):
    tr = request.config.pluginmanager.getplugin("terminalreporter")

    @contextmanager
    def run(number, title, budget_s):
        t0 = time.perf_counter()
        try:
            yield
            elapsed = time.perf_counter() - t0
            assert elapsed < budget_s, f"took {elapsed:.1f}s, budget {budget_s}s"
        except BaseException:
            elapsed = time.perf_counter() - t0
            tr.write_line(f"[criterion {number}] FAIL {title} ({elapsed:.1f}s, budget {budget_s}s)")
            raise
        tr.write_line(f"[criterion {number}] PASS {title} ({elapsed:.1f}s, budget {budget_s}s)")

    return run


def test_criterion_1_sigma_matches_matrices(criterion):
    with criterion(1, "sigma vs clock/shift matrices", 5):
        for shape in [(2, 1, (2,)), (2, 1, (3,)), (4, 2, (2, 2))]:
            P = TorusPresentation(*shape)
            mats = {m: torus_matrix(P.orders, m) for m in P.gamma_reps}
            for m, n in product(P.gamma_reps, repeat=2):
                lhs = reduce_matrix(mats[m] * mats[n], P.L)
                rhs = reduce_matrix(cyclotomic_as_poly(P.sigma(m, n), P.L) * torus_matrix(P.orders, vadd(m, n)), P.L)
                assert lhs == rhs, (shape, m, n)


def test_criterion_2_lie_axioms(criterion):
    with criterion(2, "Lie axioms for g, Vir_2, L, gl_N, gl_(d,gamma)", 120):
        checks = []
        for k in (2, 3):
            g = SolenoidalAlgebra(TorusPresentation(2, 1, (k,)))
            checks.append(verify_lie_axioms(g, g.window(2)))
        V = GapVirasoro(2)
        checks.append(verify_lie_axioms(V, V.window(6)))
        L = DerivationAlgebra(P2, 3)
        checks.append(verify_lie_axioms(L, L.window()))
        for shape in [(2, 1, (2,)), (2, 1, (3,)), (4, 2, (2, 2))]:
            G = GlN(TorusPresentation(*shape))
            checks.append(verify_lie_axioms(G, G.window()))
        G = GlDGamma(2)
        checks.append(verify_lie_axioms(G, G.window()))
        for rep in checks:
            assert not rep["sampled"]
            assert rep["violations"] == []


def test_criterion_3_module_axioms(criterion):
    with criterion(3, "module axioms for V(alpha,beta,W_reg), T(alpha,beta), V(a,b,F)", 120):
        assert verify_module_axioms(_V(P2), 3)["violations"] == []
        T = TensorModuleWmu((sym("g1"), sym("g2")), (sym("a1"), sym("a2")), sym("b"))
        assert verify_module_axioms(T, 3)["violations"] == []
        for p in (2, 3):
            patterns = all_F_patterns(p)
            assert patterns
            for F in patterns:
                assert verify_module_axioms(VirpModule(sym("a"), sym("b"), F), 3)["violations"] == [], F.to_json()


ALPHAS = ["sym", (0, 0), (1, -2)]
BETAS = [0, 1, 2, Fraction(1, 2), "sym"]


def test_criterion_4_reducibility_grid(criterion):
    with criterion(4, "reachability agrees with the closed-form criterion", 300):
        P0 = TorusPresentation(2, 0, ())
        cells = 0
        for P, W in [(P0, GradedGlnModule.trivial(P0)), (P2, GradedGlnModule.regular(P2))]:
            for al, be in product(ALPHAS, BETAS):
                alpha = "sym" if al == "sym" else [Fraction(x) for x in al]
                beta = be if be == "sym" else Fraction(be)
                M = _V(P, alpha, beta, W)
                rep = reachability_irreducible(M, 3)
                assert rep["verdict"] != "inconclusive", (P.to_dict(), al, be)
                expect = reducibility_criterion(M.alpha, M.beta, W.dim, P, W.degrees[0] if W.dim == 1 else None)
                assert (rep["verdict"] == "reducible") == expect, (P.to_dict(), al, be)
                cells += 1
                if expect:
                    wit = rep["witness"]
                    assert rep["witness_invariant"]["violations"] == []
                    minus_alpha = lattice_str(tuple(-x for x in al))
                    if be == 0:
                        # C v_(-alpha) is a submodule
                        assert wit["span_dim"] == 1 and wit["start"]["offset"] == minus_alpha
                        assert list(wit["span"]) == [minus_alpha]
                    else:
                        # span{v_s : s != -alpha} has codimension one
                        assert wit["codim"] == 1 and wit["weights_not_reached"] == [minus_alpha]
        assert cells == 30


def test_criterion_5_polynomial_fit(criterion):
    with criterion(5, "fit of D-operators and the P bracket relations", 60):
        M = _V(P2)
        fam = fit_polynomials(extract_D_operators(M, 3))
        assert fam.degree <= 1
        assert constant_term_check(fam, M.alpha)["violations"] == []
        for k in P2.gamma_reps:
            for i, ei in enumerate([(1, 0), (0, 1)]):
                A = fam.P0_at(k, ei)
                want = M.beta * M.gamma[i]
                assert all(is_zero(A[a][b] - (want if a == b else 0)) for a in range(len(A)) for b in range(len(A)))
        rel = verify_P_brackets(fam)
        assert all(rel["relations_checked"][key] > 0 for key in ("P0_P0", "P0_Pr", "Pr_Pr"))
        assert rel["violations"] == []


def test_criterion_6_round_trip(criterion):
    with criterion(6, "module -> rep -> module round trip", 60):
        M = _V(P2)
        rep = rep_from_family(fit_polynomials(extract_D_operators(M, 3)))
        M2 = module_from_rep(rep, M.alpha)
        cmp = compare_actions(M, M2, 3)
        assert cmp["blocks_checked"] > 0
        assert cmp["mismatches"] == []


def test_criterion_7_rep_analysis(criterion):
    with criterion(7, "analysis of extracted and direct-sum representations", 60):
        M = _V(P2)
        an = analyze_rep(rep_from_family(fit_polynomials(extract_D_operators(M, 3))))
        assert an["L_plus_killed"]
        assert an["single_beta"] and an["beta"] == "b"
        assert an["graded_simple_gl_N"] and an["regular_module_iso"]
        assert an["classification"] == "V(alpha,beta,W)"
        ds = analyze_rep(direct_sum(tensor_rep(P2, Fraction(1)), tensor_rep(P2, Fraction(2))))
        assert ds["classification"] == "not irreducible"


def test_criterion_8_cover(criterion):
    with criterion(8, "Z-cover checks at window sizes 2, 3, 4", 300):
        M = _V(P2)
        covers = {}
        for B in (2, 3, 4):
            cw = covers[B] = build_cover(M, B)
            rep = cw.report()
            assert rep["J_in_ker_pi"], B
            assert rep["pi_surjective_inner"], B
            assert cw.homomorphism_residual()["violations"] == [], B
        probe = cuspidality_probe(M, [2, 3, 4], covers=covers)
        assert probe["max_multiplicity"]["3"] == probe["max_multiplicity"]["4"]
        assert probe["bounded"]


def test_criterion_9_determinism(criterion, tmp_path):
    with criterion(9, "two seeded suite runs give identical reports", 600):
        texts = []
        for i in range(2):
            out = tmp_path / f"run{i}.json"
            proc = subprocess.run([sys.executable, "-m", "soltorus", "suite", "--seed", "11", "--out", str(out)],
                                  capture_output=True, text=True, timeout=600)
            assert proc.returncode == 0, proc.stdout + proc.stderr
            rep = json.loads(out.read_text())
            rep.pop("timestamps")
            texts.append(json.dumps(rep, sort_keys=True, indent=2))
        assert texts[0] == texts[1]
