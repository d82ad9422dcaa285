from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soltorus.algebras import lattice_str
from soltorus.scalars import sym
from soltorus.tensor_modules import (
    GradedGlnModule,
    ModuleError,
    TensorFieldModule,
    TensorModuleWmu,
    VirpModule,
    all_F_patterns,
    reducibility_criterion,
    graded_simple,
    make_F,
    param_scalar,
    param_vector,
    reachability_irreducible,
    validate_F,
    verify_module_axioms,
)
from soltorus.torus import TorusPresentation

g1, g2 = sym("g1"), sym("g2")


def _V(P, alpha="sym", beta="sym", W=None):
    W = W or GradedGlnModule.regular(P)
    return TensorFieldModule(P, param_vector(alpha, "a", P.d), param_scalar(beta, "b"), W)


# -- W --------------------------------------------------------------------------------


@pytest.mark.parametrize("shape", [(2, 1, (2,)), (2, 1, (3,)), (4, 2, (2, 2))])
def test_regular_W_is_graded_simple(shape):
    P = TorusPresentation(*shape)
    rep = GradedGlnModule.regular(P).validate()
    assert rep == {"valid": True, "problems": [], "graded_simple": True, "unital": True}


def test_trivial_W(P2):
    W = GradedGlnModule.trivial(P2, (1, 0))
    assert W.dim == 1 and W.graded_dim((1, 0)) == 1 and W.graded_dim((0, 0)) == 0
    assert W.validate()["valid"]


def test_broken_W_is_rejected(P2):
    W = GradedGlnModule.regular(P2)
    W.actions[(1, 0)] = [[Fraction(0)] * 4 for _ in range(4)]
    rep = W.validate()
    assert not rep["valid"] and rep["problems"]
    with pytest.raises(ModuleError):
        TensorFieldModule(P2, (0, 0), 0, W)


def test_graded_simple_detects_split():
    one, zero = Fraction(1), Fraction(0)
    ident = [[one, zero], [zero, one]]
    assert not graded_simple([ident], [(0,), (1,)])
    swap = [[zero, one], [one, zero]]
    assert graded_simple([ident, swap], [(0,), (1,)])


# -- module examples ------------------------------------------------------------------------


def test_tensor_module_action_values(P2):
    M = _V(P2)
    a1, a2, b = sym("a1"), sym("a2"), sym("b")
    # radical direction acts by a scalar
    assert M.act(("L", (2, 0)), (0, 1)) == [[g1 * a1 + g2 * a2 + g2 + 2 * b * g1]]
    # off the radical the action is X^m on W
    A = M.act(("L", (1, 0)), (0, 1))
    assert A == [[Fraction(1)]] or A == [[Fraction(-1)]]
    assert M.dim((5, -3)) == 1


def test_wmu_module_values():
    T = TensorModuleWmu((g1, g2), (sym("a1"), sym("a2")), sym("b"))
    assert T.act(("W", (1, 0)), (0, 2)) == [[g1 * sym("a1") + g2 * sym("a2") + 2 * g2 + sym("b") * g1]]


def test_virp_module_values():
    F = make_F(2, [[1, 1]])
    M = VirpModule(sym("a"), sym("b"), F)
    assert M.act(("D", 2), (3,)) == [[sym("a") + 3 + 2 * sym("b")]]
    assert M.act(("x", 1), (3,)) == [[Fraction(1)]]
    assert M.act(("C", 1), (3,)) == [[Fraction(0)]]


# -- module axioms ----------------------------------------------------------------------------


def test_tensor_module_axioms_k2(P2):
    rep = verify_module_axioms(_V(P2), 3)
    assert rep["violations"] == [] and rep["shape_errors"] == []
    assert rep["triples_checked"] > 0 and rep["z_checks"] > 0


def test_tensor_module_axioms_k3(P3):
    rep = verify_module_axioms(_V(P3), 2)
    assert rep["violations"] == []


def test_tensor_module_axioms_rank_two_radical(P22):
    pts = [(1, 0, 0, 0), (0, 0, 1, 1), (1, 1, 0, 1), (2, 0, 0, 0), (0, -2, 0, 0), (0, 0, 0, 2)]
    gens = [("L", m) for m in pts]
    rep = verify_module_axioms(_V(P22, beta=Fraction(1, 3)), 1, generators=gens)
    assert rep["violations"] == [] and rep["triples_checked"] > 1000


def test_wmu_tensor_axioms():
    T = TensorModuleWmu((g1, g2), (sym("a1"), sym("a2")), sym("b"))
    rep = verify_module_axioms(T, 3)
    assert rep["violations"] == [] and rep["triples_checked"] > 0


def test_wrong_beta_sign_is_caught(P2):
    class Skewed(TensorFieldModule):
        def _act(self, symbol, u):
            A = super()._act(symbol, u)
            if self.P.in_radical(symbol[1]) and any(symbol[1]):
                return [[x + 1 if i == j else x for j, x in enumerate(r)] for i, r in enumerate(A)]
            return A

    M = Skewed(P2, param_vector("sym", "a", 2), sym("b"), GradedGlnModule.regular(P2))
    assert verify_module_axioms(M, 2)["violations"]


@pytest.mark.parametrize("p", [2, 3])
def test_virp_axioms_all_patterns(p):
    pats = all_F_patterns(p)
    assert pats
    for F in pats:
        rep = verify_module_axioms(VirpModule(sym("a"), sym("b"), F), 3)
        assert rep["violations"] == [], F


def test_virp_pattern_counts():
    assert [F.entries for F in all_F_patterns(2)] == [((Fraction(1), Fraction(1)),)]
    assert len(all_F_patterns(3)) == len({F.entries for F in all_F_patterns(3)})


# -- F conditions -----------------------------------------------------------------------------


def test_validate_F_examples():
    assert validate_F(make_F(2, [[1, 1]])) == {"valid": True, "support": [0, 1]}
    bad = validate_F(make_F(2, [[1, 0]]))
    assert bad["condition"] == "II" and bad["indices"] == [1, 0]
    assert validate_F(make_F(2, [[0, 1]]))["condition"] == "I"
    assert validate_F(make_F(3, [[1, 1]]))["condition"] == "shape"
    with pytest.raises(ModuleError):
        VirpModule(0, 0, make_F(2, [[0, 1]]))


def test_condition_three_detects_noncommuting_products():
    F = make_F(3, [[1, 2, 1], [1, 1, 1]])
    rep = validate_F(F)
    assert rep["valid"] is False and rep["condition"] == "III"


@settings(max_examples=40)
@given(st.lists(st.integers(0, 2), min_size=6, max_size=6))
def test_valid_F_gives_module(bits):
    F = make_F(3, [bits[:3], bits[3:]])
    if validate_F(F)["valid"]:
        assert verify_module_axioms(VirpModule(Fraction(1, 3), Fraction(2), F), 2)["violations"] == []


# -- irreducibility -----------------------------------------------------------------------------


def test_reachability_generic_is_irreducible(P2):
    rep = reachability_irreducible(_V(P2), 3)
    assert rep["verdict"] == "window_irreducible"
    assert rep["starts_checked"] == 4 * 25


@pytest.mark.parametrize("beta", [0, 1])
def test_commutative_integral_is_reducible(P0, beta):
    M = _V(P0, alpha=[0, 0], beta=beta, W=GradedGlnModule.trivial(P0))
    rep = reachability_irreducible(M, 3)
    assert rep["verdict"] == "reducible"
    assert rep["witness_invariant"]["violations"] == []


def test_commutative_submodule_shapes(P0):
    W = GradedGlnModule.trivial(P0)
    r0 = reachability_irreducible(_V(P0, [1, -2], 0, W), 3)["witness"]
    assert r0["span_dim"] == 1 and r0["start"]["offset"] == lattice_str((-1, 2))
    r1 = reachability_irreducible(_V(P0, [1, -2], 1, W), 3)["witness"]
    assert r1["codim"] == 1 and r1["weights_not_reached"] == [lattice_str((-1, 2))]


def test_noninteger_alpha_is_irreducible(P0):
    M = _V(P0, alpha=["1/2", 0], beta=0, W=GradedGlnModule.trivial(P0))
    assert reachability_irreducible(M, 3)["verdict"] == "window_irreducible"


def test_one_dimensional_W_uses_radical_integrality(P2):
    # weights alpha + (0,0) + R never hit zero when alpha = (1,0)
    W = GradedGlnModule.trivial(P2)
    M = _V(P2, alpha=[1, 0], beta=0, W=W)
    assert reachability_irreducible(M, 3)["verdict"] == "window_irreducible"
    assert not reducibility_criterion(M.alpha, M.beta, 1, P2, (0, 0))
    M2 = _V(P2, alpha=[2, 0], beta=0, W=W)
    assert reachability_irreducible(M2, 3)["verdict"] == "reducible"
    assert reducibility_criterion(M2.alpha, M2.beta, 1, P2, (0, 0))
    M3 = _V(P2, alpha=[1, 0], beta=1, W=GradedGlnModule.trivial(P2, (1, 0)))
    assert reachability_irreducible(M3, 3)["verdict"] == "reducible"


def test_criterion_values():
    one = [Fraction(0), Fraction(3)]
    assert reducibility_criterion(one, 0, 1)
    assert reducibility_criterion(one, 1, 1)
    assert not reducibility_criterion(one, 2, 1)
    assert not reducibility_criterion(one, Fraction(1, 2), 1)
    assert not reducibility_criterion(one, sym("b"), 1)
    assert not reducibility_criterion([sym("a1"), 0], 0, 1)
    assert not reducibility_criterion(one, 0, 4)


def test_degenerate_windows(P2):
    M = _V(P2)
    with pytest.raises(ModuleError):
        reachability_irreducible(M, 1, margin=2)
    with pytest.raises(ModuleError):
        reachability_irreducible(M, 2, margin=0)


def test_window_shape(P2):
    win = _V(P2).window(1)
    assert len(win.points) == 4 * 9
    assert win.inner(1).points == sorted(P2.gamma_reps)
