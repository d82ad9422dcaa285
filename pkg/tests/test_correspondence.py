from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soltorus.correspondence import (
    FitError,
    LRepresentation,
    analyze_rep,
    compare_actions,
    compare_reps,
    constant_term_check,
    direct_sum,
    extract_D_operators,
    fit_polynomials,
    module_from_rep,
    nilpotent_flag,
    nilpotent_rep,
    rep_from_family,
    tensor_rep,
    upper_triangular_check,
    verify_P_brackets,
)
from soltorus.scalars import gamma_vector, inner_product, is_zero, sym
from soltorus.tensor_modules import (
    GradedGlnModule,
    ModuleError,
    TensorFieldModule,
    VirpModule,
    make_F,
    param_scalar,
    param_vector,
    verify_module_axioms,
)
from soltorus.torus import TorusPresentation


def _V(P, alpha="sym", beta="sym"):
    W = GradedGlnModule.regular(P) if P.z else GradedGlnModule.trivial(P)
    return TensorFieldModule(P, param_vector(alpha, "a", P.d), param_scalar(beta, "b"), W)


def _is_scalar(A, c):
    return all(is_zero(A[i][j] - (c if i == j else 0)) for i in range(len(A)) for j in range(len(A)))


# -- extraction ---------------------------------------------------------------------------


def test_extracted_D0_is_affine_in_m(P2):
    M = _V(P2)
    S = extract_D_operators(M, 3)
    g = M.gamma
    for k, fam in S["D0"].items():
        assert fam
        for m, A in fam.items():
            want = inner_product(g, M.alpha) + inner_product(g, k) + M.beta * inner_product(g, m)
            assert _is_scalar(A, want)
    assert set(S["Dr"]) == {(r, k) for r in P2.gamma_reps if any(r) for k in P2.gamma_reps}


def test_extraction_needs_centre_action():
    M = VirpModule(sym("a"), sym("b"), make_F(2, [[1, 1]]))
    with pytest.raises(ModuleError, match="missing Z-action"):
        extract_D_operators(M, 3)


# -- fitting --------------------------------------------------------------------------------


def _synthetic(P, fn):
    pts = [(2 * a, 2 * b) for a in range(-2, 3) for b in range(-2, 3)]
    zero = (0, 0)
    return {
        "presentation": P,
        "gamma": gamma_vector(2),
        "dims": {k: (1 if k == zero else 0) for k in P.gamma_reps},
        "D0": {zero: {m: [[fn(m)]] for m in pts}},
        "Dr": {},
    }


def test_fit_recovers_quadratic(P2):
    def fn(m):
        x, y = m
        return 3 + 2 * x - y + Fraction(1, 2) * x * x + 5 * x * y - 4 * y * y

    fam = fit_polynomials(_synthetic(P2, fn))
    coeffs = fam.P0[(0, 0)]
    assert fam.degree == 2
    assert len(coeffs) == 6
    # P^q = q! times the coefficient of m^q
    assert coeffs[(0, 0)] == [[3]] and coeffs[(1, 0)] == [[2]] and coeffs[(0, 1)] == [[-1]]
    assert coeffs[(2, 0)] == [[1]] and coeffs[(1, 1)] == [[5]] and coeffs[(0, 2)] == [[-8]]


def test_fit_rejects_non_polynomial(P2):
    with pytest.raises(FitError, match="not polynomial within cap"):
        fit_polynomials(_synthetic(P2, lambda m: Fraction(2) ** (m[0] // 2 + 2)))


def test_fit_cap_is_respected(P2):
    with pytest.raises(FitError):
        fit_polynomials(_synthetic(P2, lambda m: m[0] ** 3), D_cap=2)
    with pytest.raises(FitError):
        fit_polynomials(_synthetic(P2, lambda m: m[0] * m[0]), D_cap=1)
    assert fit_polynomials(_synthetic(P2, lambda m: m[0] * m[0]), D_cap=2).degree == 2


@pytest.mark.parametrize("shape", [(2, 1, (2,)), (2, 1, (3,)), (2, 0, ())])
def test_fit_of_tensor_module(shape):
    P = TorusPresentation(*shape)
    M = _V(P)
    fam = fit_polynomials(extract_D_operators(M, 3))
    assert fam.degree <= 1
    assert constant_term_check(fam, M.alpha)["violations"] == []
    for k, n in fam.dims.items():
        for i in range(P.d):
            ei = tuple(1 if j == i else 0 for j in range(P.d))
            assert _is_scalar(fam.P0_at(k, ei), M.beta * M.gamma[i])


@pytest.mark.parametrize("shape, wrapped", [((2, 1, (2,)), 7), ((2, 1, (3,)), 45), ((2, 0, ()), 0)])
def test_P_bracket_relations(shape, wrapped):
    P = TorusPresentation(*shape)
    fam = fit_polynomials(extract_D_operators(_V(P), 3))
    rep = verify_P_brackets(fam)
    assert rep["violations"] == []
    assert rep["wrapped_p0_cases_differing_from_uncorrected_form"] == wrapped


# -- round trip ---------------------------------------------------------------------------------


def test_round_trip_k2(P2):
    M = _V(P2)
    rep = rep_from_family(fit_polynomials(extract_D_operators(M, 3)))
    assert rep.check()["violations"] == []
    M2 = module_from_rep(rep, M.alpha)
    cmp = compare_actions(M, M2, 3)
    assert cmp["mismatches"] == [] and cmp["blocks_checked"] > 1000
    back = rep_from_family(fit_polynomials(extract_D_operators(M2, 3)))
    assert compare_reps(rep, back)["mismatches"] == []


@pytest.mark.parametrize("shape", [(2, 1, (3,)), (2, 0, ())])
def test_round_trip_other_presentations(shape):
    P = TorusPresentation(*shape)
    M = _V(P, alpha=["1/2", "1/3"], beta=2)
    rep = rep_from_family(fit_polynomials(extract_D_operators(M, 3)))
    assert compare_actions(M, module_from_rep(rep, M.alpha), 3)["mismatches"] == []


@settings(max_examples=6)
@given(st.fractions(max_denominator=6, min_value=-3, max_value=3), st.fractions(max_denominator=6, min_value=-3, max_value=3))
def test_round_trip_random_parameters(a, b):
    P = TorusPresentation(2, 1, (2,))
    M = _V(P, alpha=[a, sym("a2")], beta=b)
    rep = rep_from_family(fit_polynomials(extract_D_operators(M, 2)))
    assert compare_actions(M, module_from_rep(rep, M.alpha), 2)["mismatches"] == []


def test_module_from_bad_rep_raises(P2):
    rep = tensor_rep(P2, Fraction(1))
    rep.blocks[("d", (1, 0))][(0, 0)] = [[Fraction(7)]]
    with pytest.raises(ValueError):
        module_from_rep(rep, (0, 0))


# -- analysis -----------------------------------------------------------------------------------


def test_analysis_of_extracted_rep(P2):
    M = _V(P2)
    rep = rep_from_family(fit_polynomials(extract_D_operators(M, 3)))
    an = analyze_rep(rep)
    assert an["L_plus_killed"] and an["single_beta"] and an["beta"] == "b"
    assert an["graded_simple_gl_N"] and an["regular_module_iso"]
    assert an["classification"] == "V(alpha,beta,W)" and an["W"] == "regular"
    assert an["upper_triangular"]["status"] == "unverified"


def test_analysis_commutative_case(P0):
    rep = rep_from_family(fit_polynomials(extract_D_operators(_V(P0, beta=Fraction(3)), 3)))
    an = analyze_rep(rep)
    assert an["classification"] == "T(alpha,beta)" and an["beta"] == "3"


def test_direct_sum_is_not_irreducible(P2):
    ds = direct_sum(tensor_rep(P2, Fraction(1)), tensor_rep(P2, Fraction(2)))
    assert ds.check()["violations"] == []
    an = analyze_rep(ds)
    assert an["classification"] == "not irreducible"
    assert not an["single_beta"]
    assert an["beta_candidates"] == ["1", "2"]
    assert not an["graded_simple_gl_N"]


@pytest.mark.parametrize("shape", [(2, 1, (2,)), (2, 0, ())])
def test_nilpotent_rep(shape):
    P = TorusPresentation(*shape)
    rep = nilpotent_rep(P, Fraction(1, 2), D_max=2)
    assert rep.check()["violations"] == []
    # x^p d_gamma with |p| = 2 sits in degree 1
    assert rep.D_eff() == 1
    an = analyze_rep(rep, nilpotent_flag(rep))
    assert not an["L_plus_killed"]
    assert an["classification"] == "not irreducible"
    assert an["upper_triangular"] == {"status": "verified", "violations": []}
    M = module_from_rep(rep, (Fraction(1, 3), Fraction(1, 5)))
    assert verify_module_axioms(M, 2)["violations"] == []
    fam = fit_polynomials(extract_D_operators(M, 3))
    assert fam.degree == 2
    assert verify_P_brackets(fam)["violations"] == []
    assert compare_reps(rep, rep_from_family(fam))["mismatches"] == []


def test_upper_triangular_fails_on_bad_flag(P2):
    rep = nilpotent_rep(P2, Fraction(1, 2))
    flag = nilpotent_flag(rep)
    swapped = {k: list(reversed(cols)) for k, cols in flag.items()}
    assert upper_triangular_check(rep, flag)["status"] == "verified"
    rep.blocks[("t", (0, 0), (1, 0))] = {k: [[Fraction(1)] * len(A[0]) for _ in A] for k, A in rep.blocks[("t", (0, 0), (1, 0))].items()}
    assert upper_triangular_check(rep, swapped)["status"] == "failed"


def test_rep_json_shape(P2):
    data = tensor_rep(P2, sym("b")).to_json()
    assert data["D_max"] == 1
    assert set(data["dims"].values()) == {1}
    assert "x^(1,0)d_g" in data["matrices"]


def test_zero_rep_has_negative_depth(P2):
    rep = LRepresentation(P2, {k: 1 for k in P2.gamma_reps}, 1, {})
    assert rep.D_eff() == -1
    assert analyze_rep(rep)["classification"] == "not irreducible"
