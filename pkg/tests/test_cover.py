from fractions import Fraction

import pytest

from soltorus.cover import TensorSpace, ZeroModule, build_cover, compute_J, cuspidality_probe
from soltorus.linalg import rank
from soltorus.scalars import is_zero, sym
from soltorus.tensor_modules import (
    GradedGlnModule,
    ModuleError,
    TensorFieldModule,
    VirpModule,
    make_F,
    param_scalar,
    param_vector,
)
from soltorus.torus import TorusPresentation


def _V(P, alpha="sym", beta="sym"):
    W = GradedGlnModule.regular(P) if P.z else GradedGlnModule.trivial(P)
    return TensorFieldModule(P, param_vector(alpha, "a", P.d), param_scalar(beta, "b"), W)


@pytest.fixture(scope="module")
def cover2():
    return build_cover(_V(TorusPresentation(2, 1, (2,))), 2)


def test_report_at_radius_two(cover2):
    rep = cover2.report()
    assert rep["J_in_ker_pi"] and rep["pi_surjective_inner"]
    assert rep["max_hat_multiplicity"] == 1
    assert len(rep["weights"]) == 4 * 9
    row = rep["weights"][0]
    assert row["tensor_dim"] == row["J_dim"] + row["hat_dim"]
    assert row["pi_rank"] == row["M_dim"] == 1


def test_J_vectors_are_killed_by_pi(cover2):
    sp = cover2.space
    w = cover2.inner.points[5]
    J = compute_J(sp, w)
    assert J["basis"]
    for v in J["basis"]:
        vec = {}
        for c, (s, u, i) in zip(v, J["columns"]):
            if not is_zero(c):
                vec.setdefault((s, u), [Fraction(0)] * sp.M.dim(u))[i] += c
        image = sp.pi(vec)
        assert all(is_zero(x) for vals in image.values() for x in vals)


def test_cover_checks_are_clean(cover2):
    w = cover2.inner.points[:6]
    assert cover2.homomorphism_residual(weights=w)["violations"] == []
    inv = cover2.J_invariance(weights=w[:2])
    assert inv["violations"] == [] and inv["checked"] > 0
    zc = cover2.z_compatibility(weights=w[:2])
    assert zc["violations"] == [] and zc["checked"] > 0


def test_hat_action_shapes(cover2):
    w = cover2.inner.points[4]
    for m in [(2, 0), (1, 0), (0, -1)]:
        A = cover2.hat_action(m, w)
        assert len(A) == cover2.hat_dim(tuple(a + b for a, b in zip(w, m)))
        assert len(A[0]) == cover2.hat_dim(w)
    # the cover at one weight is one-dimensional, and L_(1,0) moves it nontrivially
    assert rank(cover2.hat_action((1, 0), w)) == 1


def test_residual_catches_broken_action():
    P = TorusPresentation(2, 1, (2,))

    class Skewed(TensorFieldModule):
        def _act(self, symbol, u):
            A = super()._act(symbol, u)
            if symbol[1] == (1, 0):
                return [[2 * x for x in r] for r in A]
            return A

    M = Skewed(P, param_vector("sym", "a", 2), sym("b"), GradedGlnModule.regular(P))
    cw = build_cover(M, 2)
    assert cw.homomorphism_residual(weights=cw.inner.points[:4])["violations"]


def test_zero_module_cover():
    P = TorusPresentation(2, 1, (2,))
    cw = build_cover(ZeroModule(P), 2)
    rep = cw.report()
    assert rep["max_hat_multiplicity"] == 0
    assert rep["J_in_ker_pi"] and rep["pi_surjective_inner"]


def test_commutative_branch():
    P = TorusPresentation(2, 0, ())
    probe = cuspidality_probe(_V(P, alpha=["1/2", "1/3"], beta=1), [2, 3])
    assert probe["branch"] == "z=0" and probe["bounded"]
    assert probe["max_multiplicity"] == {"2": 0, "3": 0}


def test_probe_reuses_covers(cover2):
    probe = cuspidality_probe(cover2.M, [2], covers={2: cover2})
    assert probe == {"branch": "general", "sizes": [2], "max_multiplicity": {"2": 1}, "bounded": True}


def test_central_action_rules(cover2):
    sp = cover2.space
    x = sp.basis_vector((1, 0), (0, 1), 0)
    assert sp.z_act((2, 0), x) == {((3, 0), (0, 1)): [Fraction(1)]}
    with pytest.raises(ValueError):
        sp.z_act((1, 0), x)


def test_cover_needs_centre_action():
    with pytest.raises(ModuleError):
        TensorSpace(VirpModule(0, 0, make_F(2, [[1, 1]])), 2)


def test_numeric_parameters():
    cw = build_cover(_V(TorusPresentation(2, 1, (2,)), alpha=["1/2", 0], beta=2), 2)
    rep = cw.report()
    assert rep["J_in_ker_pi"] and rep["pi_surjective_inner"]
