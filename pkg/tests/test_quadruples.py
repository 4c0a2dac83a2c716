import numpy as np
import pytest

from tensorring.algebra import MoritaData
from tensorring.gorenstein import NO, YES, Window, is_pgf
from tensorring.modules import LEFT, FdModule, zero_bimodule
from tensorring.quadruples import (
    check_morita_hypotheses,
    module_to_quadruple,
    morita_setup,
    mu,
    mu_inverse,
    quadruple,
    quadruple_phi_verdict,
    quadruple_to_module,
    verify_cor_4_2,
    verify_cor_4_4,
    verify_cor_4_6,
    verify_cor_4_7,
    verify_cor_4_8,
    verify_section4,
)
from tensorring.sampling import random_module
from tensorring.verify import HypothesisFailure


def vec_space(a, n):
    return FdModule(a, LEFT, np.eye(n, dtype=np.int64).reshape(1, n, n))


def test_setup_matches_trivial_extension(tri_setup, morita_zero_setup):
    for s in (tri_setup, morita_zero_setup):
        perm = list(s.perm)
        te = s.ring.algebra.mult
        assert np.array_equal(te[np.ix_(perm, perm, perm)], s.lam.mult)
        assert s.ring.N == 1


def test_quadruple_roundtrip(tri_setup, rng):
    d = tri_setup.data
    X, Y = vec_space(d.A, 2), vec_space(d.B, 3)
    f = rng.integers(0, 7, size=(3, 2))
    q = quadruple(d, X, Y, f)
    t = quadruple_to_module(tri_setup, q)
    t.validate()
    back = module_to_quadruple(tri_setup, t)
    assert np.array_equal(back.f, q.f)
    pr = mu(tri_setup, q)
    q2 = mu_inverse(tri_setup, pr)
    assert np.array_equal(q2.f, q.f) and q2.X.dim == 2 and q2.Y.dim == 3


def test_mu_swaps_components(morita_zero_setup, rng):
    s = morita_zero_setup
    lam_mod = random_module(s.lam, rng)
    q = module_to_quadruple(s, lam_mod)
    pr = mu(s, q)
    assert pr.dim == q.X.dim + q.Y.dim
    back = mu_inverse(s, pr)
    assert np.array_equal(back.f, q.f) and np.array_equal(back.g, q.g)


def test_cor_4_7_examples(tri_setup):
    d = tri_setup.data
    X, Y = vec_space(d.A, 1), vec_space(d.B, 1)
    mono = quadruple(d, X, Y, [[1]])
    zero = quadruple(d, X, Y, [[0]])
    assert is_pgf(quadruple_to_module(tri_setup, mono)).yes
    assert is_pgf(quadruple_to_module(tri_setup, zero)).no
    assert quadruple_phi_verdict(mono, Window()) == YES
    assert quadruple_phi_verdict(zero, Window()) == NO


def test_cor_4_7_iso_classes(tri_setup):
    rep = verify_cor_4_7(tri_setup)
    assert rep.passed and rep.notes["pgf_equals_projective_mismatches"] == 0


def test_cor_4_7_exhaustive_small():
    from tensorring.definition import Workspace, preset_triangular
    s = Workspace(preset_triangular(p=2)).morita()
    rep = verify_cor_4_7(s, max_dim=2, exhaustive=True)
    # shapes (a, b) with a, b <= 2, not both zero: sum of 2^(ab)
    assert rep.samples == sum(2 ** (a * b) for a in range(3) for b in range(3)) - 1
    assert rep.passed


def test_other_corollaries(tri_setup, morita_zero_setup):
    assert verify_cor_4_8(tri_setup, 10).passed
    assert verify_cor_4_2(morita_zero_setup, 15, seed=1).passed
    assert verify_cor_4_4(morita_zero_setup, 15, seed=1).passed
    assert verify_cor_4_6(tri_setup, 10, seed=1).passed


def test_hypotheses_4_4(morita_zero_setup, R, M):
    h = check_morita_hypotheses(morita_zero_setup.data)
    assert h["UV"] == 0 and h["VU"] == 0
    # U = V = R fails 1-nilpotency
    from tensorring.modules import regular_bimodule
    bad = MoritaData(R, R, regular_bimodule(R), regular_bimodule(R))
    with pytest.raises(HypothesisFailure):
        check_morita_hypotheses(bad)


def test_zero_bimodules_componentwise(R, k7):
    d = MoritaData(R, k7, zero_bimodule(k7, R), zero_bimodule(R, k7))
    s = morita_setup(d)
    rep = verify_section4(s, samples=10)
    assert rep.passed
