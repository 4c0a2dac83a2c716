import numpy as np
import pytest

from tensorring.homological import is_projective, projective_summand, simple_module
from tensorring.modules import (
    RIGHT,
    hom_basis,
    hom_over_Rop,
    is_isomorphic,
    k_dual,
    regular_module,
    tensor_over_R,
    zero_module,
)
from tensorring.pairs import (
    PairError,
    PairModule,
    copair_S,
    copair_to_module,
    functor_C,
    functor_Coind,
    functor_Ind,
    functor_K,
    functor_S,
    functor_U,
    gamma_hom_dim,
    module_to_copair,
    module_to_pair,
    pair_to_module,
    phi_membership,
    tensor_over_T,
    tensor_over_T_direct,
)
from tensorring.sampling import (
    COPAIR_STRATA,
    PAIR_STRATA,
    random_copair,
    random_module,
    random_pair,
)


def P(a, i):
    return projective_summand(a, a.primitive_idempotents[i]).module


def test_stalk(ring, R, rng):
    x = random_module(R, rng)
    s = functor_S(ring, x)
    assert not s.u.any()
    t = pair_to_module(s)
    for k in range(R.dim, ring.algebra.dim):
        assert not t.action[k].any()
    assert functor_U(s) is x
    assert is_isomorphic(functor_C(s), x)
    back = module_to_pair(ring, t)
    assert not back.u.any()


def test_ind_regular(ring, R):
    ind = functor_Ind(ring, regular_module(R))
    assert is_isomorphic(pair_to_module(ind), regular_module(ring.algebra))
    assert ind.is_mono()


def test_ind_examples(ring, R):
    assert functor_Ind(ring, zero_module(R)).dim == 0
    s3 = simple_module(R, 2)
    assert functor_Ind(ring, s3).dim == 3
    for i in range(3):
        assert is_projective(pair_to_module(functor_Ind(ring, P(R, i))))


def test_c_ind_identity(ring, R, rng):
    for _ in range(10):
        x = random_module(R, rng)
        assert is_isomorphic(functor_C(functor_Ind(ring, x)), x)


@pytest.mark.parametrize("stratum", PAIR_STRATA)
def test_pair_roundtrip(ring, stratum, rng):
    for _ in range(4):
        pr = random_pair(ring, rng, stratum)
        pr.validate()
        t = pair_to_module(pr)
        t.validate()
        assert t.dim == pr.dim
        back = module_to_pair(ring, t)
        assert np.array_equal(back.base.action, pr.base.action)
        assert np.array_equal(back.u, pr.u)


@pytest.mark.parametrize("stratum", COPAIR_STRATA)
def test_copair_roundtrip(ring, stratum, rng):
    for _ in range(4):
        c = random_copair(ring, rng, stratum)
        c.validate()
        z = copair_to_module(c)
        z.validate()
        back = module_to_copair(ring, z)
        assert np.array_equal(back.v, c.v)


def test_coind(ring, R, rng):
    assert functor_Coind(ring, zero_module(R, RIGHT)).dim == 0
    y = k_dual(P(R, 0))
    c = functor_Coind(ring, y)
    assert c.dim == y.dim + hom_over_Rop(ring.bimodule, y).module.dim
    # duality: D Coind(Y) = Ind(D Y) as T-modules
    ind = pair_to_module(functor_Ind(ring, k_dual(y)))
    assert copair_to_module(c).dim == ind.dim
    for _ in range(5):
        y = random_module(R, rng, side=RIGHT)
        assert is_isomorphic(functor_K(functor_Coind(ring, y)), y)


def test_tensor_over_T_examples(ring, R, rng):
    for _ in range(5):
        w = random_module(R, rng, side=RIGHT)
        pr = random_pair(ring, rng, "random-u")
        assert tensor_over_T(copair_S(ring, w), pr).dim == tensor_over_R(w, functor_C(pr)).dim
        c = random_copair(ring, rng, "random-T")
        ind_r = functor_Ind(ring, regular_module(R))
        # Z (x)_T T = Z
        assert tensor_over_T(c, ind_r).dim == c.dim
        assert tensor_over_T(c, pr).dim == tensor_over_T_direct(c, pr)


def test_phi_membership(ring, R, rng):
    x = random_module(R, rng)
    assert phi_membership(functor_Ind(ring, x), lambda m: is_isomorphic(m, x))
    s3 = simple_module(R, 2)  # M (x) S_3 != 0
    res = phi_membership(functor_S(ring, s3), lambda m: True)
    assert not res and not res.mono
    # class = projectives: members are exactly the projective T-modules
    for stratum in PAIR_STRATA:
        pr = random_pair(ring, rng, stratum)
        member = bool(phi_membership(pr, is_projective))
        assert member == is_projective(pair_to_module(pr))


def test_gamma_homs_match_module_homs(ring, rng):
    for _ in range(6):
        a = random_pair(ring, rng, "random-T")
        b = random_pair(ring, rng, "sub-ind")
        want = hom_basis(pair_to_module(a), pair_to_module(b)).shape[0]
        assert gamma_hom_dim(a, b) == want


def test_non_linear_u_rejected(ring, R):
    s3 = simple_module(R, 2)
    pr = PairModule(ring, s3, np.ones((1, 2), dtype=np.int64))
    with pytest.raises(PairError):
        pr.validate()
