import pytest

from tensorring.definition import simple_bimodule
from tensorring.gorenstein import (
    GF,
    GP,
    INCONCLUSIVE,
    NO,
    PGF,
    YES,
    Window,
    check_condition_T,
    indecomposable_injectives_right,
    is_gf,
    is_gorenstein_projective,
    is_pgf,
    layer_dimensions_finite,
    stalk_of_regular_pd,
    validate_witness,
    window_exactness,
)
from tensorring.homological import ext, projective_summand, simple_module
from tensorring.modules import regular_module, zero_bimodule
from tensorring.pairs import pair_to_module
from tensorring.sampling import module_samples, pair_samples
from tensorring.tensor_ring import tensor_ring


def P(a, i):
    return projective_summand(a, a.primitive_idempotents[i]).module


def test_condition_T_preset(ring):
    rep = check_condition_T(ring, 6)
    assert rep.holds and rep.witness is None
    assert all(s.dim == 0 for s in rep.slots)
    assert len(rep.slots) == rep.layers * rep.projectives * rep.degrees == 18


def test_condition_T_zero(R):
    rep = check_condition_T(tensor_ring(R, zero_bimodule(R)))
    assert rep.holds and rep.layers == 0 and not rep.slots


def test_condition_T_negative_control(R):
    m = simple_bimodule(R, 1, 2)
    t = tensor_ring(R, m)
    assert t.grading == [6, 1]
    rep = check_condition_T(t)
    assert not rep.holds
    w = rep.witness
    assert w.degree == 1 and w.dim >= 1 and w.layer == 1


@pytest.mark.parametrize("test,kind", [(is_gorenstein_projective, GP), (is_pgf, PGF), (is_gf, GF)])
def test_projectives_yes(test, kind, R, tri_lambda):
    for a in (R, tri_lambda):
        for i in range(len(a.primitive_idempotents)):
            v = test(P(a, i))
            assert v.kind == kind and v.verdict == YES
            assert validate_witness(v) == []


@pytest.mark.parametrize("test", [is_gorenstein_projective, is_pgf, is_gf])
def test_triangular_simple_no(test, tri_lambda):
    s1 = simple_module(tri_lambda, 0)
    v = test(s1)
    assert v.verdict == NO
    assert "Ext^1" in v.obstruction
    assert ext(s1, regular_module(tri_lambda), 1).dim == 1
    assert test(simple_module(tri_lambda, 1)).verdict == YES


def test_self_injective_all_yes(R):
    for x in module_samples(R, 30, seed=3):
        v = is_pgf(x)
        assert v.yes
        assert validate_witness(v) == []
        assert is_gf(x).yes and is_gorenstein_projective(x).yes


def test_pgf_inside_gp_and_gf(ring):
    for s in pair_samples(ring, 25, seed=9):
        t = pair_to_module(s.pair)
        v = is_pgf(t)
        if v.yes:
            assert is_gorenstein_projective(t).yes and is_gf(t).yes
            assert validate_witness(v) == []
        assert v.verdict != INCONCLUSIVE


def test_witness_complex_exact(R):
    v = is_pgf(simple_module(R, 0))
    assert window_exactness(v.witness) == []
    assert v.witness.terms[v.witness.split].dim >= 1


def test_injectives_right(R, tri_lambda):
    assert [e.dim for e in indecomposable_injectives_right(R)] == [2, 2, 2]
    assert sorted(e.dim for e in indecomposable_injectives_right(tri_lambda)) == [1, 2]


def test_window_bounds():
    with pytest.raises(ValueError):
        Window(0, 8, 6)


def test_lemma_instances(ring):
    assert all(v is not None for v in layer_dimensions_finite(ring))
    assert stalk_of_regular_pd(ring) == 1
