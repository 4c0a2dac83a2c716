from collections import Counter

import pytest

from tensorring.definition import simple_bimodule
from tensorring.gorenstein import NO, YES, is_gf, is_pgf
from tensorring.modules import zero_bimodule, zero_module
from tensorring.pairs import functor_Ind, pair_to_module
from tensorring.homological import projective_summand
from tensorring.tensor_ring import tensor_ring
from tensorring.verify import (
    HypothesisFailure,
    VerifierReport,
    check_hypotheses,
    verify_cor_1_7,
    verify_lemma_1_5,
    verify_lemma_1_6,
    verify_lemma_2_3,
    verify_theorem_A,
    verify_theorem_B,
)


def test_report_bookkeeping():
    rep = VerifierReport("x")
    rep.record(0, "s", YES, YES)
    rep.record(1, "s", "inconclusive", YES)
    rep.record(2, "t", YES, NO, lambda: {"u": [[1]]})
    assert (rep.samples, rep.agree, rep.inconclusive, len(rep.disagreements)) == (3, 1, 1, 1)
    assert not rep.passed
    d = rep.to_dict()
    assert d["table"]["s"] == {"inconclusive/yes": 1, "yes/yes": 1}
    assert d["disagreements"][0]["data"] == {"u": [[1]]}


def test_hypotheses_preset(ring):
    h = check_hypotheses(ring)
    assert h["condition_T"] == "holds" and h["pd_left"] == 0 and h["fd_right"] == 0


def test_hypothesis_failure_named(R):
    bad = tensor_ring(R, simple_bimodule(R, 1, 2))
    with pytest.raises(HypothesisFailure) as err:
        verify_theorem_A(bad, samples=2)
    assert err.value.name == "condition T"


def test_theorem_A_small(ring):
    rep = verify_theorem_A(ring, samples=25, seed=1)
    assert rep.passed, rep.line()
    counts = sum(rep.table.values(), Counter())
    assert counts["yes/yes"] and counts["no/no"]


def test_theorem_A_zero_bimodule(R):
    rep = verify_theorem_A(tensor_ring(R, zero_bimodule(R)), samples=10)
    assert rep.passed


def test_theorem_A_triangular(tri_ws):
    rep = verify_theorem_A(tri_ws.tensor_ring(), samples=40, seed=2)
    assert rep.passed, rep.line()


def test_theorem_B_small(ring, R):
    gf, pgf = verify_theorem_B(ring, samples=20, seed=4)
    assert gf.passed and pgf.passed
    x = projective_summand(R, R.primitive_idempotents[0]).module
    assert is_gf(pair_to_module(functor_Ind(ring, x))).yes
    z = pair_to_module(functor_Ind(ring, zero_module(R)))
    assert is_gf(z).yes and is_pgf(zero_module(R)).yes


def test_lemma_1_6_and_cor_1_7(ring):
    assert verify_lemma_1_6(ring, samples=15).passed
    assert verify_cor_1_7(ring, samples=15).passed


def test_lemmas_1_5_2_3(ring):
    assert verify_lemma_1_5(ring)["holds"]
    res = verify_lemma_2_3(ring)
    assert res["holds"] and res["pd_stalk"] == 1
