"""Acceptance criteria 1-9, each timed and reported on one line.

Run with ``pytest tests/test_acceptance.py -v -s`` (or as a script) to see
the PASS/FAIL lines.
"""

import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from tensorring.algebra import QuiverPreset, mu_iso, path_algebra
from tensorring.definition import Workspace, preset_morita_zero, preset_triangular, simple_bimodule
from tensorring.exactlin import FieldSpec, _kernel, _rank
from tensorring.gorenstein import (
    NO,
    YES,
    Window,
    check_condition_T,
    is_gf,
    is_gorenstein_projective,
    is_pgf,
)
from tensorring.homological import ext, is_projective, simple_module, tor
from tensorring.modules import (
    RIGHT,
    generated_submodule,
    hom_basis,
    is_isomorphic,
    k_dual,
    quotient_module,
    regular_module,
    submodule,
    tensor_over_R,
)
from tensorring.pairs import (
    functor_C,
    functor_Ind,
    functor_S,
    ind_map,
    pair_to_module,
)
from tensorring.quadruples import verify_cor_4_7
from tensorring.sampling import PAIR_STRATA, pair_samples, random_module, random_pair
from tensorring.tensor_ring import idempotent_bimodule, tensor_ring
from tensorring.verify import (
    phi_verdict,
    verify_cor_1_7,
    verify_lemma_1_6,
    verify_theorem_A,
    verify_theorem_B,
)

RESULTS = {}


@contextmanager
def criterion(num: int, title: str, limit: float):
    t0 = time.perf_counter()
    status, why = "FAIL", ""
    try:
        yield
        secs = time.perf_counter() - t0
        if secs > limit:
            why = f" (over the {limit:g}s limit)"
            raise AssertionError(f"criterion {num} took {secs:.2f}s, limit {limit}s")
        status = "PASS"
    except BaseException as e:
        why = why or f" ({type(e).__name__}: {str(e).splitlines()[0][:120] if str(e) else ''})"
        raise
    finally:
        secs = time.perf_counter() - t0
        line = f"[{status}] criterion {num}: {title} in {secs:.2f}s{why}"
        RESULTS[num] = line
        sys.__stdout__.write("\n" + line + "\n")
        sys.__stdout__.flush()


def fresh_preset(p=7):
    pa = path_algebra(QuiverPreset(3, 2, FieldSpec(p)))
    m = idempotent_bimodule(pa.algebra, pa.idempotent(1), pa.idempotent(3))
    return pa, m


def count_paths(n, h):
    """Paths of length < h on the n-cycle, and those starting at s / ending at t."""
    paths = [(s, l) for s in range(1, n + 1) for l in range(h)]
    ends = lambda s, l: (s - 1 + l) % n + 1
    return paths, ends


def test_criterion_1_example_reconstruction():
    with criterion(1, "preset n=3 h=2 i=1 j=3: dim R 6, M projective both sides, "
                      "M(x)M = 0, grading [6, 4]", 1.0):
        pa, m = fresh_preset()
        r = pa.algebra
        paths, ends = count_paths(3, 2)
        assert r.dim == len(paths) == 6
        # R e_1 = paths starting at 1; e_3 R = paths ending at 3
        dim_re1 = sum(1 for s, l in paths if s == 1)
        dim_e3r = sum(1 for s, l in paths if ends(s, l) == 3)
        assert m.dim == dim_re1 * dim_e3r == 4
        assert is_projective(m.left) and is_projective(m.right)
        assert tensor_over_R(m, m).dim == 0
        t = tensor_ring(r, m)
        assert t.grading == [6, 4]
        assert t.algebra.associativity_defect() is None


def test_criterion_2_condition_T():
    with criterion(2, "condition T on the preset, degrees 1..6, every slot 0", 5.0):
        pa, m = fresh_preset()
        rep = check_condition_T(tensor_ring(pa.algebra, m), 6)
        assert rep.holds
        assert len(rep.slots) == 3 * 1 * 6
        assert all(s.dim == 0 for s in rep.slots)


def test_criterion_3_lemma_1_6_cor_1_7():
    with criterion(3, "tensor over T: 100/100 against structure constants, "
                      "stalk copairs 100/100", 30.0):
        pa, m = fresh_preset()
        t = tensor_ring(pa.algebra, m)
        a = verify_lemma_1_6(t, samples=100, seed=0)
        b = verify_cor_1_7(t, samples=100, seed=0)
        assert a.samples == 100 and a.agree == 100, a.line()
        assert b.samples == 100 and b.agree == 100, b.line()


def test_criterion_4_theorem_A():
    with criterion(4, "Theorem A: 200 random pairs, is_pgf over T = (u monic and "
                      "coker PGF), 0 inconclusive", 120.0):
        pa, m = fresh_preset()
        t = tensor_ring(pa.algebra, m)
        rep = verify_theorem_A(t, samples=200, seed=42)
        assert rep.samples == 200 and rep.agree == 200 and rep.inconclusive == 0, rep.line()
        assert rep.notes["base_modules_pgf"] == 200
        # over the self-injective base the criterion is just "u monic"
        for s in pair_samples(t, 40, 42):
            assert (phi_verdict(s.pair, Window()) == YES) == s.pair.is_mono()


def test_criterion_5_theorem_B():
    with criterion(5, "Theorem B and the PGF variant: 200 random X, GF(X) iff GF(Ind X)",
                   120.0):
        pa, m = fresh_preset()
        t = tensor_ring(pa.algebra, m)
        gf, pgf = verify_theorem_B(t, samples=200, seed=0)
        assert gf.samples == 200 and gf.agree == 200, gf.line()
        assert pgf.samples == 200 and pgf.agree == 200, pgf.line()


def test_criterion_6_cor_4_7():
    with criterion(6, "triangular ring: PGF iff f monic, every f over F_2 with dims <= 3 "
                      "and every iso class over F_7; PGF = projective", 60.0):
        ex = verify_cor_4_7(Workspace(preset_triangular(p=2)).morita(), max_dim=3,
                            exhaustive=True)
        assert ex.samples == sum(2 ** (a * b) for a in range(4) for b in range(4)) - 1
        assert ex.passed and ex.notes["pgf_equals_projective_mismatches"] == 0, ex.line()
        iso = verify_cor_4_7(Workspace(preset_triangular(p=7)).morita(), max_dim=3)
        assert iso.passed and iso.notes["pgf_equals_projective_mismatches"] == 0, iso.line()


def test_criterion_7_mu_iso():
    with criterion(7, "mu: Morita ring and trivial extension tables agree bit-exactly", 10.0):
        for defn in (preset_triangular(), preset_morita_zero()):
            P, lam, te = mu_iso(Workspace(defn).morita_data())
            perm = np.argmax(P.data, axis=0)
            assert sorted(perm.tolist()) == list(range(lam.dim))
            assert np.array_equal(te.mult[np.ix_(perm, perm, perm)], lam.mult)
            assert np.array_equal(te.unit[perm], lam.unit)


def test_criterion_8_structural():
    with criterion(8, "rank-nullity, Tor/Ext duality, adjunctions, C Ind = Id, "
                      "exactness transport", 60.0):
        rng = np.random.default_rng(8)
        pa, m = fresh_preset()
        r = pa.algebra
        t = tensor_ring(r, m)
        p = r.p
        for _ in range(200):
            a = rng.integers(0, p, size=tuple(rng.integers(1, 9, size=2)))
            assert _rank(a, p) + _kernel(a, p).shape[1] == a.shape[1]
        for k in range(50):
            y = random_module(r, rng, side=RIGHT)
            x = random_module(r, rng)
            for i in range(5):
                assert ext(x, k_dual(y), i).dim == tor(y, x, i).dim
        for k in range(50):
            x = random_module(r, rng)
            w = random_pair(t, rng, PAIR_STRATA[k % len(PAIR_STRATA)])
            ind = pair_to_module(functor_Ind(t, x))
            assert hom_basis(ind, pair_to_module(w)).shape[0] == hom_basis(x, w.base).shape[0]
            y = random_module(r, rng)
            lhs = hom_basis(pair_to_module(w), pair_to_module(functor_S(t, y))).shape[0]
            assert lhs == hom_basis(functor_C(w), y).shape[0]
        for k in range(50):
            x = random_module(r, rng)
            assert is_isomorphic(functor_C(functor_Ind(t, x)), x)
            gens = generated_submodule(x, rng.integers(0, p, size=(x.dim, 1)))
            sub, inc = submodule(x, gens)
            quo, proj, _ = quotient_module(x, gens)
            a, b = ind_map(t, sub, x, inc), ind_map(t, x, quo, proj)
            assert _rank(a, p) == a.shape[1] and _rank(b, p) == b.shape[0]
            assert a.shape[0] == a.shape[1] + b.shape[0]
            assert not ((b @ a) % p).any()


def test_criterion_9_negative_controls():
    with criterion(9, "S1 over the triangular ring is not GP/PGF/GF; a non-projective "
                      "bimodule breaks condition T", 10.0):
        lam = Workspace(preset_triangular()).morita().lam
        s1 = simple_module(lam, 0)
        assert ext(s1, regular_module(lam), 1).dim >= 1
        for test in (is_gorenstein_projective, is_pgf, is_gf):
            v = test(s1)
            assert v.verdict == NO and "Ext^1" in v.obstruction
        pa, _ = fresh_preset()
        bad = tensor_ring(pa.algebra, simple_bimodule(pa.algebra, 1, 2))
        rep = check_condition_T(bad)
        assert not rep.holds
        w = rep.witness
        assert w.dim > 0 and w.degree >= 1


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
