"""Sample-based verifiers for the PGF / GF characterizations over T_R(M)."""

from __future__ import annotations

import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .gorenstein import (
    INCONCLUSIVE,
    NO,
    Window,
    check_condition_T,
    is_gf,
    is_pgf,
)
from .homological import pd_bounded
from .modules import RIGHT, tensor_over_R
from .pairs import (
    functor_C,
    functor_Ind,
    pair_to_module,
    tensor_over_T,
    tensor_over_T_direct,
)
from .sampling import (
    COPAIR_STRATA,
    PAIR_STRATA,
    module_samples,
    pair_samples,
    random_copair,
    random_pair,
)
from .tensor_ring import TensorRing


class HypothesisFailure(RuntimeError):
    def __init__(self, name: str, detail: str = ""):
        super().__init__(f"hypothesis failed: {name}" + (f" ({detail})" if detail else ""))
        self.name = name
        self.detail = detail


@dataclass
class Disagreement:
    index: int
    stratum: str
    lhs: str
    rhs: str
    data: Dict[str, object]


@dataclass
class VerifierReport:
    name: str
    samples: int = 0
    agree: int = 0
    inconclusive: int = 0
    disagreements: List[Disagreement] = dc_field(default_factory=list)
    table: Dict[str, Counter] = dc_field(default_factory=lambda: defaultdict(Counter))
    hypotheses: Dict[str, object] = dc_field(default_factory=dict)
    notes: Dict[str, object] = dc_field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.disagreements and self.inconclusive == 0 and self.agree == self.samples

    def record(self, index: int, stratum: str, lhs: str, rhs: str,
               dump: Optional[Callable[[], Dict[str, object]]] = None):
        self.samples += 1
        self.table[stratum][f"{lhs}/{rhs}"] += 1
        if INCONCLUSIVE in (lhs, rhs):
            self.inconclusive += 1
        elif lhs == rhs:
            self.agree += 1
        else:
            self.disagreements.append(Disagreement(index, stratum, lhs, rhs, dump() if dump else {}))

    def line(self) -> str:
        return (f"{self.name}: {self.agree}/{self.samples} agree, "
                f"{len(self.disagreements)} disagree, {self.inconclusive} inconclusive")

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "samples": self.samples,
            "agree": self.agree,
            "inconclusive": self.inconclusive,
            "disagreements": [
                {"index": d.index, "stratum": d.stratum, "lhs": d.lhs, "rhs": d.rhs,
                 "data": d.data} for d in self.disagreements],
            "table": {k: dict(sorted(v.items())) for k, v in sorted(self.table.items())},
            "hypotheses": self.hypotheses,
            "notes": self.notes,
            "passed": self.passed,
        }


def _pair_dump(pr) -> Dict[str, object]:
    return {"X_action": pr.base.action.tolist(), "u": pr.u.tolist()}


def check_hypotheses(ring: TensorRing, degree_bound: int = 6, pd_bound: int = 8
                     ) -> Dict[str, object]:
    """Condition (T) and finiteness of pd M on both sides, or HypothesisFailure."""
    rep = check_condition_T(ring, degree_bound)
    if not rep.holds:
        w = rep.witness
        raise HypothesisFailure("condition T", f"Tor_{w.degree} at layer {w.layer}, "
                                f"projective {w.projective + 1} has dim {w.dim}")
    pl = pd_bounded(ring.bimodule.left, pd_bound)
    if pl is None:
        raise HypothesisFailure("pd of M as a left module is finite", f"exceeds {pd_bound}")
    pr = pd_bounded(ring.bimodule.right, pd_bound)
    if pr is None:
        raise HypothesisFailure("fd of M as a right module is finite", f"exceeds {pd_bound}")
    return {"condition_T": "holds", "pd_left": pl, "fd_right": pr}


def _tri(v) -> str:
    return v.verdict


def phi_verdict(pr, window: Window, test=is_pgf) -> str:
    """Verdict of membership of (X, u) in Phi(class) with class given by ``test``."""
    if not pr.is_mono():
        return NO
    return test(functor_C(pr), window).verdict


def verify_theorem_A(ring: TensorRing, samples: int = 200, seed: int = 0,
                     window: Window = Window(), check: bool = True) -> VerifierReport:
    """is_pgf over T against (u monic and coker u PGF over R) on random pairs."""
    t0 = time.perf_counter()
    rep = VerifierReport("theorem-a")
    if check:
        rep.hypotheses = check_hypotheses(ring, window.degrees)
    base_yes = 0
    for s in pair_samples(ring, samples, seed):
        pr = s.pair
        lhs = is_pgf(pair_to_module(pr), window).verdict
        rhs = phi_verdict(pr, window)
        if is_pgf(pr.base, window).yes:
            base_yes += 1
        rep.record(s.index, s.stratum, lhs, rhs, lambda: _pair_dump(pr))
    rep.notes["base_modules_pgf"] = base_yes
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_theorem_B(ring: TensorRing, samples: int = 200, seed: int = 0,
                     window: Window = Window(), check: bool = True
                     ) -> Tuple[VerifierReport, VerifierReport]:
    """is_gf(X) vs is_gf(Ind X), and the same with is_pgf."""
    t0 = time.perf_counter()
    gf = VerifierReport("theorem-b")
    pgf = VerifierReport("pgf-ind")
    if check:
        gf.hypotheses = pgf.hypotheses = check_hypotheses(ring, window.degrees)
    for i, x in enumerate(module_samples(ring.base, samples, seed)):
        ind = pair_to_module(functor_Ind(ring, x))
        stratum = f"dim{x.dim}"
        gf.record(i, stratum, is_gf(x, window).verdict, is_gf(ind, window).verdict,
                  lambda: {"X_action": x.action.tolist()})
        pgf.record(i, stratum, is_pgf(x, window).verdict, is_pgf(ind, window).verdict,
                   lambda: {"X_action": x.action.tolist()})
    gf.seconds = pgf.seconds = time.perf_counter() - t0
    return gf, pgf


def verify_lemma_1_6(ring: TensorRing, samples: int = 100, seed: int = 0) -> VerifierReport:
    """dim (Y (x)_R X)/H against the tensor product over T from structure constants."""
    t0 = time.perf_counter()
    rep = VerifierReport("lemma-1.6")
    seqs = np.random.SeedSequence(seed).spawn(samples)
    for i, ss in enumerate(seqs):
        rng = np.random.default_rng(ss)
        cs = COPAIR_STRATA[i % len(COPAIR_STRATA)]
        ps = PAIR_STRATA[(i // len(COPAIR_STRATA)) % len(PAIR_STRATA)]
        c = random_copair(ring, rng, cs)
        pr = random_pair(ring, rng, ps)
        a = tensor_over_T(c, pr).dim
        b = tensor_over_T_direct(c, pr)
        rep.record(i, f"{cs}x{ps}", str(a), str(b))
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_cor_1_7(ring: TensorRing, samples: int = 100, seed: int = 0) -> VerifierReport:
    """S(W) (x)_T (X, u) has the dimension of W (x)_R coker(u)."""
    from .pairs import copair_S
    from .sampling import random_module

    t0 = time.perf_counter()
    rep = VerifierReport("cor-1.7")
    seqs = np.random.SeedSequence(seed).spawn(samples)
    for i, ss in enumerate(seqs):
        rng = np.random.default_rng(ss)
        ps = PAIR_STRATA[i % len(PAIR_STRATA)]
        w = random_module(ring.base, rng, side=RIGHT)
        pr = random_pair(ring, rng, ps)
        lhs = tensor_over_T(copair_S(ring, w), pr).dim
        rhs = tensor_over_R(w, functor_C(pr)).dim
        rep.record(i, ps, str(lhs), str(rhs))
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_lemma_1_5(ring: TensorRing, bound: int = 8) -> Dict[str, object]:
    """When pd M is finite, so is pd of every layer."""
    pm = pd_bounded(ring.bimodule.left, bound)
    layers = [pd_bounded(ring.layers[i].left, bound) for i in range(1, ring.N + 1)]
    return {"pd_M": pm, "pd_layers": layers,
            "holds": pm is None or all(v is not None for v in layers)}


def verify_lemma_2_3(ring: TensorRing, bound: int = 8) -> Dict[str, object]:
    """When pd M is finite, the stalk S(R) has finite pd over T."""
    from .gorenstein import stalk_of_regular_pd
    pm = pd_bounded(ring.bimodule.left, bound)
    ps = stalk_of_regular_pd(ring, bound)
    return {"pd_M": pm, "pd_stalk": ps, "holds": pm is None or ps is not None}


__all__ = [
    "HypothesisFailure",
    "Disagreement",
    "VerifierReport",
    "check_hypotheses",
    "phi_verdict",
    "verify_theorem_A",
    "verify_theorem_B",
    "verify_lemma_1_6",
    "verify_cor_1_7",
    "verify_lemma_1_5",
    "verify_lemma_2_3",
]
