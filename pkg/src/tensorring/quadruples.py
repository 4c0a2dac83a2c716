"""Modules over Morita context rings with zero pairings as quadruples.

A module over Λ = (A V; U B) is (X, Y, f, g) with f : U (x)_A X -> Y and
g : V (x)_B Y -> X.  With zero pairings Λ is the trivial extension of A x B
by U + V, and mu sends (X, Y, f, g) to the pair ((X, Y), (g, f)).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List

import numpy as np

from .algebra import AlgebraError, FinDimAlgebra, MoritaData, mu_iso, product_algebra
from .exactlin import _col_echelon, _inverse, _mm, _rank
from .gorenstein import NO, YES, INCONCLUSIVE, Window, is_gf, is_pgf
from .homological import indecomposable_projectives, is_projective, pd_bounded, tor
from .modules import (
    FdModule,
    LEFT,
    ModuleHom,
    cokernel,
    direct_sum_bimodule,
    tensor_over_R,
)
from .pairs import PairModule, module_to_pair, pair_to_module
from .sampling import PAIR_STRATA, module_samples, random_pair
from .tensor_ring import TensorRing, tensor_ring
from .verify import Disagreement, HypothesisFailure, VerifierReport


@dataclass(frozen=True, eq=False)
class MoritaSetup:
    """Λ_(0,0), the trivial extension it is isomorphic to, and the tensor ring."""

    data: MoritaData
    lam: FinDimAlgebra
    perm: np.ndarray     # perm[s] = target index of Λ basis element s
    ring: TensorRing     # T_{A x B}(U + V); its algebra equals the trivial extension

    @property
    def A(self) -> FinDimAlgebra:
        return self.data.A

    @property
    def B(self) -> FinDimAlgebra:
        return self.data.B

    @cached_property
    def offsets(self) -> Dict[str, slice]:
        A, B, U, V = self.data.A, self.data.B, self.data.U, self.data.V
        oV = A.dim
        oU = oV + V.dim
        oB = oU + U.dim
        return {"A": slice(0, oV), "V": slice(oV, oU), "U": slice(oU, oB),
                "B": slice(oB, oB + B.dim)}


def morita_setup(d: MoritaData) -> MoritaSetup:
    """Needs U (x)_A V = 0 = V (x)_B U so that U + V is 1-nilpotent."""
    P, lam, te = mu_iso(d)
    ab = product_algebra(d.A, d.B)
    uv = direct_sum_bimodule(d.U.along_product(ab, 1, 0), d.V.along_product(ab, 0, 1))
    ring = tensor_ring(ab, uv, nil_bound=2)
    if not np.array_equal(ring.algebra.mult, te.mult):
        raise AlgebraError("trivial extension and tensor ring disagree")
    perm = np.argmax(P.data, axis=0)
    return MoritaSetup(d, lam, perm, ring)


@dataclass(frozen=True, eq=False)
class Quadruple:
    data: MoritaData
    X: FdModule
    Y: FdModule
    f: np.ndarray  # dim Y x dim (U (x)_A X)
    g: np.ndarray  # dim X x dim (V (x)_B Y)

    @cached_property
    def ux(self):
        return tensor_over_R(self.data.U, self.X)

    @cached_property
    def vy(self):
        return tensor_over_R(self.data.V, self.Y)

    def f_hom(self) -> ModuleHom:
        return ModuleHom(self.ux.module, self.Y, self.f)

    def g_hom(self) -> ModuleHom:
        return ModuleHom(self.vy.module, self.X, self.g)

    def f_mono(self) -> bool:
        return _rank(self.f, self.X.p) == self.ux.dim

    def g_mono(self) -> bool:
        return _rank(self.g, self.X.p) == self.vy.dim


def quadruple(d: MoritaData, X: FdModule, Y: FdModule, f=None, g=None) -> Quadruple:
    ux = tensor_over_R(d.U, X)
    vy = tensor_over_R(d.V, Y)
    f = np.zeros((Y.dim, ux.dim), dtype=np.int64) if f is None else np.asarray(f, dtype=np.int64)
    g = np.zeros((X.dim, vy.dim), dtype=np.int64) if g is None else np.asarray(g, dtype=np.int64)
    return Quadruple(d, X, Y, f.reshape(Y.dim, ux.dim) % X.p, g.reshape(X.dim, vy.dim) % X.p)


def quadruple_to_module(s: MoritaSetup, q: Quadruple) -> FdModule:
    """The Λ-module on X + Y."""
    p = s.lam.p
    dx, dy = q.X.dim, q.Y.dim
    n = dx + dy
    act = np.zeros((s.lam.dim, n, n), dtype=np.int64)
    off = s.offsets
    act[off["A"], :dx, :dx] = q.X.action
    act[off["B"], dx:, dx:] = q.Y.action
    if q.vy.dim:
        full = _mm(q.g, q.vy.proj, p)  # dim X x (dim V * dim Y)
        for j in range(q.data.V.dim):
            act[off["V"].start + j, :dx, dx:] = full[:, j * dy:(j + 1) * dy]
    if q.ux.dim:
        full = _mm(q.f, q.ux.proj, p)
        for j in range(q.data.U.dim):
            act[off["U"].start + j, dx:, :dx] = full[:, j * dx:(j + 1) * dx]
    return FdModule(s.lam, LEFT, act)


def module_to_quadruple(s: MoritaSetup, t: FdModule) -> Quadruple:
    """Split a Λ-module along the idempotents 1_A, 1_B."""
    p = s.lam.p
    d = s.data
    off = s.offsets
    one_a = np.zeros(s.lam.dim, dtype=np.int64)
    one_a[off["A"]] = d.A.unit
    one_b = (s.lam.unit - one_a) % p
    bx = _col_echelon(t.act(one_a), p)
    by = _col_echelon(t.act(one_b), p)
    basis = np.concatenate([bx, by], axis=1)
    inv = _inverse(basis, p)
    act = np.stack([_mm(_mm(inv, t.action[g], p), basis, p) for g in range(s.lam.dim)])
    dx = bx.shape[1]
    X = FdModule(d.A, LEFT, act[off["A"], :dx, :dx])
    Y = FdModule(d.B, LEFT, act[off["B"], dx:, dx:])
    ux = tensor_over_R(d.U, X)
    vy = tensor_over_R(d.V, Y)
    dy = Y.dim
    f_full = np.concatenate([act[off["U"].start + j, dx:, :dx] for j in range(d.U.dim)], axis=1) \
        if d.U.dim else np.zeros((dy, 0), dtype=np.int64)
    g_full = np.concatenate([act[off["V"].start + j, :dx, dx:] for j in range(d.V.dim)], axis=1) \
        if d.V.dim else np.zeros((dx, 0), dtype=np.int64)
    f = _mm(f_full, ux.sect, p) if ux.dim else np.zeros((dy, 0), dtype=np.int64)
    g = _mm(g_full, vy.sect, p) if vy.dim else np.zeros((dx, 0), dtype=np.int64)
    if ux.dim and not np.array_equal(_mm(f, ux.proj, p), f_full % p):
        raise AlgebraError("U-action is not A-balanced")
    if vy.dim and not np.array_equal(_mm(g, vy.proj, p), g_full % p):
        raise AlgebraError("V-action is not B-balanced")
    return Quadruple(d, X, Y, f, g)


def transport(s: MoritaSetup, t: FdModule, to_pair: bool = True) -> FdModule:
    """Move a module along the basis bijection Λ <-> (A x B) ⋉ (U + V)."""
    if to_pair:
        act = np.zeros_like(t.action)
        act[s.perm] = t.action
        return FdModule(s.ring.algebra, LEFT, act)
    return FdModule(s.lam, LEFT, t.action[s.perm])


def mu(s: MoritaSetup, q: Quadruple) -> PairModule:
    """(X, Y, f, g) -> ((X, Y), (g, f)) over the tensor ring."""
    return module_to_pair(s.ring, transport(s, quadruple_to_module(s, q)))


def mu_inverse(s: MoritaSetup, pr: PairModule) -> Quadruple:
    return module_to_quadruple(s, transport(s, pair_to_module(pr), to_pair=False))


def quadruple_phi_verdict(q: Quadruple, window: Window) -> str:
    """f, g monic with coker f PGF over B and coker g PGF over A."""
    if not (q.f_mono() and q.g_mono()):
        return NO
    vs = [is_pgf(cokernel(q.f_hom())[0], window).verdict,
          is_pgf(cokernel(q.g_hom())[0], window).verdict]
    if NO in vs:
        return NO
    return INCONCLUSIVE if INCONCLUSIVE in vs else YES


# ----------------------------------------------------------------------------
# hypotheses


def check_morita_hypotheses(d: MoritaData, degrees: int = 6, bound: int = 8,
                            which: str = "4.4") -> Dict[str, object]:
    A, B, U, V = d.A, d.B, d.U, d.V
    out: Dict[str, object] = {}
    if not d.zero_pairings:
        raise HypothesisFailure("zero pairings")
    if which in ("4.4", "4.6a", "4.6b"):
        uv, vu = tensor_over_R(U, V).dim, tensor_over_R(V, U).dim
        out["UV"], out["VU"] = uv, vu
        if uv or vu:
            raise HypothesisFailure("U (x)_A V = 0 = V (x)_B U", f"dims {uv}, {vu}")

    def tor_vanish(name, outer, inner_bimod, base_alg):
        for k, s in enumerate(indecomposable_projectives(base_alg)):
            x = tensor_over_R(inner_bimod, s.module).module
            for j in range(1, degrees + 1):
                h = tor(outer.right, x, j)
                if h.dim:
                    raise HypothesisFailure(name, f"Tor_{j} with projective {k + 1} has dim {h.dim}")
        out[name] = "holds"

    def finite(name, mod):
        v = pd_bounded(mod, bound)
        if v is None:
            raise HypothesisFailure(name, f"exceeds {bound}")
        out[name] = v

    if which == "4.4":
        tor_vanish("Tor^B(V, U (x) P1) = 0", V, U, A)
        tor_vanish("Tor^A(U, V (x) P2) = 0", U, V, B)
        finite("pd_B U", U.left)
        finite("fd_A^op U", U.right)
        finite("pd_A V", V.left)
        finite("fd_B^op V", V.right)
    elif which == "4.6a":
        tor_vanish("Tor^A(U, V (x) P) = 0", U, V, B)
        finite("fd_A V", V.left)
        finite("fd_A^op U", U.right)
    elif which == "4.6b":
        tor_vanish("Tor^B(V, U (x) Q) = 0", V, U, A)
        finite("fd_B U", U.left)
        finite("fd_B^op V", V.right)
    elif which in ("4.7", "4.8"):
        finite("pd_B U", U.left)
        finite("fd_A^op U", U.right)
    return out


# ----------------------------------------------------------------------------
# verifiers


def _matrices(rows: int, cols: int, p: int):
    for vals in itertools.product(range(p), repeat=rows * cols):
        yield np.array(vals, dtype=np.int64).reshape(rows, cols)


def _normal_form(a: int, b: int, r: int) -> np.ndarray:
    f = np.zeros((b, a), dtype=np.int64)
    for i in range(r):
        f[i, i] = 1
    return f


def verify_cor_4_7(s: MoritaSetup, max_dim: int = 3, window: Window = Window(),
                   random_per_shape: int = 4, seed: int = 0,
                   exhaustive: bool = False) -> VerifierReport:
    """Triangular ring over a field: (X, Y, f, 0) is PGF iff f is monic.

    Runs over every isomorphism class (dims and rank of f) with
    dim X, dim Y <= max_dim, plus random f of each shape; with
    ``exhaustive`` every matrix f is enumerated instead (p^(ab) per shape,
    so only sensible for tiny p).  Also checks that PGF members are exactly
    the projective modules.
    """
    t0 = time.perf_counter()
    d = s.data
    rep = VerifierReport("cor-4.7")
    rep.hypotheses = check_morita_hypotheses(d, window.degrees, which="4.7")
    rng = np.random.default_rng(seed)
    proj_mismatch = 0
    A, B = d.A, d.B
    if A.dim != 1 or B.dim != 1 or d.U.dim != 1 or d.V.dim != 0:
        raise HypothesisFailure("triangular ring over a field (A = B = U = k, V = 0)")
    k = 0
    for a in range(0, max_dim + 1):
        for b in range(0, max_dim + 1):
            if a + b == 0:
                continue
            X = FdModule(A, LEFT, np.eye(a, dtype=np.int64).reshape(1, a, a))
            Y = FdModule(B, LEFT, np.eye(b, dtype=np.int64).reshape(1, b, b))
            if exhaustive:
                fs = [(f"a{a}b{b}", f) for f in _matrices(b, a, A.p)]
            else:
                fs = [(f"a{a}b{b}r{r}", _normal_form(a, b, r)) for r in range(min(a, b) + 1)]
                fs += [(f"a{a}b{b}rand", rng.integers(0, A.p, size=(b, a)))
                       for _ in range(random_per_shape if a and b else 0)]
            for label, f in fs:
                q = quadruple(d, X, Y, f)
                t = quadruple_to_module(s, q)
                lhs = is_pgf(t, window)
                rhs = YES if q.f_mono() else NO
                rep.record(k, f"dimX={a},dimY={b}", lhs.verdict, rhs,
                           lambda: {"X": a, "Y": b, "f": np.asarray(f).tolist()})
                if lhs.yes != is_projective(t):
                    proj_mismatch += 1
                k += 1
    rep.notes["pgf_equals_projective_mismatches"] = proj_mismatch
    if proj_mismatch:
        rep.disagreements.append(Disagreement(-1, "projectives", "pgf", "projective",
                                              {"mismatches": proj_mismatch}))
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_cor_4_4(s: MoritaSetup, samples: int = 100, seed: int = 0,
                   window: Window = Window()) -> VerifierReport:
    """PGF over Λ_(0,0) against the quadruple criterion on random modules."""
    t0 = time.perf_counter()
    rep = VerifierReport("cor-4.4")
    rep.hypotheses = check_morita_hypotheses(s.data, window.degrees, which="4.4")
    seqs = np.random.SeedSequence(seed).spawn(samples)
    roundtrip_fail = 0
    for i, ss in enumerate(seqs):
        rng = np.random.default_rng(ss)
        stratum = PAIR_STRATA[i % len(PAIR_STRATA)]
        pr = random_pair(s.ring, rng, stratum)
        q = mu_inverse(s, pr)
        back = mu_inverse(s, mu(s, q))
        if not (np.array_equal(back.f, q.f) and np.array_equal(back.g, q.g)
                and np.array_equal(back.X.action, q.X.action)
                and np.array_equal(back.Y.action, q.Y.action)):
            roundtrip_fail += 1
        t = quadruple_to_module(s, q)
        rep.record(i, stratum, is_pgf(t, window).verdict, quadruple_phi_verdict(q, window),
                   lambda: {"X": q.X.action.tolist(), "Y": q.Y.action.tolist(),
                            "f": q.f.tolist(), "g": q.g.tolist()})
    rep.notes["mu_roundtrip_failures"] = roundtrip_fail
    if roundtrip_fail:
        rep.disagreements.append(Disagreement(-1, "mu", "roundtrip", "identity",
                                              {"failures": roundtrip_fail}))
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_cor_4_2(s: MoritaSetup, samples: int = 100, seed: int = 0,
                   window: Window = Window()) -> VerifierReport:
    """PGF over the trivial extension equals Phi(PGF(A x B))."""
    from .verify import verify_theorem_A
    rep = verify_theorem_A(s.ring, samples, seed, window)
    rep.name = "cor-4.2"
    return rep


def embed_a(s: MoritaSetup, x: FdModule) -> Quadruple:
    """(X, U (x)_A X, 1, 0)."""
    ux = tensor_over_R(s.data.U, x)
    return quadruple(s.data, x, ux.module, np.eye(ux.dim, dtype=np.int64))


def embed_b(s: MoritaSetup, y: FdModule) -> Quadruple:
    """(V (x)_B Y, Y, 0, 1)."""
    vy = tensor_over_R(s.data.V, y)
    return quadruple(s.data, vy.module, y, None, np.eye(vy.dim, dtype=np.int64))


def verify_cor_4_6(s: MoritaSetup, samples: int = 50, seed: int = 0,
                   window: Window = Window(), name: str = "cor-4.6") -> VerifierReport:
    """X is GF over A iff (X, U (x) X, 1, 0) is GF over Λ; likewise for B."""
    t0 = time.perf_counter()
    rep = VerifierReport(name)
    hyp = {}
    for part, emb, alg in (("4.6a", embed_a, s.A), ("4.6b", embed_b, s.B)):
        try:
            hyp[part] = check_morita_hypotheses(s.data, window.degrees, which=part)
        except HypothesisFailure as e:
            hyp[part] = f"skipped: {e}"
            continue
        for i, x in enumerate(module_samples(alg, samples, seed + (part == "4.6b"))):
            t = quadruple_to_module(s, emb(s, x))
            rep.record(i, part, is_gf(x, window).verdict, is_gf(t, window).verdict,
                       lambda: {"X": x.action.tolist()})
    rep.hypotheses = hyp
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_cor_4_8(s: MoritaSetup, samples: int = 50, seed: int = 0,
                   window: Window = Window()) -> VerifierReport:
    """Triangular case (V = 0): X GF over A iff (X, U (x) X, 1, 0) GF."""
    t0 = time.perf_counter()
    rep = VerifierReport("cor-4.8")
    rep.hypotheses = check_morita_hypotheses(s.data, window.degrees, which="4.8")
    for i, x in enumerate(module_samples(s.A, samples, seed)):
        t = quadruple_to_module(s, embed_a(s, x))
        rep.record(i, "4.8", is_gf(x, window).verdict, is_gf(t, window).verdict,
                   lambda: {"X": x.action.tolist()})
    rep.seconds = time.perf_counter() - t0
    return rep


@dataclass
class Section4Report:
    reports: List[VerifierReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def lines(self) -> List[str]:
        return [r.line() for r in self.reports]


def verify_section4(s: MoritaSetup, samples: int = 100, seed: int = 0,
                    window: Window = Window()) -> Section4Report:
    """All corollaries whose hypotheses apply to the given Morita data."""
    d = s.data
    reps = []
    triangular = (d.A.dim == 1 and d.B.dim == 1 and d.U.dim == 1 and d.V.dim == 0)
    if triangular:
        reps.append(verify_cor_4_7(s, window=window, seed=seed))
        reps.append(verify_cor_4_8(s, min(samples, 20), seed, window))
    reps.append(verify_cor_4_2(s, samples, seed, window))
    reps.append(verify_cor_4_4(s, samples, seed, window))
    reps.append(verify_cor_4_6(s, max(1, samples // 2), seed, window))
    return Section4Report(reps)


__all__ = [
    "MoritaSetup",
    "Quadruple",
    "morita_setup",
    "quadruple",
    "quadruple_to_module",
    "module_to_quadruple",
    "transport",
    "mu",
    "mu_inverse",
    "quadruple_phi_verdict",
    "check_morita_hypotheses",
    "verify_cor_4_2",
    "verify_cor_4_4",
    "verify_cor_4_6",
    "verify_cor_4_7",
    "verify_cor_4_8",
    "verify_section4",
    "Section4Report",
    "embed_a",
    "embed_b",
]
