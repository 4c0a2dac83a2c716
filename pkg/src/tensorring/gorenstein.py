"""Condition (T) and window-bounded Gorenstein oracles.

A verdict is built from a finite window of a candidate complete resolution:
the minimal projective resolution of X on the left and, on the right, the
coresolution obtained by repeatedly mapping a cosyzygy into a projective
through a minimal generating set of its dual Hom(-, A).  That map is the
left add(A)-approximation, so it is injective exactly when the cosyzygy is
torsionless, and a Gorenstein projective module never fails this step.

"yes" needs a certificate that the window extends forever (finite
resolution or coresolution, periodic syzygies or cosyzygies, or a bound on
the self-injective dimension of A); otherwise a consistent window is
"inconclusive".
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import FinDimAlgebra
from .exactlin import _mm, _pivot_rows, _rank
from .homological import (
    ProjSum,
    element_matrix,
    hom_complex_map,
    indecomposable_projectives,
    minimal_projective_resolution,
    pd_bounded,
    proj_sum,
    projective_cover,
    self_injective_dimensions,
    tensor_complex_map,
    tor,
)
from .modules import (
    FdModule,
    RIGHT,
    hom_basis,
    is_isomorphic,
    k_dual,
    quotient_module,
    regular_module,
    tensor_over_R,
)
from .tensor_ring import TensorRing

GP, PGF, GF = "GP", "PGF", "GF"
YES, NO, INCONCLUSIVE = "yes", "no", "inconclusive"


# ----------------------------------------------------------------------------
# condition (T)


@dataclass(frozen=True)
class TorSlot:
    layer: int
    degree: int
    projective: int
    dim: int


@dataclass(frozen=True)
class ConditionTReport:
    degrees: int
    layers: int
    projectives: int
    slots: Tuple[TorSlot, ...]
    holds: bool
    witness: Optional[TorSlot]

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"


def check_condition_T(ring: TensorRing, degree_bound: int = 6) -> ConditionTReport:
    """Tor_j(M, M^i (x) P) for indecomposable projectives P, 1 <= i <= N, 1 <= j <= d."""
    r = ring.base
    m_right = ring.bimodule.right
    projs = indecomposable_projectives(r)
    slots = []
    witness = None
    for i in range(1, ring.N + 1):
        for k, s in enumerate(projs):
            x = tensor_over_R(ring.layers[i], s.module).module
            res = minimal_projective_resolution(x, degree_bound + 1)
            for j in range(1, degree_bound + 1):
                h = tor(m_right, x, j, res)
                slot = TorSlot(i, j, k, h.dim)
                slots.append(slot)
                if h.dim and witness is None:
                    witness = slot
    return ConditionTReport(degree_bound, ring.N, len(projs), tuple(slots),
                            witness is None, witness)


# ----------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Window:
    resolution_depth: int = 8
    coresolution_depth: int = 8
    degrees: int = 6

    def __post_init__(self):
        if min(self.resolution_depth, self.coresolution_depth, self.degrees) < 1:
            raise ValueError("window bounds must be positive")


@dataclass(eq=False)
class WindowComplex:
    """Terms left to right: P_r, ..., P_0, Q_0, ..., Q_c (zero ends included).

    ``maps[k]`` is the concrete matrix terms[k] -> terms[k+1] and
    ``elements[k]`` the same map as an element matrix.  ``split`` is the
    index of P_0; X is the image of maps[split].
    """

    algebra: FinDimAlgebra
    terms: List[ProjSum]
    maps: List[np.ndarray]
    elements: List[np.ndarray]
    split: int

    def __len__(self):
        return len(self.terms)

    def shape(self) -> List[int]:
        return [t.dim for t in self.terms]


def _interior_failures(ranks_in: Sequence[int], ranks_out: Sequence[int],
                       dims: Sequence[int]) -> List[int]:
    return [k for k in range(1, len(dims) - 1)
            if ranks_in[k] + ranks_out[k] != dims[k]]


def _check_sequence(mats: List[np.ndarray], dims: List[int], p: int) -> List[int]:
    """Positions (interior) where a sequence of maps dims[k] -> dims[k+1] is not exact."""
    rk = [_rank(m, p) if m.size else 0 for m in mats]
    rin = [0] + rk
    rout = rk + [0]
    bad = _interior_failures(rin, rout, dims)
    for k, m in enumerate(mats[:-1]):
        nxt = mats[k + 1]
        if m.size and nxt.size and _mm(nxt, m, p).any():
            bad.append(k + 1)
    return sorted(set(bad))


def window_exactness(w: WindowComplex) -> List[int]:
    p = w.algebra.p
    return _check_sequence(w.maps, w.shape(), p)


def window_hom_exactness(w: WindowComplex, z: Optional[FdModule] = None) -> List[int]:
    """Exactness of Hom(window, Z) (Z = A by default), read left to right."""
    z = regular_module(w.algebra) if z is None else z.as_left()
    from .homological import hom_term_dim
    mats = [hom_complex_map(z, w.terms[k], w.terms[k + 1], w.elements[k])
            for k in range(len(w.maps))]
    dims = [hom_term_dim(z, t) for t in w.terms]
    # Hom reverses arrows; reverse so the check sees a forward sequence
    return _check_sequence(mats[::-1], dims[::-1], w.algebra.p)


def window_tensor_exactness(w: WindowComplex, e: FdModule) -> List[int]:
    from .homological import tensor_term_dim
    e = FdModule(w.algebra, RIGHT, e.action)
    mats = [tensor_complex_map(e, w.terms[k], w.terms[k + 1], w.elements[k])
            for k in range(len(w.maps))]
    dims = [tensor_term_dim(e, t) for t in w.terms]
    return _check_sequence(mats, dims, w.algebra.p)


def indecomposable_injectives_right(a: FinDimAlgebra) -> List[FdModule]:
    """D(A e): the indecomposable injective right modules."""
    return [k_dual(s.module) for s in indecomposable_projectives(a)]


# ----------------------------------------------------------------------------
# the oracle


@dataclass(frozen=True)
class Approximation:
    proj: ProjSum
    matrix: np.ndarray  # dim Q x dim X


def dual_module(x: FdModule) -> Tuple[np.ndarray, FdModule]:
    """Hom_A(X, A) as a right A-module; returns (basis maps, module)."""
    a = x.algebra
    p = a.p
    homs = hom_basis(x, regular_module(a))
    k = homs.shape[0]
    flat = homs.reshape(k, a.dim * x.dim).T
    piv = _pivot_rows(flat) if k else []
    act = np.zeros((a.dim, k, k), dtype=np.int64)
    for g in range(a.dim):
        for j in range(k):
            # (f . g)(x) = f(x) g
            act[g][:, j] = _mm(a.right_reg[g], homs[j], p).reshape(-1)[piv]
    return homs, FdModule(a, RIGHT, act)


def left_approximation(x: FdModule) -> Approximation:
    """X -> Q = sum A e_i through a minimal generating set of Hom(X, A)."""
    a = x.algebra
    p = a.p
    homs, dual = dual_module(x)
    if dual.dim == 0:
        q = proj_sum(a, [])
        return Approximation(q, np.zeros((0, x.dim), dtype=np.int64))
    cov = projective_cover(dual)
    labels = cov.proj.labels
    q = proj_sum(a, labels)
    rows = []
    for s, g in zip(q.summands, cov.generators):
        phi = np.tensordot(g, homs, axes=1) % p  # dim A x dim X, lands in A e
        rows.append(phi[_pivot_rows(s.basis)])
    return Approximation(q, np.concatenate(rows, axis=0))


@dataclass
class GorensteinVerdict:
    kind: str
    verdict: str
    window: Window
    witness: Optional[WindowComplex] = None
    obstruction: Optional[str] = None
    certificate: Optional[str] = None
    details: Dict[str, object] = dc_field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.verdict == YES

    @property
    def no(self) -> bool:
        return self.verdict == NO

    def summary(self) -> str:
        tail = self.certificate if self.verdict == YES else self.obstruction
        return f"{self.kind}: {self.verdict}" + (f" ({tail})" if tail else "")


def _algebra_certificate(a: FinDimAlgebra, bound: int) -> Tuple[Optional[int], Optional[int]]:
    return self_injective_dimensions(a, bound)


def _periodic(mods: Sequence[FdModule]) -> Optional[Tuple[int, int]]:
    """First pair a < b with mods[a] iso mods[b] (b is the last index checked)."""
    for b in range(1, len(mods)):
        for a_ in range(b):
            if mods[a_].dim == mods[b].dim and mods[b].dim and is_isomorphic(mods[a_], mods[b]):
                return a_, b
    return None


def _core(x: FdModule, window: Window) -> GorensteinVerdict:
    """Shared GP computation; the kind is filled in by the callers."""
    x = x.as_left()
    a = x.algebra
    p = a.p
    details: Dict[str, object] = {}
    if x.dim == 0:
        return GorensteinVerdict(GP, YES, window, None, None, "zero module", details)

    depth = max(window.resolution_depth, window.degrees + 1)
    res = minimal_projective_resolution(x, depth)
    details["pd"] = res.length
    lam = regular_module(a)
    from .homological import ext

    ext_dims = []
    for j in range(1, window.degrees + 1):
        if res.terminated and j > res.length:
            ext_dims.append(0)
            continue
        h = ext(x, lam, j, res)
        ext_dims.append(h.dim)
        if h.dim:
            details["ext"] = ext_dims
            return GorensteinVerdict(GP, NO, window, None,
                                     f"Ext^{j}(X, A) has dimension {h.dim}", None, details)
    details["ext"] = ext_dims

    # coresolution by left add(A)-approximations
    cosyz = [x]
    approx: List[Approximation] = []
    projs: List[np.ndarray] = []
    for k in range(window.coresolution_depth + 1):
        cur = cosyz[-1]
        if cur.dim == 0:
            break
        ap = left_approximation(cur)
        if _rank(ap.matrix, p) < cur.dim:
            details["cosyzygies"] = [c.dim for c in cosyz]
            return GorensteinVerdict(
                GP, NO, window, None,
                f"cosyzygy {k} is not torsionless (approximation has a kernel)", None, details)
        approx.append(ap)
        nxt, pr, _ = quotient_module(ap.proj.module, ap.matrix, f"cosyz{k + 1}")
        projs.append(pr)
        cosyz.append(nxt)
    details["cosyzygies"] = [c.dim for c in cosyz]
    cores_done = cosyz[-1].dim == 0

    # assemble the window complex
    zero = proj_sum(a, [])
    nres = len(res.terms)
    terms: List[ProjSum] = []
    maps: List[np.ndarray] = []
    if res.terminated:
        terms.append(zero)
        maps.append(np.zeros((res.terms[-1].dim, 0), dtype=np.int64))
    for k in range(nres - 1, -1, -1):
        terms.append(res.terms[k])
        if k >= 1:
            maps.append(res.maps[k])
    split = len(terms) - 1
    maps.append(_mm(approx[0].matrix, res.maps[0], p))
    for k, ap in enumerate(approx):
        terms.append(ap.proj)
        if k + 1 < len(approx):
            maps.append(_mm(approx[k + 1].matrix, projs[k], p))
    if cores_done:
        maps.append(np.zeros((0, approx[-1].proj.dim), dtype=np.int64))
        terms.append(zero)
    elements = [element_matrix(terms[k], terms[k + 1], maps[k]) for k in range(len(maps))]
    w = WindowComplex(a, terms, maps, elements, split)

    # certificates for extending the window indefinitely
    id_left, id_right = _algebra_certificate(a, window.resolution_depth)
    details["selfinjective"] = (id_left, id_right)
    left_ok = None
    if res.terminated:
        left_ok = "finite resolution"
    elif id_left is not None and id_left <= window.degrees:
        left_ok = f"id(A) = {id_left} within the Ext window"
    else:
        per = _periodic(res.syzygies[: window.degrees + 1])
        if per is not None:
            left_ok = f"syzygies periodic ({per[0]}, {per[1]})"
    right_ok = None
    if cores_done:
        right_ok = "finite coresolution"
    elif id_left is not None and id_right is not None and id_left <= window.degrees:
        right_ok = "Iwanaga-Gorenstein algebra"
    else:
        per = _periodic(cosyz)
        if per is not None:
            right_ok = f"cosyzygies periodic ({per[0]}, {per[1]})"
    details["left"] = left_ok
    details["right"] = right_ok
    if left_ok and right_ok:
        return GorensteinVerdict(GP, YES, window, w, None, f"{left_ok}; {right_ok}", details)
    return GorensteinVerdict(GP, INCONCLUSIVE, window, w,
                             "window consistent but no certificate", None, details)


def _cached_core(x: FdModule, window: Window) -> GorensteinVerdict:
    x = x.as_left()
    key = ("gp", x.action.tobytes(), x.action.shape, window)
    hit = x.algebra.cache.get(key)
    if hit is None:
        hit = _core(x, window)
        x.algebra.cache[key] = hit
    return hit


def _copy(v: GorensteinVerdict, kind: str, **kw) -> GorensteinVerdict:
    out = GorensteinVerdict(kind, v.verdict, v.window, v.witness, v.obstruction,
                            v.certificate, dict(v.details))
    for k, val in kw.items():
        setattr(out, k, val)
    return out


def is_gorenstein_projective(x: FdModule, window: Window = Window()) -> GorensteinVerdict:
    return _copy(_cached_core(x, window), GP)


def is_pgf(x: FdModule, window: Window = Window()) -> GorensteinVerdict:
    """GP window plus exactness of E (x) window for every indecomposable injective E.

    For finite-dimensional algebras E (x) P is dual to Hom(P, D E) with D E
    projective, so a certified GP verdict already forces this; the check is
    still run on the witness window.
    """
    v = _copy(_cached_core(x, window), PGF)
    if v.witness is None:
        return v
    for idx, e in enumerate(indecomposable_injectives_right(v.witness.algebra)):
        bad = window_tensor_exactness(v.witness, e)
        if bad:
            return _copy(v, PGF, verdict=NO, certificate=None,
                         obstruction=f"E{idx + 1} (x) P not exact at position {bad[0]}")
    return v


def is_gf(x: FdModule, window: Window = Window()) -> GorensteinVerdict:
    """Flat = projective here, so the complex search is the PGF one."""
    return _copy(is_pgf(x, window), GF)


def validate_witness(v: GorensteinVerdict) -> List[str]:
    """Independent re-check of a witness window; empty list means sound."""
    w = v.witness
    if w is None:
        return [] if v.verdict != YES or v.certificate == "zero module" else ["missing witness"]
    out = []
    if window_exactness(w):
        out.append(f"not exact at {window_exactness(w)}")
    if window_hom_exactness(w):
        out.append(f"Hom(-, A) not exact at {window_hom_exactness(w)}")
    if v.kind in (PGF, GF):
        for idx, e in enumerate(indecomposable_injectives_right(w.algebra)):
            if window_tensor_exactness(w, e):
                out.append(f"E{idx + 1} (x) window not exact")
    for k, m in enumerate(w.maps):
        # every map must be a module map between the projective terms
        src, tgt = w.terms[k].module, w.terms[k + 1].module
        for g in range(w.algebra.dim):
            if src.dim and tgt.dim and not np.array_equal(
                    _mm(m, src.action[g], w.algebra.p), _mm(tgt.action[g], m, w.algebra.p)):
                out.append(f"map {k} not linear")
                break
    return out


# ----------------------------------------------------------------------------
# instance checks of the structural lemmas


def layer_dimensions_finite(ring: TensorRing, bound: int = 8) -> List[Optional[int]]:
    """pd of each layer M^i as a left module (finite when pd M is)."""
    return [pd_bounded(ring.layers[i].left, bound) for i in range(1, ring.N + 1)]


def stalk_of_regular_pd(ring: TensorRing, bound: int = 8) -> Optional[int]:
    """pd over T of the stalk module S(R)."""
    from .pairs import functor_S, pair_to_module
    return pd_bounded(pair_to_module(functor_S(ring, regular_module(ring.base))), bound)


__all__ = [
    "GP",
    "PGF",
    "GF",
    "YES",
    "NO",
    "INCONCLUSIVE",
    "TorSlot",
    "ConditionTReport",
    "check_condition_T",
    "Window",
    "WindowComplex",
    "GorensteinVerdict",
    "Approximation",
    "dual_module",
    "left_approximation",
    "is_gorenstein_projective",
    "is_pgf",
    "is_gf",
    "validate_witness",
    "window_exactness",
    "window_hom_exactness",
    "window_tensor_exactness",
    "indecomposable_injectives_right",
    "layer_dimensions_finite",
    "stalk_of_regular_pd",
]
