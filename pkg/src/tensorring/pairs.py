"""Pairs (X, u) and copairs [Y, v] over a tensor ring.

A left T_R(M)-module is the same thing as an R-module X with an R-linear
u : M (x)_R X -> X; a right one is a right R-module Y with a right-linear
v : Y -> Hom_{R^op}(M, Y).  This module converts between the two views and
implements the adjoint functors and the tensor presentation over T.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .exactlin import _col_echelon, _kernel, _mm, _quotient, _rank
from .modules import (
    FdModule,
    HomModule,
    LEFT,
    ModuleError,
    ModuleHom,
    RIGHT,
    TensorProduct,
    cokernel,
    hom_basis,
    hom_over_Rop,
    kernel,
    tensor_map,
    tensor_over_R,
)
from .tensor_ring import TensorRing


class PairError(ModuleError):
    pass


def _mx(ring: TensorRing, x: FdModule) -> TensorProduct:
    return tensor_over_R(ring.bimodule, x)


@dataclass(frozen=True, eq=False)
class PairModule:
    ring: TensorRing
    base: FdModule
    u: np.ndarray  # dim X x dim(M (x)_R X)

    def __post_init__(self):
        if self.base.side != LEFT:
            raise PairError("the base of a pair is a left R-module")
        u = np.asarray(self.u, dtype=np.int64).reshape(self.base.dim, self.mx.dim) % self.ring.p
        object.__setattr__(self, "u", u)

    @cached_property
    def mx(self) -> TensorProduct:
        return _mx(self.ring, self.base)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def u_hom(self) -> ModuleHom:
        return ModuleHom(self.mx.module, self.base, self.u)

    def is_mono(self) -> bool:
        return _rank(self.u, self.ring.p) == self.mx.dim

    def validate(self) -> "PairModule":
        bad = self.u_hom.intertwining_defect()
        if bad is not None:
            raise PairError(f"u is not R-linear (basis element {bad})")
        return self

    def __repr__(self):
        return f"<PairModule dim={self.dim} rank(u)={_rank(self.u, self.ring.p)}>"


@dataclass(frozen=True, eq=False)
class CoPairModule:
    ring: TensorRing
    base: FdModule
    v: np.ndarray  # coordinates in hom.basis, dim Hom x dim Y

    def __post_init__(self):
        if self.base.side != RIGHT:
            raise PairError("the base of a copair is a right R-module")
        v = np.asarray(self.v, dtype=np.int64).reshape(self.hom.module.dim, self.base.dim)
        object.__setattr__(self, "v", v % self.ring.p)

    @cached_property
    def hom(self) -> HomModule:
        return hom_over_Rop(self.ring.bimodule, self.base)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def v_hom(self) -> ModuleHom:
        return ModuleHom(self.base, self.hom.module, self.v)

    def validate(self) -> "CoPairModule":
        bad = self.v_hom.intertwining_defect()
        if bad is not None:
            raise PairError(f"v is not right R-linear (basis element {bad})")
        return self

    def layer1(self) -> np.ndarray:
        """B[mu] = matrix of y -> v(y)(m_mu), shape (dim M, dim Y, dim Y)."""
        b = self.hom.basis  # (k, dim Y, dim M)
        if b.shape[0] == 0:
            return np.zeros((self.ring.bimodule.dim, self.dim, self.dim), dtype=np.int64)
        return np.einsum("kym,kz->myz", b, self.v) % self.ring.p


# ----------------------------------------------------------------------------
# equivalence with T-modules


def _deep_actions(ring: TensorRing, first: np.ndarray, base_action: np.ndarray,
                  right: bool) -> np.ndarray:
    """Action array over T given the layer-0 and layer-1 action matrices.

    For l in L_i lifted to sum c[mu, a] m_mu (x) l_a the left action is
    sum c A_mu A_a; on a right module it is sum c A_a B_mu.
    """
    p = ring.p
    n = base_action.shape[1]
    blocks = [base_action % p, first % p]
    for i in range(2, ring.N + 1):
        sect = ring.lift(i)
        prev = blocks[-1]
        if right:
            pair = np.einsum("ayz,mzw->mayw", prev, first)
        else:
            pair = np.einsum("myz,azw->mayw", first, prev)
        blocks.append(np.einsum("mal,mayw->lyw", sect, pair % p) % p)
    out = np.concatenate(blocks[: ring.N + 1], axis=0) if ring.N >= 1 else blocks[0]
    return out.reshape(ring.algebra.dim, n, n)


def pair_to_module(pr: PairModule) -> FdModule:
    ring = pr.ring
    n = pr.dim
    dm = ring.bimodule.dim
    if ring.N == 0:
        return FdModule(ring.algebra, LEFT, pr.base.action)
    # A_mu = u o pi o (e_mu (x) -)
    full = _mm(pr.u, pr.mx.proj, ring.p) if pr.mx.dim else np.zeros((n, dm * n), dtype=np.int64)
    first = np.transpose(full.reshape(n, dm, n), (1, 0, 2))
    return FdModule(ring.algebra, LEFT, _deep_actions(ring, first, pr.base.action, False))


def module_to_pair(ring: TensorRing, t: FdModule) -> PairModule:
    if t.side != LEFT or t.algebra is not ring.algebra:
        raise PairError("module_to_pair needs a left module over the tensor ring")
    r = ring.base
    n = t.dim
    x = FdModule(r, LEFT, t.action[: r.dim])
    if ring.N == 0:
        return PairModule(ring, x, np.zeros((n, 0), dtype=np.int64))
    sl = ring.layer_slice(1)
    full = np.transpose(t.action[sl], (1, 0, 2)).reshape(n, ring.bimodule.dim * n)
    mx = _mx(ring, x)
    u = _mm(full, mx.sect, ring.p)
    if not np.array_equal(_mm(u, mx.proj, ring.p), full % ring.p):
        raise PairError("layer-1 action is not R-balanced")
    return PairModule(ring, x, u)


def copair_to_module(c: CoPairModule) -> FdModule:
    ring = c.ring
    if ring.N == 0:
        return FdModule(ring.algebra, RIGHT, c.base.action)
    return FdModule(ring.algebra, RIGHT, _deep_actions(ring, c.layer1(), c.base.action, True))


def module_to_copair(ring: TensorRing, z: FdModule) -> CoPairModule:
    if z.side != RIGHT or z.algebra is not ring.algebra:
        raise PairError("module_to_copair needs a right module over the tensor ring")
    r = ring.base
    n = z.dim
    y = FdModule(r, RIGHT, z.action[: r.dim])
    hm = hom_over_Rop(ring.bimodule, y)
    if ring.N == 0:
        return CoPairModule(ring, y, np.zeros((hm.module.dim, n), dtype=np.int64))
    first = z.action[ring.layer_slice(1)]  # (dim M, n, n)
    v = np.zeros((hm.module.dim, n), dtype=np.int64)
    for col in range(n):
        phi = first[:, :, col].T  # column mu = (y_col) m_mu
        c = hm.coords(phi)
        if not np.array_equal(hm.element(c), phi % ring.p):
            raise PairError("layer-1 action is not right R-linear in M")
        v[:, col] = c
    return CoPairModule(ring, y, v)


# ----------------------------------------------------------------------------
# functors


def functor_S(ring: TensorRing, x: FdModule) -> PairModule:
    mx = _mx(ring, x)
    return PairModule(ring, x, np.zeros((x.dim, mx.dim), dtype=np.int64))


def functor_C(pr: PairModule) -> FdModule:
    return cokernel(pr.u_hom)[0]


def functor_U(pr: PairModule) -> FdModule:
    return pr.base


def functor_Ind(ring: TensorRing, x: FdModule) -> PairModule:
    """T (x)_R X, i.e. the sum of M^i (x) X with the shift inclusion."""
    t = tensor_over_R(ring.as_TR, x)
    return module_to_pair(ring, t.module)


def ind_map(ring: TensorRing, x: FdModule, y: FdModule, f: np.ndarray) -> np.ndarray:
    """Matrix of Ind(f) = T (x) f in the bases used by functor_Ind."""
    return tensor_map(tensor_over_R(ring.as_TR, x), tensor_over_R(ring.as_TR, y), None, f)


def functor_K(c: CoPairModule) -> FdModule:
    return kernel(c.v_hom)[0]


def functor_Coind(ring: TensorRing, y: FdModule) -> CoPairModule:
    """Hom_{R^op}(T, Y) with (phi t)(s) = phi(t s)."""
    hm = hom_over_Rop(ring.as_TR, y)
    return module_to_copair(ring, hm.module)


def copair_S(ring: TensorRing, y: FdModule) -> CoPairModule:
    """Stalk copair [Y, 0]."""
    hm = hom_over_Rop(ring.bimodule, y)
    return CoPairModule(ring, y, np.zeros((hm.module.dim, y.dim), dtype=np.int64))


# ----------------------------------------------------------------------------
# tensor over T


@dataclass(frozen=True, eq=False)
class TensorOverT:
    base: TensorProduct       # Y (x)_R X
    proj: np.ndarray          # from Y (x)_R X onto the quotient
    relations: np.ndarray     # spanning set of H inside Y (x)_R X

    @property
    def dim(self) -> int:
        return self.proj.shape[0]


def tensor_over_T(c: CoPairModule, pr: PairModule) -> TensorOverT:
    """(Y (x)_R X) / H with H spanned by v(y)(m) (x) x - y (x) u(m (x) x)."""
    ring = c.ring
    p = ring.p
    t0 = tensor_over_R(c.base, pr.base)
    dy, dx = c.dim, pr.dim
    dm = ring.bimodule.dim
    gens = []
    if ring.N >= 1 and t0.dim:
        bs = c.layer1()
        full = _mm(pr.u, pr.mx.proj, p) if pr.mx.dim else np.zeros((dx, dm * dx), dtype=np.int64)
        amu = np.transpose(full.reshape(dx, dm, dx), (1, 0, 2))
        iy, ix = np.eye(dy, dtype=np.int64), np.eye(dx, dtype=np.int64)
        for mu in range(dm):
            rel = (np.kron(bs[mu], ix) - np.kron(iy, amu[mu])) % p
            gens.append(_mm(t0.proj, rel, p))
    h = np.concatenate(gens, axis=1) if gens else np.zeros((t0.dim, 0), dtype=np.int64)
    h = _col_echelon(h, p) if h.shape[1] else h
    proj, _ = _quotient(h, t0.dim, p)
    return TensorOverT(t0, proj, h)


def tensor_over_T_direct(c: CoPairModule, pr: PairModule) -> int:
    """Oracle: dim of Z (x)_T W from the structure constants of T."""
    z = copair_to_module(c)
    w = pair_to_module(pr)
    return tensor_over_R(z, w, full_basis=True).dim


# ----------------------------------------------------------------------------
# membership in Phi(class) and Gamma-morphisms


@dataclass(frozen=True)
class PhiResult:
    member: bool
    mono: bool
    coker: FdModule
    class_ok: Optional[bool]

    def __bool__(self):
        return self.member


def phi_membership(pr: PairModule, class_test: Callable[[FdModule], bool]) -> PhiResult:
    mono = pr.is_mono()
    ck = functor_C(pr)
    ok = bool(class_test(ck)) if mono else None
    return PhiResult(bool(mono and ok), mono, ck, ok)


def gamma_hom_basis(a: PairModule, b: PairModule) -> np.ndarray:
    """R-maps f : X -> X' with f u = u' (M (x) f), shape (k, dim X', dim X)."""
    p = a.ring.p
    cand = hom_basis(a.base, b.base)
    k = cand.shape[0]
    if k == 0:
        return cand
    cols = []
    for f in cand:
        lhs = _mm(f, a.u, p)
        mf = tensor_map(a.mx, b.mx, None, f)
        rhs = _mm(b.u, mf, p)
        cols.append(((lhs - rhs) % p).reshape(-1))
    eq = np.stack(cols, axis=1)
    ker = _kernel(eq, p)
    if ker.shape[1] == 0:
        return np.zeros((0, b.dim, a.dim), dtype=np.int64)
    flat = _mm(cand.reshape(k, -1).T, ker, p)
    flat = _col_echelon(flat, p)
    return np.ascontiguousarray(flat.T.reshape(-1, b.dim, a.dim))


def gamma_hom_dim(a: PairModule, b: PairModule) -> int:
    return gamma_hom_basis(a, b).shape[0]


__all__ = [
    "PairError",
    "PairModule",
    "CoPairModule",
    "pair_to_module",
    "module_to_pair",
    "copair_to_module",
    "module_to_copair",
    "functor_S",
    "functor_C",
    "functor_U",
    "functor_Ind",
    "ind_map",
    "functor_K",
    "functor_Coind",
    "copair_S",
    "TensorOverT",
    "tensor_over_T",
    "tensor_over_T_direct",
    "PhiResult",
    "phi_membership",
    "gamma_hom_basis",
    "gamma_hom_dim",
]
