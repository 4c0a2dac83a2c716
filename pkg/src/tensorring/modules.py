"""Finite-dimensional modules, bimodules and the linear algebra around them.

A module stores one action matrix per algebra basis element, acting on
column vectors.  For a right module the matrix of b is y -> y b, so a right
A-module is literally a left module over ``A.opposite`` with the same
matrices; most routines below work on left modules and reach right
modules through that identification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import FinDimAlgebra, _check_same_algebra
from .exactlin import (
    ExactMatrix,
    _col_echelon,
    _kernel,
    _mm,
    _pivot_rows,
    _quotient,
    _rank,
)

LEFT = "left"
RIGHT = "right"


class ModuleError(ValueError):
    pass


def _cols(v, rows: int) -> np.ndarray:
    """Coerce to a (rows, k) integer array, tolerating empty input."""
    v = np.asarray(v, dtype=np.int64)
    if v.size == 0:
        return np.zeros((rows, 0), dtype=np.int64)
    return v.reshape(rows, -1)


def _flip(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


@dataclass(frozen=True, eq=False)
class FdModule:
    algebra: FinDimAlgebra
    side: str
    action: np.ndarray  # (algebra.dim, dim, dim)
    name: str = ""

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ModuleError(f"side must be 'left' or 'right', not {self.side!r}")
        act = np.array(self.action, dtype=np.int64) % self.algebra.p
        if act.ndim != 3 or act.shape[0] != self.algebra.dim or act.shape[1] != act.shape[2]:
            if act.size == 0 and act.ndim == 3 and act.shape[0] == self.algebra.dim:
                act = np.zeros((self.algebra.dim, 0, 0), dtype=np.int64)
            else:
                raise ModuleError(f"action array has shape {act.shape}")
        act.setflags(write=False)
        object.__setattr__(self, "action", act)

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def act(self, x: np.ndarray) -> np.ndarray:
        """Matrix of the action of the algebra element x."""
        return np.tensordot(np.asarray(x, dtype=np.int64), self.action, axes=1) % self.p

    @property
    def left_algebra(self) -> FinDimAlgebra:
        """The algebra over which these matrices form a left module."""
        return self.algebra if self.side == LEFT else self.algebra.opposite

    def as_left(self) -> "FdModule":
        if self.side == LEFT:
            return self
        return FdModule(self.algebra.opposite, LEFT, self.action, self.name)

    def from_left(self, side: str, algebra: FinDimAlgebra) -> "FdModule":
        """Reinterpret a left module over algebra^(op) as a ``side`` module."""
        return FdModule(algebra, side, self.action, self.name)

    def action_defect(self) -> Optional[str]:
        p = self.p
        a = self.left_algebra
        if not np.array_equal(self.act(a.unit), np.eye(self.dim, dtype=np.int64)):
            return "unit does not act as the identity"
        n = self.dim
        if n == 0:
            return None
        # act(b_i) act(b_j) = sum_k m[i,j,k] act(b_k)
        flat = self.action.reshape(a.dim, n * n)
        prod = np.einsum("iab,jbc->ijac", self.action, self.action) % p
        want = np.tensordot(a.mult, flat, axes=([2], [0])).reshape(a.dim, a.dim, n, n) % p
        bad = np.argwhere((prod != want).any(axis=(2, 3)))
        if bad.size:
            i, j = bad[0]
            return f"action not multiplicative on basis pair ({i}, {j})"
        return None

    def validate(self) -> "FdModule":
        bad = self.action_defect()
        if bad:
            raise ModuleError(bad)
        return self

    def same_as(self, other: "FdModule") -> bool:
        return (self.side == other.side and self.dim == other.dim
                and np.array_equal(self.action, other.action))

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<FdModule{nm} {self.side} dim={self.dim} over {self.algebra.name or 'algebra'}>"


@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: FdModule
    target: FdModule
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.int64).reshape(self.target.dim, self.source.dim)
        object.__setattr__(self, "matrix", m % self.source.p)

    def intertwining_defect(self) -> Optional[int]:
        s, t = self.source, self.target
        p = s.p
        for g in range(s.algebra.dim):
            if not np.array_equal(_mm(self.matrix, s.action[g], p), _mm(t.action[g], self.matrix, p)):
                return g
        return None

    def validate(self) -> "ModuleHom":
        g = self.intertwining_defect()
        if g is not None:
            raise ModuleError(f"map does not commute with basis element {g}")
        return self

    def compose(self, first: "ModuleHom") -> "ModuleHom":
        """self ∘ first."""
        return ModuleHom(first.source, self.target, _mm(self.matrix, first.matrix, self.source.p))

    @property
    def rank(self) -> int:
        return _rank(self.matrix, self.source.p)

    def is_mono(self) -> bool:
        return self.rank == self.source.dim

    def is_epi(self) -> bool:
        return self.rank == self.target.dim

    def as_exact(self) -> ExactMatrix:
        return ExactMatrix(self.matrix, self.source.algebra.field)


@dataclass(frozen=True, eq=False)
class FdBimodule:
    """An A-B bimodule: left A-action and right B-action on one space."""

    left_algebra: FinDimAlgebra
    right_algebra: FinDimAlgebra
    left_action: np.ndarray
    right_action: np.ndarray
    name: str = ""

    def __post_init__(self):
        p = self.left_algebra.p
        la = np.array(self.left_action, dtype=np.int64) % p
        ra = np.array(self.right_action, dtype=np.int64) % p
        n = la.shape[1] if la.ndim == 3 else 0
        if la.shape != (self.left_algebra.dim, n, n) or ra.shape != (self.right_algebra.dim, n, n):
            raise ModuleError("bimodule action arrays have inconsistent shapes")
        la.setflags(write=False)
        ra.setflags(write=False)
        object.__setattr__(self, "left_action", la)
        object.__setattr__(self, "right_action", ra)

    @property
    def dim(self) -> int:
        return self.left_action.shape[1]

    @property
    def p(self) -> int:
        return self.left_algebra.p

    @property
    def left(self) -> FdModule:
        return FdModule(self.left_algebra, LEFT, self.left_action, self.name)

    @property
    def right(self) -> FdModule:
        return FdModule(self.right_algebra, RIGHT, self.right_action, self.name)

    def left_mat(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.int64), self.left_action, axes=1) % self.p

    def right_mat(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.int64), self.right_action, axes=1) % self.p

    def validate(self) -> "FdBimodule":
        self.left.validate()
        self.right.validate()
        p = self.p
        for i in range(self.left_algebra.dim):
            for j in range(self.right_algebra.dim):
                if not np.array_equal(_mm(self.left_action[i], self.right_action[j], p),
                                      _mm(self.right_action[j], self.left_action[i], p)):
                    raise ModuleError(f"left {i} and right {j} actions do not commute")
        return self

    def along_product(self, ab: FinDimAlgebra, left_factor: int, right_factor: int
                      ) -> "FdBimodule":
        """View as an (A x B)-bimodule, the other factor acting by zero."""
        def embed(action, alg, factor):
            split = alg.dim if factor == 0 else ab.dim - alg.dim
            out = np.zeros((ab.dim, self.dim, self.dim), dtype=np.int64)
            if factor == 0:
                out[:split] = action
            else:
                out[split:] = action
            return out

        return FdBimodule(ab, ab, embed(self.left_action, self.left_algebra, left_factor),
                          embed(self.right_action, self.right_algebra, right_factor), self.name)

    def __repr__(self):
        return f"<FdBimodule {self.name} dim={self.dim}>"


AnyLeft = Union[FdModule, FdBimodule]

# ----------------------------------------------------------------------------
# constructors


def zero_module(a: FinDimAlgebra, side: str = LEFT) -> FdModule:
    return FdModule(a, side, np.zeros((a.dim, 0, 0), dtype=np.int64))


def regular_module(a: FinDimAlgebra, side: str = LEFT) -> FdModule:
    if side == LEFT:
        return FdModule(a, LEFT, a.left_reg, "A")
    return FdModule(a, RIGHT, a.right_reg, "A_A")


def regular_bimodule(a: FinDimAlgebra) -> FdBimodule:
    return FdBimodule(a, a, a.left_reg, a.right_reg, "R")


def zero_bimodule(a: FinDimAlgebra, b: Optional[FinDimAlgebra] = None) -> FdBimodule:
    b = b or a
    return FdBimodule(a, b, np.zeros((a.dim, 0, 0), dtype=np.int64),
                      np.zeros((b.dim, 0, 0), dtype=np.int64), "0")


def _block_diag(mats: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(m.shape[0] for m in mats)
    k = sum(m.shape[1] for m in mats)
    out = np.zeros((n, k), dtype=np.int64)
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def direct_sum(mods: Sequence[FdModule], algebra: Optional[FinDimAlgebra] = None,
               side: Optional[str] = None) -> FdModule:
    if not mods:
        if algebra is None:
            raise ModuleError("empty direct sum needs an algebra")
        return zero_module(algebra, side or LEFT)
    a = mods[0].algebra
    s = mods[0].side
    for m in mods[1:]:
        if m.side != s:
            raise ModuleError("direct sum of modules on different sides")
    act = np.stack([_block_diag([m.action[g] for m in mods]) for g in range(a.dim)]) \
        if a.dim else np.zeros((0, 0, 0), dtype=np.int64)
    return FdModule(a, s, act, "+".join(m.name for m in mods if m.name))


def direct_sum_bimodule(x: FdBimodule, y: FdBimodule) -> FdBimodule:
    la = np.stack([_block_diag([x.left_action[g], y.left_action[g]])
                   for g in range(x.left_algebra.dim)])
    ra = np.stack([_block_diag([x.right_action[g], y.right_action[g]])
                   for g in range(x.right_algebra.dim)])
    return FdBimodule(x.left_algebra, x.right_algebra, la, ra, f"{x.name}+{y.name}")


def submodule(m: FdModule, basis: np.ndarray, name: str = "") -> Tuple[FdModule, np.ndarray]:
    """Submodule spanned by ``basis`` columns (must be invariant).

    Returns the module in the reduced column-echelon basis and the
    inclusion matrix.
    """
    p = m.p
    b = _col_echelon(_cols(basis, m.dim), p)
    piv = _pivot_rows(b)
    k = b.shape[1]
    act = np.zeros((m.algebra.dim, k, k), dtype=np.int64)
    for g in range(m.algebra.dim):
        img = _mm(m.action[g], b, p)
        sub = img[piv]
        if not np.array_equal(_mm(b, sub, p), img):
            raise ModuleError("span is not a submodule")
        act[g] = sub
    return FdModule(m.algebra, m.side, act, name), b


def quotient_module(m: FdModule, basis: np.ndarray, name: str = ""
                    ) -> Tuple[FdModule, np.ndarray, np.ndarray]:
    """m / span(basis): returns (module, projection, section)."""
    p = m.p
    proj, sect = _quotient(_cols(basis, m.dim), m.dim, p)
    k = proj.shape[0]
    act = np.zeros((m.algebra.dim, k, k), dtype=np.int64)
    for g in range(m.algebra.dim):
        act[g] = _mm(_mm(proj, m.action[g], p), sect, p)
    return FdModule(m.algebra, m.side, act, name), proj, sect


def generated_submodule(m: FdModule, vectors: np.ndarray) -> np.ndarray:
    """Reduced echelon basis of the submodule generated by the columns."""
    p = m.p
    v = _cols(vectors, m.dim)
    if v.shape[1] == 0 or m.dim == 0:
        return np.zeros((m.dim, 0), dtype=np.int64)
    imgs = np.concatenate([_mm(m.action[g], v, p) for g in range(m.algebra.dim)], axis=1)
    return _col_echelon(imgs, p)


def radical_of_module(m: FdModule) -> np.ndarray:
    """Basis of rad(M) = J M."""
    p = m.p
    a = m.left_algebra
    j = a.radical
    if j.shape[1] == 0 or m.dim == 0:
        return np.zeros((m.dim, 0), dtype=np.int64)
    imgs = np.concatenate([m.act(j[:, c]) for c in range(j.shape[1])], axis=1)
    return _col_echelon(imgs, p)


def idempotent_part(m: FdModule, e: np.ndarray) -> np.ndarray:
    """Basis of e M for a left module (M e for a right module)."""
    return _col_echelon(m.act(e), m.p)


# ----------------------------------------------------------------------------
# homs, kernels, cokernels


def _hom_equations(x: FdModule, y: FdModule) -> np.ndarray:
    p = x.p
    dx, dy = x.dim, y.dim
    basis = np.eye(dx * dy, dtype=np.int64)
    ix, iy = np.eye(dx, dtype=np.int64), np.eye(dy, dtype=np.int64)
    for g in x.left_algebra.generators:
        xg, yg = x.act(g), y.act(g)
        # F xg - yg F in row-major vec coordinates
        eq = (np.kron(iy, xg.T) - np.kron(yg, ix)) % p
        if basis.shape[1] == 0:
            break
        k = _kernel(_mm(eq, basis, p), p)
        basis = _mm(basis, k, p)
    return _col_echelon(basis, p) if basis.shape[1] else basis


def hom_space(x: FdModule, y: FdModule) -> List[ModuleHom]:
    """Canonical basis of Hom_A(x, y)."""
    return [ModuleHom(x, y, m) for m in hom_basis(x, y)]


def hom_basis(x: FdModule, y: FdModule) -> np.ndarray:
    """Hom_A(x, y) as an array of matrices, shape (k, dim y, dim x)."""
    if x.side != y.side:
        raise ModuleError("hom between modules on different sides")
    _check_same_algebra(x.algebra, y.algebra)
    if x.dim == 0 or y.dim == 0:
        return np.zeros((0, y.dim, x.dim), dtype=np.int64)
    b = _hom_equations(x, y)
    return np.ascontiguousarray(b.T.reshape(-1, y.dim, x.dim))


def kernel(f: ModuleHom) -> Tuple[FdModule, ModuleHom]:
    k = _kernel(f.matrix, f.source.p)
    mod, inc = submodule(f.source, k, "ker")
    return mod, ModuleHom(mod, f.source, inc)


def image(f: ModuleHom) -> Tuple[FdModule, ModuleHom]:
    b = _col_echelon(f.matrix, f.source.p)
    mod, inc = submodule(f.target, b, "im")
    return mod, ModuleHom(mod, f.target, inc)


def cokernel(f: ModuleHom) -> Tuple[FdModule, ModuleHom]:
    mod, proj, _ = quotient_module(f.target, f.matrix, "coker")
    return mod, ModuleHom(f.target, mod, proj)


# ----------------------------------------------------------------------------
# tensor and Hom over a base algebra


@dataclass(frozen=True, eq=False)
class TensorProduct:
    """Y (x)_R X as a quotient of Y (x)_k X (pairs ordered y-major)."""

    left_factor: object   # FdModule (right) or FdBimodule
    right_factor: object  # FdModule (left) or FdBimodule
    proj: np.ndarray
    sect: np.ndarray
    module: Optional[object]  # FdModule / FdBimodule when extra actions survive
    p: int

    @property
    def dim(self) -> int:
        return self.proj.shape[0]

    def pure(self, y: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Class of y (x) x."""
        return _mm(self.proj, np.kron(y, x).reshape(-1, 1), self.p).reshape(-1)


def _right_part(y) -> Tuple[FinDimAlgebra, np.ndarray, Optional[Tuple[FinDimAlgebra, np.ndarray]]]:
    """(R, right R-action, optional extra left action) of the left factor."""
    if isinstance(y, FdBimodule):
        return y.right_algebra, y.right_action, (y.left_algebra, y.left_action)
    if y.side != RIGHT:
        raise ModuleError("left tensor factor must be a right module or a bimodule")
    return y.algebra, y.action, None


def _left_part(x):
    if isinstance(x, FdBimodule):
        return x.left_algebra, x.left_action, (x.right_algebra, x.right_action)
    if x.side != LEFT:
        raise ModuleError("right tensor factor must be a left module or a bimodule")
    return x.algebra, x.action, None


def tensor_over_R(y, x, full_basis: bool = False) -> TensorProduct:
    """Y (x)_R X modulo span{y r (x) x - y (x) r x}.

    Relations are imposed for a generating set of R, or for every basis
    element when ``full_basis`` is set.  When Y carries an extra left
    action or X an extra right action the induced action is returned in
    ``.module`` (a bimodule when both do).
    """
    ra, yr, yextra = _right_part(y)
    rb, xl, xextra = _left_part(x)
    _check_same_algebra(ra, rb)
    p = ra.p
    dy, dx = yr.shape[1], xl.shape[1]
    n = dy * dx
    iy, ix = np.eye(dy, dtype=np.int64), np.eye(dx, dtype=np.int64)
    if n == 0:
        proj = np.zeros((0, 0), dtype=np.int64)
        sect = proj
    else:
        gens = [ra.basis_vector(i) for i in range(ra.dim)] if full_basis else ra.generators
        rels = []
        for g in gens:
            ya = np.tensordot(g, yr, axes=1) % p
            xa = np.tensordot(g, xl, axes=1) % p
            rels.append((np.kron(ya, ix) - np.kron(iy, xa)) % p)
        proj, sect = _quotient(np.concatenate(rels, axis=1), n, p)
    k = proj.shape[0]

    def induced(ops):
        return np.stack([_mm(_mm(proj, o, p), sect, p) for o in ops]) if len(ops) else \
            np.zeros((0, k, k), dtype=np.int64)

    left_act = right_act = None
    if yextra is not None:
        left_act = induced([np.kron(yextra[1][g], ix) for g in range(yextra[0].dim)])
    if xextra is not None:
        right_act = induced([np.kron(iy, xextra[1][g]) for g in range(xextra[0].dim)])
    module = None
    if left_act is not None and right_act is not None:
        module = FdBimodule(yextra[0], xextra[0], left_act, right_act)
    elif left_act is not None:
        module = FdModule(yextra[0], LEFT, left_act)
    elif right_act is not None:
        module = FdModule(xextra[0], RIGHT, right_act)
    return TensorProduct(y, x, proj, sect, module, p)


def tensor_map(t_src: TensorProduct, t_tgt: TensorProduct,
               fy: Optional[np.ndarray] = None, fx: Optional[np.ndarray] = None) -> np.ndarray:
    """Matrix of fy (x) fx between two tensor products (identity when None)."""
    p = t_src.p
    ys = t_src.left_factor.dim
    xs = t_src.right_factor.dim
    fy = np.eye(ys, dtype=np.int64) if fy is None else fy
    fx = np.eye(xs, dtype=np.int64) if fx is None else fx
    return _mm(_mm(t_tgt.proj, np.kron(fy, fx), p), t_src.sect, p)


@dataclass(frozen=True, eq=False)
class HomModule:
    """Hom_{R^op}(M, Y) with basis matrices and its induced right action."""

    basis: np.ndarray  # (k, dim Y, dim M)
    module: FdModule
    pivots: Tuple[int, ...]

    def coords(self, phi: np.ndarray) -> np.ndarray:
        """Coordinates of a map M -> Y lying in the space."""
        flat = np.asarray(phi, dtype=np.int64).reshape(-1)
        return flat[list(self.pivots)]

    def element(self, c: np.ndarray) -> np.ndarray:
        return np.tensordot(np.asarray(c, dtype=np.int64), self.basis, axes=1) % self.module.p


def hom_over_Rop(m: FdBimodule, y: FdModule) -> HomModule:
    """Hom_{R^op}(M, Y) for an S-R bimodule M and right R-module Y.

    The result is a right S-module through (phi s)(m) = phi(s m).
    """
    if y.side != RIGHT:
        raise ModuleError("hom_over_Rop needs a right module")
    s_alg = m.left_algebra
    p = y.p
    basis = hom_basis(m.right, y)
    k = basis.shape[0]
    flat = basis.reshape(k, y.dim * m.dim).T  # columns, reduced echelon
    piv = tuple(_pivot_rows(flat)) if k else ()
    act = np.zeros((s_alg.dim, k, k), dtype=np.int64)
    for g in range(s_alg.dim):
        for j in range(k):
            img = _mm(basis[j], m.left_action[g], p).reshape(-1)
            act[g][:, j] = img[list(piv)]
    return HomModule(basis, FdModule(s_alg, RIGHT, act), piv)


def k_dual(x):
    """Field dual Hom_k(-, k): swaps sides, transposes actions."""
    if isinstance(x, FdBimodule):
        return FdBimodule(x.right_algebra, x.left_algebra,
                          np.transpose(x.right_action, (0, 2, 1)),
                          np.transpose(x.left_action, (0, 2, 1)), f"D({x.name})")
    return FdModule(x.algebra, _flip(x.side), np.transpose(x.action, (0, 2, 1)),
                    f"D({x.name})" if x.name else "")


def dual_map(f: ModuleHom) -> ModuleHom:
    return ModuleHom(k_dual(f.target), k_dual(f.source), f.matrix.T)


# ----------------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    reason: str
    trials: int = 0
    witness: Optional[np.ndarray] = None

    def __bool__(self):
        return self.isomorphic


EXHAUSTIVE_HOM_DIM = 4
RANDOM_TRIALS = 1 << 14


def is_isomorphic(x: FdModule, y: FdModule, seed: int = 0,
                  trials: int = RANDOM_TRIALS) -> IsoResult:
    """Decide x ≅ y by searching Hom(x, y) for an invertible element."""
    if x.side != y.side:
        raise ModuleError("modules on different sides")
    if x.dim != y.dim:
        return IsoResult(False, "dimensions differ")
    if x.dim == 0:
        return IsoResult(True, "both zero", witness=np.zeros((0, 0), dtype=np.int64))
    p = x.p
    a = x.left_algebra
    # idempotent screen: dim e X is an isomorphism invariant
    for e in a.primitive_idempotents:
        if _rank(x.act(e), p) != _rank(y.act(e), p):
            return IsoResult(False, "dimension vectors differ")
    homs = hom_basis(x, y)
    k = homs.shape[0]
    if k == 0:
        return IsoResult(False, "no nonzero homomorphisms")
    n = x.dim
    if hom_basis(x, x).shape[0] != k or hom_basis(y, y).shape[0] != k:
        return IsoResult(False, "hom dimensions differ")
    for j in range(k):
        if _rank(homs[j], p) == n:
            return IsoResult(True, "basis element invertible", 1, homs[j])
    if k <= EXHAUSTIVE_HOM_DIM:
        count = 0
        for coeffs in itertools.product(range(p), repeat=k):
            count += 1
            f = np.tensordot(np.array(coeffs, dtype=np.int64), homs, axes=1) % p
            if _rank(f, p) == n:
                return IsoResult(True, "exhaustive search", count, f)
        return IsoResult(False, "no invertible hom (exhaustive)", count)
    rng = np.random.default_rng(seed)
    for t in range(trials):
        c = rng.integers(0, p, size=k)
        f = np.tensordot(c, homs, axes=1) % p
        if _rank(f, p) == n:
            return IsoResult(True, "random search", t + 1, f)
    return IsoResult(False, f"no invertible hom found in {trials} trials", trials)


__all__ = [
    "LEFT",
    "RIGHT",
    "ModuleError",
    "FdModule",
    "FdBimodule",
    "ModuleHom",
    "TensorProduct",
    "HomModule",
    "IsoResult",
    "zero_module",
    "regular_module",
    "regular_bimodule",
    "zero_bimodule",
    "direct_sum",
    "direct_sum_bimodule",
    "submodule",
    "quotient_module",
    "generated_submodule",
    "radical_of_module",
    "idempotent_part",
    "hom_space",
    "hom_basis",
    "kernel",
    "image",
    "cokernel",
    "tensor_over_R",
    "tensor_map",
    "hom_over_Rop",
    "k_dual",
    "dual_map",
    "is_isomorphic",
]
