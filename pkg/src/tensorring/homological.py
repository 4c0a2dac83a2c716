"""Projective covers, minimal resolutions, Tor, Ext and bounded pd.

Projective modules are kept as sums of indecomposables A e for primitive
idempotents e.  A map between two such sums is then recorded both as a
plain matrix and as a matrix of algebra elements (a_ji in e_j A e_i for
the generator e_j going to component i), which is what tensoring with a
right module or applying Hom into a left module needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .algebra import FinDimAlgebra
from .exactlin import _col_echelon, _kernel, _mm, _pivot_rows, _rank
from .modules import (
    LEFT,
    RIGHT,
    FdModule,
    ModuleError,
    direct_sum,
    idempotent_part,
    k_dual,
    radical_of_module,
    regular_module,
    submodule,
)

DEFAULT_DEPTH = 20
DEFAULT_DEGREES = 6


class InsufficientDepth(RuntimeError):
    """A resolution was too short to decide the requested degree."""


# ----------------------------------------------------------------------------
# indecomposable projectives


@dataclass(frozen=True, eq=False)
class Summand:
    """A e inside the left regular module."""

    idempotent: np.ndarray
    basis: np.ndarray  # columns in algebra coordinates, reduced echelon
    module: FdModule

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def coords(self, v: np.ndarray) -> np.ndarray:
        return np.asarray(v)[_pivot_rows(self.basis)]

    @property
    def generator(self) -> np.ndarray:
        return self.coords(self.idempotent)


def projective_summand(a: FinDimAlgebra, e: np.ndarray) -> Summand:
    key = ("summand", np.asarray(e, dtype=np.int64).tobytes())
    hit = a.cache.get(key)
    if hit is not None:
        return hit
    p = a.p
    basis = _col_echelon(a.right_mat(e), p)
    piv = _pivot_rows(basis)
    k = basis.shape[1]
    act = np.zeros((a.dim, k, k), dtype=np.int64)
    for g in range(a.dim):
        act[g] = _mm(a.left_reg[g], basis, p)[piv]
    s = Summand(np.asarray(e, dtype=np.int64) % p, basis, FdModule(a, LEFT, act))
    a.cache[key] = s
    return s


def indecomposable_projectives(a: FinDimAlgebra) -> List[Summand]:
    """A e for each primitive idempotent in the chosen complete set."""
    return [projective_summand(a, e) for e in a.primitive_idempotents]


@dataclass(frozen=True, eq=False)
class ProjSum:
    """Direct sum of A e_1, ..., A e_m (left modules)."""

    algebra: FinDimAlgebra
    labels: Tuple[int, ...]  # indices into algebra.primitive_idempotents
    summands: Tuple[Summand, ...]
    module: FdModule
    offsets: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.module.dim

    def __len__(self):
        return len(self.summands)

    def generator(self, j: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        s = self.summands[j]
        v[self.offsets[j]:self.offsets[j] + s.dim] = s.generator
        return v

    def component(self, v: np.ndarray, i: int) -> np.ndarray:
        """Algebra element in slot i of a vector of the sum."""
        s = self.summands[i]
        return _mm(s.basis, np.asarray(v)[self.offsets[i]:self.offsets[i] + s.dim]
                   .reshape(-1, 1), self.algebra.p).reshape(-1)

    def embed(self, i: int, lam: np.ndarray) -> np.ndarray:
        """Vector of the sum with algebra element lam (in A e_i) in slot i."""
        v = np.zeros(self.dim, dtype=np.int64)
        s = self.summands[i]
        v[self.offsets[i]:self.offsets[i] + s.dim] = s.coords(lam)
        return v

    def idempotents(self) -> List[np.ndarray]:
        return [s.idempotent for s in self.summands]


def proj_sum(a: FinDimAlgebra, labels: Sequence[int]) -> ProjSum:
    ids = a.primitive_idempotents
    sums = tuple(projective_summand(a, ids[i]) for i in labels)
    mod = direct_sum([s.module for s in sums], a, LEFT)
    offs, o = [], 0
    for s in sums:
        offs.append(o)
        o += s.dim
    return ProjSum(a, tuple(labels), sums, mod, tuple(offs))


def element_matrix(src: ProjSum, tgt: ProjSum, mat: np.ndarray) -> np.ndarray:
    """Array (len src, len tgt, dim A): component i of the image of generator j."""
    a = src.algebra
    out = np.zeros((len(src), len(tgt), a.dim), dtype=np.int64)
    for j in range(len(src)):
        img = _mm(mat, src.generator(j).reshape(-1, 1), a.p).reshape(-1)
        for i in range(len(tgt)):
            out[j, i] = tgt.component(img, i)
    return out


def map_from_elements(src: ProjSum, tgt: ProjSum, elems: np.ndarray) -> np.ndarray:
    """Concrete matrix of the map sending generator j to sum_i elems[j, i] in slot i."""
    a = src.algebra
    p = a.p
    out = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    for j, s in enumerate(src.summands):
        # lam e_j -> sum_i lam a_ji ; columns of s.basis are lam's
        cols = np.zeros((tgt.dim, s.dim), dtype=np.int64)
        for i in range(len(tgt)):
            t = tgt.summands[i]
            imgs = _mm(a.right_mat(elems[j, i]), s.basis, p)  # lam -> lam a_ji
            cols[tgt.offsets[i]:tgt.offsets[i] + t.dim] = imgs[_pivot_rows(t.basis)]
        out[:, src.offsets[j]:src.offsets[j] + s.dim] = cols
    return out


# ----------------------------------------------------------------------------
# covers and resolutions


@dataclass(frozen=True, eq=False)
class Cover:
    proj: ProjSum
    matrix: np.ndarray  # dim X x dim P
    generators: Tuple[np.ndarray, ...]


def _left(x: FdModule) -> FdModule:
    return x.as_left()


def projective_cover(x: FdModule) -> Cover:
    """Minimal projective cover of a left module.

    Generators are picked greedily from e X for each primitive idempotent
    e; a candidate is kept only if it enlarges (A x + rad X) beyond what is
    already covered, so the top of the cover maps isomorphically onto the
    top of X.
    """
    x = _left(x)
    a = x.algebra
    p = a.p
    n = x.dim
    covered = radical_of_module(x)
    labels, gens = [], []
    ids = a.primitive_idempotents
    for idx, e in enumerate(ids):
        if covered.shape[1] == n:
            break
        cand = idempotent_part(x, e)
        for c in range(cand.shape[1]):
            if covered.shape[1] == n:
                break
            v = cand[:, c:c + 1]
            span = np.concatenate([x.action[g] @ v for g in range(a.dim)], axis=1) % p
            new = _col_echelon(np.concatenate([covered, span], axis=1), p)
            if new.shape[1] > covered.shape[1]:
                covered = new
                labels.append(idx)
                gens.append(v.reshape(-1))
    if covered.shape[1] != n:
        raise ModuleError("projective cover failed to generate the module")
    P = proj_sum(a, labels)
    mat = np.zeros((n, P.dim), dtype=np.int64)
    for j, (s, v) in enumerate(zip(P.summands, gens)):
        g = np.stack([x.action[b] @ v for b in range(a.dim)], axis=1) % p  # lam -> lam v
        mat[:, P.offsets[j]:P.offsets[j] + s.dim] = _mm(g, s.basis, p)
    return Cover(P, mat, tuple(gens))


def is_projective(x: FdModule) -> bool:
    """Projective iff the projective cover is an isomorphism."""
    x = _left(x)
    if x.dim == 0:
        return True
    return projective_cover(x).proj.dim == x.dim


def is_injective(x: FdModule) -> bool:
    return is_projective(k_dual(x))


@dataclass(eq=False)
class Resolution:
    """Minimal projective resolution P_L -> ... -> P_0 -> X.

    ``maps[0]`` is the augmentation P_0 -> X, ``maps[k]`` the differential
    P_k -> P_{k-1}; ``elements[k]`` its element matrix (k >= 1).
    ``syzygies[k]`` is Omega^k X inside P_{k-1} (``syzygies[0]`` is X).
    """

    module: FdModule
    terms: List[ProjSum] = field(default_factory=list)
    maps: List[np.ndarray] = field(default_factory=list)
    elements: List[Optional[np.ndarray]] = field(default_factory=list)
    syzygies: List[FdModule] = field(default_factory=list)
    inclusions: List[np.ndarray] = field(default_factory=list)
    terminated: bool = False
    minimal: bool = True

    @property
    def length(self) -> Optional[int]:
        """Projective dimension when terminated (-1 for the zero module)."""
        if not self.terminated:
            return None
        return len(self.terms) - 1

    @property
    def depth(self) -> int:
        return len(self.terms) - 1

    def term(self, k: int) -> Optional[ProjSum]:
        """P_k, or None for the zero term past termination."""
        if k < 0:
            return None
        if k < len(self.terms):
            return self.terms[k]
        if self.terminated:
            return None
        raise InsufficientDepth(f"resolution computed to depth {self.depth}, need {k}")

    def differential_elements(self, k: int) -> Optional[np.ndarray]:
        if k <= 0:
            return None
        if k < len(self.terms):
            return self.elements[k]
        if self.terminated:
            return None
        raise InsufficientDepth(f"resolution computed to depth {self.depth}, need {k}")


def minimal_projective_resolution(x: FdModule, depth: int = DEFAULT_DEPTH) -> Resolution:
    x = _left(x)
    p = x.p
    res = Resolution(x)
    cur = x
    inc = np.eye(x.dim, dtype=np.int64)
    res.syzygies.append(x)
    res.inclusions.append(inc)
    for k in range(depth + 1):
        if cur.dim == 0:
            break
        cov = projective_cover(cur)
        res.terms.append(cov.proj)
        res.maps.append(_mm(inc, cov.matrix, p))
        res.elements.append(None if k == 0 else
                            element_matrix(cov.proj, res.terms[k - 1], res.maps[k]))
        kb = _kernel(cov.matrix, p)
        cur, inc = submodule(cov.proj.module, kb, f"Omega^{k + 1}")
        res.syzygies.append(cur)
        res.inclusions.append(inc)
    res.terminated = cur.dim == 0
    return res


def _resolution(x: FdModule, depth: int) -> Resolution:
    a = x.left_algebra
    key = ("res", x.action.tobytes(), x.action.shape, depth)
    hit = a.cache.get(key)
    if hit is None:
        hit = minimal_projective_resolution(x, depth)
        a.cache[key] = hit
    return hit


def pd_bounded(x: FdModule, bound: int = DEFAULT_DEPTH) -> Optional[int]:
    """Projective dimension if it is at most ``bound``, else None.

    The zero module gets -1.
    """
    res = minimal_projective_resolution(x, bound)
    return res.length


def fd_bounded(x: FdModule, bound: int = DEFAULT_DEPTH) -> Optional[int]:
    """Flat dimension; finitely generated flat = projective here."""
    return pd_bounded(x, bound)


def injective_dimension_bounded(x: FdModule, bound: int = DEFAULT_DEPTH) -> Optional[int]:
    return pd_bounded(k_dual(x), bound)


# ----------------------------------------------------------------------------
# complexes from element matrices


def _part_basis(mod: FdModule, e: np.ndarray) -> np.ndarray:
    return idempotent_part(mod, e)


def tensor_complex_map(y: FdModule, src: ProjSum, tgt: ProjSum, elems: np.ndarray
                       ) -> np.ndarray:
    """Y (x) (src -> tgt) as a matrix  ⊕ Y e_j -> ⊕ Y e_i."""
    p = y.p
    sb = [_part_basis(y, e) for e in src.idempotents()]
    tb = [_part_basis(y, e) for e in tgt.idempotents()]
    rows = sum(b.shape[1] for b in tb)
    cols = sum(b.shape[1] for b in sb)
    out = np.zeros((rows, cols), dtype=np.int64)
    c0 = 0
    for j, bj in enumerate(sb):
        r0 = 0
        for i, bi in enumerate(tb):
            if bj.shape[1] and bi.shape[1]:
                img = _mm(y.act(elems[j, i]), bj, p)
                out[r0:r0 + bi.shape[1], c0:c0 + bj.shape[1]] = img[_pivot_rows(bi)]
            r0 += bi.shape[1]
        c0 += bj.shape[1]
    return out


def tensor_term_dim(y: FdModule, P: Optional[ProjSum]) -> int:
    if P is None:
        return 0
    return sum(_rank(y.act(e), y.p) for e in P.idempotents())


def hom_complex_map(z: FdModule, src: ProjSum, tgt: ProjSum, elems: np.ndarray
                    ) -> np.ndarray:
    """Hom(tgt, Z) -> Hom(src, Z) induced by src -> tgt, as ⊕ e_i Z -> ⊕ e_j Z."""
    p = z.p
    sb = [_part_basis(z, e) for e in src.idempotents()]
    tb = [_part_basis(z, e) for e in tgt.idempotents()]
    rows = sum(b.shape[1] for b in sb)
    cols = sum(b.shape[1] for b in tb)
    out = np.zeros((rows, cols), dtype=np.int64)
    r0 = 0
    for j, bj in enumerate(sb):
        c0 = 0
        for i, bi in enumerate(tb):
            if bj.shape[1] and bi.shape[1]:
                img = _mm(z.act(elems[j, i]), bi, p)
                out[r0:r0 + bj.shape[1], c0:c0 + bi.shape[1]] = img[_pivot_rows(bj)]
            c0 += bi.shape[1]
        r0 += bj.shape[1]
    return out


def hom_term_dim(z: FdModule, P: Optional[ProjSum]) -> int:
    if P is None:
        return 0
    return sum(_rank(z.act(e), z.p) for e in P.idempotents())


@dataclass(frozen=True)
class Homology:
    degree: int
    dim: int
    cycles: int
    boundaries: int


def _check_pairing(y: FdModule, x: FdModule):
    if y.side != RIGHT or x.side != LEFT:
        raise ModuleError("Tor needs a right module and a left module")
    if y.algebra is not x.algebra and not y.algebra.same_presentation(x.algebra):
        raise ModuleError("Tor factors live over different algebras")


def tor(y: FdModule, x: FdModule, i: int, resolution: Optional[Resolution] = None
        ) -> Homology:
    """Tor_i(Y, X) from the minimal resolution of X."""
    _check_pairing(y, x)
    if i < 0:
        raise ValueError("negative degree")
    res = resolution or _resolution(x, i + 1)
    if not res.terminated and res.depth < i + 1:
        raise InsufficientDepth(f"need depth {i + 1}, resolution has {res.depth}")
    y = FdModule(res.module.algebra, RIGHT, y.action)
    Pi = res.term(i)
    dim_c = tensor_term_dim(y, Pi)
    # rank of outgoing d_i : C_i -> C_{i-1}
    out_rank = 0
    if i >= 1 and Pi is not None:
        out_rank = _rank(tensor_complex_map(y, Pi, res.term(i - 1), res.differential_elements(i)), y.p)
    in_rank = 0
    Pn = res.term(i + 1)
    if Pn is not None:
        in_rank = _rank(tensor_complex_map(y, Pn, Pi, res.differential_elements(i + 1)), y.p)
    cyc = dim_c - out_rank
    return Homology(i, cyc - in_rank, cyc, in_rank)


def ext(x: FdModule, z: FdModule, i: int, resolution: Optional[Resolution] = None
        ) -> Homology:
    """Ext^i(X, Z) from the minimal resolution of X."""
    if i < 0:
        raise ValueError("negative degree")
    xl, zl = x.as_left(), z.as_left()
    if x.side != z.side:
        raise ModuleError("Ext between modules on different sides")
    res = resolution or _resolution(xl, i + 1)
    if not res.terminated and res.depth < i + 1:
        raise InsufficientDepth(f"need depth {i + 1}, resolution has {res.depth}")
    zl = FdModule(res.module.algebra, LEFT, zl.action)
    Pi = res.term(i)
    dim_c = hom_term_dim(zl, Pi)
    out_rank = 0
    Pn = res.term(i + 1)
    if Pn is not None and Pi is not None:
        out_rank = _rank(hom_complex_map(zl, Pn, Pi, res.differential_elements(i + 1)), zl.p)
    in_rank = 0
    if i >= 1 and Pi is not None:
        in_rank = _rank(hom_complex_map(zl, Pi, res.term(i - 1), res.differential_elements(i)), zl.p)
    cyc = dim_c - out_rank
    return Homology(i, cyc - in_rank, cyc, in_rank)


# ----------------------------------------------------------------------------
# algebra-level invariants


def self_injective_dimensions(a: FinDimAlgebra, bound: int = 8
                              ) -> Tuple[Optional[int], Optional[int]]:
    """(id of A as left module, id of A as right module), each None past bound."""
    key = ("selfinj", bound)
    hit = a.cache.get(key)
    if hit is None:
        left = pd_bounded(k_dual(regular_module(a, LEFT)), bound)
        right = pd_bounded(k_dual(regular_module(a, RIGHT)), bound)
        hit = (left, right)
        a.cache[key] = hit
    return hit


def gorenstein_dimension(a: FinDimAlgebra, bound: int = 8) -> Optional[int]:
    """Self-injective dimension when A is Iwanaga-Gorenstein within bound."""
    left, right = self_injective_dimensions(a, bound)
    if left is None or right is None:
        return None
    return max(left, right, 0)


__all__ = [
    "DEFAULT_DEPTH",
    "DEFAULT_DEGREES",
    "InsufficientDepth",
    "Summand",
    "ProjSum",
    "Cover",
    "Resolution",
    "Homology",
    "projective_summand",
    "indecomposable_projectives",
    "proj_sum",
    "element_matrix",
    "map_from_elements",
    "projective_cover",
    "is_projective",
    "is_injective",
    "minimal_projective_resolution",
    "pd_bounded",
    "fd_bounded",
    "injective_dimension_bounded",
    "tor",
    "ext",
    "tensor_complex_map",
    "hom_complex_map",
    "self_injective_dimensions",
    "gorenstein_dimension",
    "simple_module",
    "simple_modules",
]


def simple_module(a: FinDimAlgebra, idx: int, side: str = LEFT) -> FdModule:
    """Top of the idx-th indecomposable projective (left or right)."""
    from .modules import quotient_module

    alg = a if side == LEFT else a.opposite
    s = projective_summand(alg, alg.primitive_idempotents[idx])
    top, _, _ = quotient_module(s.module, radical_of_module(s.module), f"S{idx + 1}")
    return FdModule(a, side, top.action, top.name)


def simple_modules(a: FinDimAlgebra, side: str = LEFT) -> List[FdModule]:
    return [simple_module(a, i, side) for i in range(len(a.primitive_idempotents))]
