"""Tensor rings T_R(M) of nilpotent bimodules.

The basis of T_R(M) is the concatenation of the layer bases
L_0 = R, L_1 = M, L_i = M (x)_R L_{i-1}.  Each L_i for i >= 2 is stored as a
quotient of M (x)_k L_{i-1}; its section lets us lift a layer element back
to sums of m (x) l and multiply recursively.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import List, Optional

import numpy as np

from .algebra import FinDimAlgebra, _block_embed, _check_same_algebra, _embed_vec
from .modules import (
    FdBimodule,
    TensorProduct,
    regular_bimodule,
    tensor_over_R,
)

DEFAULT_NIL_BOUND = 16


class NotNilpotent(ValueError):
    """M^{(x) i} is still nonzero at the nil bound."""


@dataclass(eq=False)
class TensorRing:
    base: FinDimAlgebra
    bimodule: FdBimodule
    layers: List[FdBimodule]
    steps: List[Optional[TensorProduct]]  # steps[i] presents L_i for i >= 2
    algebra: FinDimAlgebra
    cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def N(self) -> int:
        return len(self.layers) - 1

    @property
    def grading(self) -> List[int]:
        return [l.dim for l in self.layers]

    @property
    def offsets(self) -> List[int]:
        return list(np.cumsum([0] + self.grading[:-1]))

    @property
    def p(self) -> int:
        return self.base.p

    def layer_slice(self, i: int) -> slice:
        o = self.offsets[i]
        return slice(o, o + self.layers[i].dim)

    def lift(self, i: int) -> np.ndarray:
        """Section of L_i into M (x)_k L_{i-1}, shape (dim M, dim L_{i-1}, dim L_i)."""
        t = self.steps[i]
        return t.sect.reshape(self.bimodule.dim, self.layers[i - 1].dim, -1)

    @cached_property
    def as_TR(self) -> FdBimodule:
        """T as a T-R bimodule (right action through layer 0)."""
        t = self.algebra
        return FdBimodule(t, self.base, t.left_reg, t.right_reg[: self.base.dim], "T")

    @cached_property
    def as_RT(self) -> FdBimodule:
        """T as an R-T bimodule."""
        t = self.algebra
        return FdBimodule(self.base, t, t.left_reg[: self.base.dim], t.right_reg, "T")

    def __repr__(self):
        return f"<TensorRing N={self.N} grading={self.grading}>"


def _layer_products(r: FinDimAlgebra, layers, steps, p: int):
    """prod[i][j][a, b, :] = coordinates of (a in L_i)(b in L_j) in L_{i+j}."""
    n_top = len(layers) - 1
    dims = [l.dim for l in layers]
    dm = dims[1] if n_top >= 1 else 0
    prod = {}
    for j in range(n_top + 1):
        # layer 0 times layer j: left action; layer j times layer 0: right action
        prod[(0, j)] = np.transpose(layers[j].left_action, (0, 2, 1)) % p
        if j:
            prod[(j, 0)] = np.transpose(layers[j].right_action, (2, 0, 1)) % p
    for j in range(1, n_top):
        t = steps[1 + j]
        # m_mu (x) l_b in L_{1+j} is column mu * dim L_j + b of proj
        prod[(1, j)] = t.proj.T.reshape(dm, dims[j], dims[1 + j]) % p
    for i in range(2, n_top):
        sect = steps[i].sect.reshape(dm, dims[i - 1], dims[i])
        for j in range(1, n_top - i + 1):
            inner = prod[(i - 1, j)]            # (L_{i-1}, L_j, L_{i-1+j})
            outer = prod[(1, i - 1 + j)]        # (M, L_{i-1+j}, L_{i+j})
            tmp = np.einsum("mac,abw->mcbw", sect, inner) % p
            prod[(i, j)] = np.einsum("mcbw,mwz->cbz", tmp, outer) % p
    return prod


def tensor_ring(r: FinDimAlgebra, m: FdBimodule, nil_bound: int = DEFAULT_NIL_BOUND
                ) -> TensorRing:
    """Build T_R(M); raises NotNilpotent if layer ``nil_bound`` is nonzero."""
    if nil_bound < 1:
        raise ValueError("nil_bound must be at least 1")
    _check_same_algebra(m.left_algebra, r)
    _check_same_algebra(m.right_algebra, r)
    p = r.p
    layers: List[FdBimodule] = [regular_bimodule(r)]
    steps: List[Optional[TensorProduct]] = [None, None]
    if m.dim:
        layers.append(m)
        i = 1
        while True:
            if i == nil_bound:
                raise NotNilpotent(f"layer {i} of M has dimension {layers[-1].dim} at the nil bound")
            t = tensor_over_R(m, layers[-1])
            if t.dim == 0:
                break
            layers.append(t.module)
            steps.append(t)
            i += 1
    steps = steps[: len(layers)]
    dims = [l.dim for l in layers]
    offs = np.cumsum([0] + dims[:-1])
    d = sum(dims)
    prod = _layer_products(r, layers, steps, p)
    mult = np.zeros((d, d, d), dtype=np.int64)
    n_top = len(layers) - 1
    for (i, j), block in prod.items():
        if i + j > n_top:
            continue
        mult[offs[i]:offs[i] + dims[i], offs[j]:offs[j] + dims[j],
             offs[i + j]:offs[i + j] + dims[i + j]] = block
    unit = _embed_vec(r.unit, 0, d)
    rad = np.concatenate([_block_embed(r.radical, 0, d),
                          np.eye(d, dtype=np.int64)[:, dims[0]:]], axis=1)
    ids = tuple(_embed_vec(e, 0, d) for e in r.primitive_idempotents)
    labels = list(r.labels)
    for i in range(1, n_top + 1):
        labels += [f"L{i}.{k}" for k in range(dims[i])]
    alg = FinDimAlgebra(mult, unit, r.field, tuple(labels), f"T({r.name or 'R'})",
                        radical_hint=rad, idempotent_hint=ids)
    return TensorRing(r, m, layers, steps, alg)


def idempotent_bimodule(r: FinDimAlgebra, e_left: np.ndarray, e_right: np.ndarray,
                        name: str = "") -> FdBimodule:
    """R e (x)_k f R, basis = pairs (basis of Re, basis of fR), left-major."""
    from .exactlin import _col_echelon, _mm, _pivot_rows

    p = r.p
    # Re is spanned by b e; take echelon basis of the right-multiplication image
    re = _col_echelon(r.right_mat(e_left), p)
    fr = _col_echelon(r.left_mat(e_right), p)
    pre, pfr = _pivot_rows(re), _pivot_rows(fr)
    a, b = re.shape[1], fr.shape[1]
    left = np.zeros((r.dim, a * b, a * b), dtype=np.int64)
    right = np.zeros((r.dim, a * b, a * b), dtype=np.int64)
    ib, ia = np.eye(b, dtype=np.int64), np.eye(a, dtype=np.int64)
    for g in range(r.dim):
        la = _mm(r.left_reg[g], re, p)[pre]    # action on Re in its basis
        rb = _mm(r.right_reg[g], fr, p)[pfr]   # action on fR in its basis
        left[g] = np.kron(la, ib)
        right[g] = np.kron(ia, rb)
    return FdBimodule(r, r, left, right, name or "Re(x)fR")


__all__ = [
    "DEFAULT_NIL_BOUND",
    "NotNilpotent",
    "TensorRing",
    "tensor_ring",
    "idempotent_bimodule",
]
