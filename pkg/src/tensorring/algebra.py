"""Finite-dimensional algebras given by structure constants.

An algebra of dimension d over F_p is stored as a (d, d, d) array ``mult``
with ``mult[i, j]`` the coordinate vector of b_i * b_j.  Constructors for
the path algebras of cyclic quivers, opposite and product algebras,
trivial extensions and Morita context rings live here; tensor rings are in
:mod:`tensorring.tensor_ring` since they need module machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exactlin import (
    ExactMatrix,
    FieldSpec,
    _col_echelon,
    _kernel,
    _mm,
    _quotient,
    _rank,
    _solve,
)


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FinDimAlgebra:
    mult: np.ndarray
    unit: np.ndarray
    field: FieldSpec = FieldSpec()
    labels: Tuple[str, ...] = ()
    name: str = ""
    # optional structural hints supplied by constructors; checked, never trusted blindly
    radical_hint: Optional[np.ndarray] = dc_field(default=None, repr=False)
    idempotent_hint: Optional[Tuple[np.ndarray, ...]] = dc_field(default=None, repr=False)

    def __post_init__(self):
        p = self.field.p
        m = np.array(self.mult, dtype=np.int64) % p
        d = m.shape[0] if m.ndim == 3 else 0
        if m.ndim != 3 or m.shape != (d, d, d):
            if m.size == 0:
                m = np.zeros((0, 0, 0), dtype=np.int64)
                d = 0
            else:
                raise AlgebraError(f"structure constants must have shape (d,d,d), got {m.shape}")
        m.setflags(write=False)
        u = np.array(self.unit, dtype=np.int64).reshape(-1) % p
        if u.shape != (d,):
            raise AlgebraError("unit vector has the wrong length")
        u.setflags(write=False)
        object.__setattr__(self, "mult", m)
        object.__setattr__(self, "unit", u)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"b{i}" for i in range(d)))
        elif len(self.labels) != d:
            raise AlgebraError("label count does not match dimension")

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def p(self) -> int:
        return self.field.p

    # -- elements -------------------------------------------------------------

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return _mm(self.left_mat(x), np.asarray(y).reshape(-1, 1), self.p).reshape(-1)

    def left_mat(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> x y."""
        return np.tensordot(np.asarray(x, dtype=np.int64), self.left_reg, axes=1) % self.p

    def right_mat(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> y x."""
        return np.tensordot(np.asarray(x, dtype=np.int64), self.right_reg, axes=1) % self.p

    @cached_property
    def left_reg(self) -> np.ndarray:
        # left_reg[i][k, j] = coefficient of b_k in b_i b_j
        return np.ascontiguousarray(np.transpose(self.mult, (0, 2, 1)))

    @cached_property
    def right_reg(self) -> np.ndarray:
        # right_reg[j][k, i] = coefficient of b_k in b_i b_j
        return np.ascontiguousarray(np.transpose(self.mult, (1, 2, 0)))

    # -- checks ---------------------------------------------------------------

    def associativity_defect(self) -> Optional[Tuple[int, int, int]]:
        """First basis triple violating associativity, or None."""
        p = self.p
        # (b_i b_j) b_k = sum_l m[i,j,l] m[l,k,:]; b_i (b_j b_k) = sum_l m[j,k,l] m[i,l,:]
        lhs = np.tensordot(self.mult, self.mult, axes=([2], [0])) % p  # i j k out
        rhs = np.einsum("jkl,ilo->ijko", self.mult, self.mult) % p
        bad = np.argwhere((lhs != rhs).any(axis=3))
        if bad.size:
            return tuple(int(t) for t in bad[0])
        return None

    def unit_defect(self) -> Optional[int]:
        for i in range(self.dim):
            e = self.basis_vector(i)
            if not (np.array_equal(self.mul(self.unit, e), e)
                    and np.array_equal(self.mul(e, self.unit), e)):
                return i
        return None

    def validate(self) -> "FinDimAlgebra":
        bad = self.associativity_defect()
        if bad is not None:
            raise AlgebraError(f"associativity fails on basis triple {bad}")
        bad = self.unit_defect()
        if bad is not None:
            raise AlgebraError(f"unit is not two-sided on basis element {bad}")
        return self

    def same_presentation(self, other: "FinDimAlgebra") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and np.array_equal(self.mult, other.mult)
                and np.array_equal(self.unit, other.unit))

    # -- structure ------------------------------------------------------------

    @cached_property
    def radical(self) -> np.ndarray:
        """Columns forming a reduced echelon basis of the Jacobson radical."""
        if self.radical_hint is not None:
            return _col_echelon(np.asarray(self.radical_hint, dtype=np.int64)
                                .reshape(self.dim, -1), self.p)
        return compute_radical(self)

    @cached_property
    def primitive_idempotents(self) -> Tuple[np.ndarray, ...]:
        if self.idempotent_hint is not None:
            ids = tuple(np.asarray(e, dtype=np.int64) % self.p for e in self.idempotent_hint)
            check_idempotent_decomposition(self, ids)
            return ids
        return lift_primitive_idempotents(self)

    @cached_property
    def generators(self) -> Tuple[np.ndarray, ...]:
        """A generating set: primitive idempotents plus lifts of rad/rad^2.

        Falls back to the full basis when these do not generate (non-basic
        or non-split semisimple part).
        """
        p = self.p
        gens = list(self.primitive_idempotents)
        j = self.radical
        if j.shape[1]:
            j2 = radical_power_basis(self, 2)
            # complement of rad^2 inside rad
            proj, _ = _quotient(j2, self.dim, p)
            img = _mm(proj, j, p)
            keep = []
            acc = np.zeros((proj.shape[0], 0), dtype=np.int64)
            for c in range(j.shape[1]):
                trial = np.concatenate([acc, img[:, c:c + 1]], axis=1)
                if _rank(trial, p) > acc.shape[1]:
                    acc = trial
                    keep.append(c)
            gens.extend(j[:, c].copy() for c in keep)
        if _generated_dim(self, gens) == self.dim:
            return tuple(gens)
        return tuple(self.basis_vector(i) for i in range(self.dim))

    @cached_property
    def opposite(self) -> "FinDimAlgebra":
        op = opposite(self)
        op.__dict__["opposite"] = self
        return op

    @cached_property
    def cache(self) -> dict:
        """Per-algebra memo for derived objects (projectives, duals, ...)."""
        return {}


def _generated_dim(a: FinDimAlgebra, gens: Sequence[np.ndarray]) -> int:
    p = a.p
    span = _col_echelon(np.stack([a.unit] + list(gens), axis=1), p)
    while True:
        prods = [_mm(a.left_mat(g), span, p) for g in gens]
        new = _col_echelon(np.concatenate([span] + prods, axis=1), p)
        if new.shape[1] == span.shape[1]:
            return span.shape[1]
        span = new


def radical_power_basis(a: FinDimAlgebra, k: int) -> np.ndarray:
    p = a.p
    cur = a.radical
    j = a.radical
    for _ in range(k - 1):
        if cur.shape[1] == 0:
            break
        prods = [_mm(a.left_mat(j[:, c]), cur, p) for c in range(j.shape[1])]
        cur = _col_echelon(np.concatenate(prods, axis=1), p) if prods else cur[:, :0]
    return cur


def compute_radical(a: FinDimAlgebra) -> np.ndarray:
    """Radical via the kernel of the trace form x, y -> tr(L_{xy}).

    Over F_p the kernel is an ideal containing rad(A); when it is nilpotent
    it equals rad(A).  A non-nilpotent kernel is reported rather than
    guessed around.
    """
    p = a.p
    d = a.dim
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    tr = np.trace(a.left_reg, axis1=1, axis2=2) % p  # tr(L_{b_k})
    gram = np.tensordot(a.mult, tr, axes=([2], [0])) % p  # tr(L_{b_i b_j})
    ker = _kernel(gram, p)
    # nilpotency: powers of the ideal shrink to zero
    cur = ker
    for _ in range(d + 1):
        if cur.shape[1] == 0:
            return ker
        prods = [_mm(a.left_mat(ker[:, c]), cur, p) for c in range(ker.shape[1])]
        nxt = _col_echelon(np.concatenate(prods, axis=1), p)
        if nxt.shape[1] == cur.shape[1]:
            break
        cur = nxt
    if cur.shape[1] == 0:
        return ker
    raise AlgebraError("trace-form kernel is not nilpotent in this characteristic; "
                       "supply the radical explicitly")


def check_idempotent_decomposition(a: FinDimAlgebra, ids: Sequence[np.ndarray]):
    p = a.p
    total = np.zeros(a.dim, dtype=np.int64)
    for i, e in enumerate(ids):
        total = (total + e) % p
        for j, f in enumerate(ids):
            prod = a.mul(e, f)
            want = e if i == j else np.zeros_like(e)
            if not np.array_equal(prod, want):
                raise AlgebraError(f"idempotents {i},{j} are not orthogonal idempotents")
    if not np.array_equal(total, a.unit):
        raise AlgebraError("idempotents do not sum to 1")


# ----------------------------------------------------------------------------
# idempotent lifting


def _min_poly(mul, p: int, x: np.ndarray, one: np.ndarray) -> List[int]:
    """Monic minimal polynomial of x in the corner with unit ``one`` (low degree first)."""
    powers = [one % p]
    while True:
        nxt = mul(powers[-1], x)
        sol = _solve(np.stack(powers, axis=1), nxt.reshape(-1, 1), p)
        if sol is not None:
            return [(-int(c)) % p for c in sol.reshape(-1)] + [1]
        powers.append(nxt)


def _poly_eval(mul, p: int, coeffs: Sequence[int], x: np.ndarray,
               one: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(one)
    for c in reversed(list(coeffs)):
        acc = (mul(acc, x) + int(c) * one) % p
    return acc


def _split_idempotent(mul, p: int, x: np.ndarray, one: np.ndarray
                      ) -> Optional[np.ndarray]:
    """An idempotent of k[x] (unit ``one``) strictly between 0 and one, if any."""
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed(_min_poly(mul, p, x, one))), t, modulus=p)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    f1 = factors[0][0] ** factors[0][1]
    rest = poly.quo(f1)
    # s*rest + t*f1 = 1, so s*rest is 1 mod f1 and 0 mod rest
    s, _, g = rest.gcdex(f1)
    c = (s * rest).rem(poly)
    ginv = pow(int(g.LC()) % p, p - 2, p)
    coeffs = [(int(v) * ginv) % p for v in reversed(c.all_coeffs())]
    return _poly_eval(mul, p, coeffs, x, one)


def _lift_idempotent(a: FinDimAlgebra, x: np.ndarray) -> np.ndarray:
    p = a.p
    for _ in range(64):
        x2 = a.mul(x, x)
        if np.array_equal(x2, x):
            return x
        x3 = a.mul(x2, x)
        x = (3 * x2 - 2 * x3) % p
    raise AlgebraError("idempotent lifting did not converge")


def lift_primitive_idempotents(a: FinDimAlgebra, seed: int = 0,
                               tries: int = 40) -> Tuple[np.ndarray, ...]:
    """Complete set of primitive orthogonal idempotents.

    Idempotents are split in A/rad(A) by factoring minimal polynomials of
    random corner elements, then lifted to A one at a time inside the
    complement of those already lifted.
    """
    p = a.p
    rng = np.random.default_rng(seed)
    j = a.radical
    proj, sect = _quotient(j, a.dim, p)

    def reduce(v):
        return _mm(sect, _mm(proj, v.reshape(-1, 1), p), p).reshape(-1)

    # work in A with products reduced mod rad; representatives via sect∘proj
    todo = [reduce(a.unit)]
    done: List[np.ndarray] = []
    while todo:
        e = todo.pop()
        corner = _col_echelon(np.stack(
            [reduce(a.mul(a.mul(e, a.basis_vector(i)), e)) for i in range(a.dim)], axis=1), p)
        split = None
        if corner.shape[1] > 1:
            for _ in range(tries):
                x = _mm(corner, rng.integers(0, p, size=(corner.shape[1], 1)), p).reshape(-1)
                f = _split_idempotent_mod(a, x, e, reduce)
                if f is not None:
                    split = f
                    break
        if split is None:
            done.append(e)
        else:
            todo.append(split)
            todo.append((e - split) % p)
    # lift orthogonally
    lifted: List[np.ndarray] = []
    comp = a.unit.copy()
    for ebar in done[:-1]:
        x = a.mul(a.mul(comp, ebar), comp)
        f = _lift_idempotent(a, x)
        lifted.append(f)
        comp = (comp - f) % p
    lifted.append(comp)
    lifted.sort(key=lambda v: tuple(-int(t) for t in v))
    check_idempotent_decomposition(a, lifted)
    return tuple(lifted)


def _split_idempotent_mod(a, x, one, reduce):
    """Split ``one`` using x inside A/rad(A), representatives reduced."""
    e = _split_idempotent(lambda u, v: reduce(a.mul(u, v)), a.p, x, one)
    if e is None:
        return None
    e = reduce(e)
    if not e.any() or np.array_equal(e, one):
        return None
    return e


# ----------------------------------------------------------------------------
# constructors


@dataclass(frozen=True)
class QuiverPreset:
    """Cyclic quiver 1 -> 2 -> ... -> n -> 1 truncated at paths of length h."""

    n: int
    h: int
    field: FieldSpec = FieldSpec()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one vertex")
        if not (2 <= self.h <= max(self.n, 2)):
            raise ValueError(f"truncation h={self.h} outside [2, n={self.n}]")


@dataclass(frozen=True, eq=False)
class PathAlgebra:
    algebra: FinDimAlgebra
    n: int
    h: int
    paths: Tuple[Tuple[int, int], ...]  # (source vertex, length), vertices 1..n

    def idempotent(self, v: int) -> np.ndarray:
        return self.algebra.basis_vector(self.paths.index((v, 0)))

    def target(self, path: Tuple[int, int]) -> int:
        s, length = path
        return (s - 1 + length) % self.n + 1


def path_algebra(q: QuiverPreset) -> PathAlgebra:
    """kQ/J^h for the cyclic quiver.

    Paths compose right to left like functions: for paths p and q the
    product p*q is "q then p", nonzero only when q ends where p starts and
    the total length stays below h.  With this convention e_j R e_i is the
    span of paths from i to j.
    """
    n, h = q.n, q.h
    paths = tuple((s, length) for s in range(1, n + 1) for length in range(h))
    index = {pt: i for i, pt in enumerate(paths)}
    d = len(paths)
    mult = np.zeros((d, d, d), dtype=np.int64)

    def tgt(pt):
        return (pt[0] - 1 + pt[1]) % n + 1

    for i, first_after in enumerate(paths):
        for j, first in enumerate(paths):
            # b_i * b_j: walk b_j, then b_i
            if tgt(first) != first_after[0]:
                continue
            length = first[1] + first_after[1]
            if length >= h:
                continue
            mult[i, j, index[(first[0], length)]] = 1
    unit = np.zeros(d, dtype=np.int64)
    for v in range(1, n + 1):
        unit[index[(v, 0)]] = 1
    labels = []
    for s, length in paths:
        if length == 0:
            labels.append(f"e{s}")
        else:
            verts = [(s - 1 + t) % n + 1 for t in range(length + 1)]
            labels.append("p" + "".join(str(v) for v in verts) if n < 10
                          else "p" + "-".join(str(v) for v in verts))
    rad = np.stack([np.eye(d, dtype=np.int64)[:, i] for i, pt in enumerate(paths) if pt[1] > 0],
                   axis=1) if h > 1 else np.zeros((d, 0), dtype=np.int64)
    ids = tuple(np.eye(d, dtype=np.int64)[index[(v, 0)]] for v in range(1, n + 1))
    alg = FinDimAlgebra(mult, unit, q.field, tuple(labels), f"kQ/J^{h} (n={n})",
                        radical_hint=rad, idempotent_hint=ids)
    return PathAlgebra(alg, n, h, paths)


def ground_field(fs: FieldSpec = FieldSpec()) -> FinDimAlgebra:
    return FinDimAlgebra(np.ones((1, 1, 1), dtype=np.int64), np.ones(1, dtype=np.int64), fs,
                         ("1",), "k", radical_hint=np.zeros((1, 0), dtype=np.int64),
                         idempotent_hint=(np.ones(1, dtype=np.int64),))


def opposite(a: FinDimAlgebra) -> FinDimAlgebra:
    mult = np.transpose(a.mult, (1, 0, 2))
    # share the same idempotents so projectives on both sides are indexed alike
    ids = a.primitive_idempotents if a.dim else a.idempotent_hint
    rad = a.radical if a.dim else a.radical_hint
    return FinDimAlgebra(mult, a.unit, a.field, a.labels,
                         a.name[:-3] if a.name.endswith("^op") else a.name + "^op",
                         radical_hint=rad, idempotent_hint=ids)


def _block_embed(vecs: Optional[np.ndarray], offset: int, total: int) -> Optional[np.ndarray]:
    if vecs is None:
        return None
    out = np.zeros((total, vecs.shape[1]), dtype=np.int64)
    out[offset:offset + vecs.shape[0]] = vecs
    return out


def _embed_vec(v: np.ndarray, offset: int, total: int) -> np.ndarray:
    out = np.zeros(total, dtype=np.int64)
    out[offset:offset + v.shape[0]] = v
    return out


def product_algebra(a: FinDimAlgebra, b: FinDimAlgebra) -> FinDimAlgebra:
    """A x B on basis(A) followed by basis(B)."""
    if a.field != b.field:
        raise AlgebraError("field mismatch")
    da, db = a.dim, b.dim
    d = da + db
    mult = np.zeros((d, d, d), dtype=np.int64)
    mult[:da, :da, :da] = a.mult
    mult[da:, da:, da:] = b.mult
    unit = np.concatenate([a.unit, b.unit])
    rad = np.concatenate([_block_embed(a.radical, 0, d), _block_embed(b.radical, da, d)], axis=1)
    ids = tuple(_embed_vec(e, 0, d) for e in a.primitive_idempotents) + \
        tuple(_embed_vec(e, da, d) for e in b.primitive_idempotents)
    labels = tuple(f"({l},0)" for l in a.labels) + tuple(f"(0,{l})" for l in b.labels)
    return FinDimAlgebra(mult, unit, a.field, labels, f"{a.name or 'A'} x {b.name or 'B'}",
                         radical_hint=rad, idempotent_hint=ids)


def trivial_extension(r: FinDimAlgebra, m) -> FinDimAlgebra:
    """R ⋉ M on basis(R) followed by basis(M); M squares to zero."""
    from .modules import FdBimodule

    if not isinstance(m, FdBimodule):
        raise TypeError("trivial_extension needs an R-bimodule")
    if m.left_algebra is not r or m.right_algebra is not r:
        _check_same_algebra(m.left_algebra, r)
        _check_same_algebra(m.right_algebra, r)
    dr, dm = r.dim, m.dim
    d = dr + dm
    mult = np.zeros((d, d, d), dtype=np.int64)
    mult[:dr, :dr, :dr] = r.mult
    for i in range(dr):
        # r_i * m_j = left action, m_j * r_i = right action
        mult[i, dr:, dr:] = m.left_action[i].T
        mult[dr:, i, dr:] = m.right_action[i].T
    unit = np.concatenate([r.unit, np.zeros(dm, dtype=np.int64)])
    rad = np.concatenate([_block_embed(r.radical, 0, d),
                          np.eye(d, dtype=np.int64)[:, dr:]], axis=1)
    ids = tuple(_embed_vec(e, 0, d) for e in r.primitive_idempotents)
    labels = tuple(r.labels) + tuple(f"m{j}" for j in range(dm))
    return FinDimAlgebra(mult, unit, r.field, labels, f"{r.name or 'R'} ⋉ M",
                         radical_hint=rad, idempotent_hint=ids)


def _check_same_algebra(x: FinDimAlgebra, y: FinDimAlgebra):
    if x is y:
        return
    if not x.same_presentation(y):
        raise AlgebraError("bimodule is not over the given algebra")


@dataclass(frozen=True, eq=False)
class MoritaData:
    """Morita context (A, B, U, V, phi, psi).

    U is a B-A bimodule, V an A-B bimodule.  ``phi[i, j]`` is the B-vector
    phi(u_i (x) v_j) and ``psi[i, j]`` the A-vector psi(v_i (x) u_j).
    """

    A: FinDimAlgebra
    B: FinDimAlgebra
    U: object
    V: object
    phi: Optional[np.ndarray] = None
    psi: Optional[np.ndarray] = None

    def __post_init__(self):
        du, dv = self.U.dim, self.V.dim
        if self.phi is None:
            object.__setattr__(self, "phi", np.zeros((du, dv, self.B.dim), dtype=np.int64))
        if self.psi is None:
            object.__setattr__(self, "psi", np.zeros((dv, du, self.A.dim), dtype=np.int64))
        p = self.A.p
        object.__setattr__(self, "phi", np.asarray(self.phi, dtype=np.int64) % p)
        object.__setattr__(self, "psi", np.asarray(self.psi, dtype=np.int64) % p)
        if self.phi.shape != (du, dv, self.B.dim) or self.psi.shape != (dv, du, self.A.dim):
            raise AlgebraError("pairing tensors have the wrong shape")

    @property
    def zero_pairings(self) -> bool:
        return not self.phi.any() and not self.psi.any()

    def validate(self) -> "MoritaData":
        A, B, U, V = self.A, self.B, self.U, self.V
        _check_same_algebra(U.left_algebra, B)
        _check_same_algebra(U.right_algebra, A)
        _check_same_algebra(V.left_algebra, A)
        _check_same_algebra(V.right_algebra, B)
        p = A.p
        phi, psi = self.phi, self.psi
        # phi(u, v) as bilinear: Phi[:, i, j]; actions are column-vector matrices
        # balanced: phi(u a, v) = phi(u, a v)
        for k in range(A.dim):
            lhs = np.einsum("xi,xjo->ijo", U.right_action[k], phi) % p
            rhs = np.einsum("yj,iyo->ijo", V.left_action[k], phi) % p
            if not np.array_equal(lhs, rhs):
                raise AlgebraError("phi is not A-balanced")
        for k in range(B.dim):
            # phi(b u, v) = b phi(u, v);  phi(u, v b) = phi(u, v) b
            lhs = np.einsum("xi,xjo->ijo", U.left_action[k], phi) % p
            rhs = np.einsum("ijo,qo->ijq", phi, B.left_reg[k]) % p
            if not np.array_equal(lhs, rhs):
                raise AlgebraError("phi is not left B-linear")
            lhs = np.einsum("yj,iyo->ijo", V.right_action[k], phi) % p
            rhs = np.einsum("ijo,qo->ijq", phi, B.right_reg[k]) % p
            if not np.array_equal(lhs, rhs):
                raise AlgebraError("phi is not right B-linear")
            # psi balanced over B: psi(v b, u) = psi(v, b u)
            lhs = np.einsum("xi,xjo->ijo", V.right_action[k], psi) % p
            rhs = np.einsum("yj,iyo->ijo", U.left_action[k], psi) % p
            if not np.array_equal(lhs, rhs):
                raise AlgebraError("psi is not B-balanced")
        for k in range(A.dim):
            lhs = np.einsum("xi,xjo->ijo", V.left_action[k], psi) % p
            rhs = np.einsum("ijo,qo->ijq", psi, A.left_reg[k]) % p
            if not np.array_equal(lhs, rhs):
                raise AlgebraError("psi is not left A-linear")
            lhs = np.einsum("yj,iyo->ijo", U.right_action[k], psi) % p
            rhs = np.einsum("ijo,qo->ijq", psi, A.right_reg[k]) % p
            if not np.array_equal(lhs, rhs):
                raise AlgebraError("psi is not right A-linear")
        # phi(u (x) v) u' = u psi(v (x) u')  and  v phi(u (x) v') = psi(v (x) u) v'
        for i in range(U.dim):
            for j in range(V.dim):
                for k in range(U.dim):
                    lhs = _mm(U.left_mat(phi[i, j]), np.eye(U.dim, dtype=np.int64)[:, k:k + 1], p)
                    rhs = _mm(U.right_mat(psi[j, k]), np.eye(U.dim, dtype=np.int64)[:, i:i + 1], p)
                    if not np.array_equal(lhs, rhs):
                        raise AlgebraError("compatibility phi(u v)u' = u psi(v u') fails")
        for j in range(V.dim):
            for i in range(U.dim):
                for l in range(V.dim):
                    lhs = _mm(V.right_mat(phi[i, l]), np.eye(V.dim, dtype=np.int64)[:, j:j + 1], p)
                    rhs = _mm(V.left_mat(psi[j, i]), np.eye(V.dim, dtype=np.int64)[:, l:l + 1], p)
                    if not np.array_equal(lhs, rhs):
                        raise AlgebraError("compatibility v phi(u v') = psi(v u) v' fails")
        return self


def morita_ring(d: MoritaData) -> FinDimAlgebra:
    """Λ = (A V; U B) on basis A, V, U, B."""
    d.validate()
    A, B, U, V = d.A, d.B, d.U, d.V
    da, dv, du, db = A.dim, V.dim, U.dim, B.dim
    oA, oV, oU, oB = 0, da, da + dv, da + dv + du
    n = da + dv + du + db
    mult = np.zeros((n, n, n), dtype=np.int64)
    mult[oA:oV, oA:oV, oA:oV] = A.mult
    mult[oB:, oB:, oB:] = B.mult
    for k in range(da):
        mult[oA + k, oV:oU, oV:oU] = V.left_action[k].T   # a v
        mult[oU:oB, oA + k, oU:oB] = U.right_action[k].T  # u a
    for k in range(db):
        mult[oV:oU, oB + k, oV:oU] = V.right_action[k].T  # v b
        mult[oB + k, oU:oB, oU:oB] = U.left_action[k].T   # b u
    mult[oV:oU, oU:oB, oA:oV] = d.psi  # v u' -> psi
    mult[oU:oB, oV:oU, oB:] = d.phi    # u v' -> phi
    unit = np.concatenate([A.unit, np.zeros(dv + du, dtype=np.int64), B.unit])
    labels = tuple(f"A:{l}" for l in A.labels) + tuple(f"V{j}" for j in range(dv)) + \
        tuple(f"U{j}" for j in range(du)) + tuple(f"B:{l}" for l in B.labels)
    rad = ids = None
    if d.zero_pairings:
        rad = np.concatenate([_block_embed(A.radical, oA, n),
                              np.eye(n, dtype=np.int64)[:, oV:oB],
                              _block_embed(B.radical, oB, n)], axis=1)
        ids = tuple(_embed_vec(e, oA, n) for e in A.primitive_idempotents) + \
            tuple(_embed_vec(e, oB, n) for e in B.primitive_idempotents)
    alg = FinDimAlgebra(mult, unit, A.field, labels, "Morita context ring",
                        radical_hint=rad, idempotent_hint=ids)
    bad = alg.associativity_defect()
    if bad is not None:
        raise AlgebraError(f"Morita ring multiplication not associative at {bad}")
    return alg


def mu_iso(d: MoritaData) -> Tuple[ExactMatrix, FinDimAlgebra, FinDimAlgebra]:
    """Ring isomorphism Λ_(0,0) -> (A x B) ⋉ (U ⊕ V).

    (a v; u b) goes to ((a, b), (u, v)).  Returns the permutation matrix
    together with source and target algebras, after checking that it is
    multiplicative on every pair of basis elements.
    """
    from .modules import direct_sum_bimodule

    if not d.zero_pairings:
        raise AlgebraError("mu is only defined for zero pairings")
    A, B, U, V = d.A, d.B, d.U, d.V
    lam = morita_ring(d)
    ab = product_algebra(A, B)
    uv = direct_sum_bimodule(
        U.along_product(ab, left_factor=1, right_factor=0),
        V.along_product(ab, left_factor=0, right_factor=1))
    te = trivial_extension(ab, uv)
    da, dv, du, db = A.dim, V.dim, U.dim, B.dim
    n = lam.dim
    # source index blocks A | V | U | B ; target blocks A | B | U | V
    perm = list(range(da)) + [da + db + du + j for j in range(dv)] + \
        [da + db + j for j in range(du)] + [da + j for j in range(db)]
    P = np.zeros((n, n), dtype=np.int64)
    for s, t in enumerate(perm):
        P[t, s] = 1
    # multiplicativity: P(x y) = (P x)(P y) on basis pairs
    lhs = np.einsum("ijk,tk->ijt", lam.mult, P)
    rhs = te.mult[np.ix_(perm, perm)]
    if not np.array_equal(lhs % lam.p, rhs % lam.p):
        raise AlgebraError("mu is not multiplicative: construction bug")
    if not np.array_equal(P @ lam.unit, te.unit):
        raise AlgebraError("mu does not preserve the unit")
    return ExactMatrix(P, lam.field), lam, te


__all__ = [
    "AlgebraError",
    "FinDimAlgebra",
    "QuiverPreset",
    "PathAlgebra",
    "MoritaData",
    "path_algebra",
    "ground_field",
    "opposite",
    "product_algebra",
    "trivial_extension",
    "morita_ring",
    "mu_iso",
    "compute_radical",
    "lift_primitive_idempotents",
]
