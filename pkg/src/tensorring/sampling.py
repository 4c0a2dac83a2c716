"""Seeded random modules and pairs for property tests and verifiers.

Random modules are built as quotients of random projective sums or as
submodules of random injective sums, both generated by random vectors;
this always yields a valid module, so no action matrices ever need
repairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .algebra import FinDimAlgebra
from .homological import proj_sum
from .modules import (
    FdModule,
    LEFT,
    RIGHT,
    direct_sum,
    generated_submodule,
    hom_basis,
    quotient_module,
    submodule,
)
from .pairs import (
    PairModule,
    CoPairModule,
    functor_Coind,
    functor_Ind,
    functor_S,
    copair_S,
    module_to_copair,
    module_to_pair,
)
from .tensor_ring import TensorRing

DEFAULT_MAX_DIM = 6
PAIR_STRATA = ("stalk", "ind", "sub-ind", "random-u", "random-T")
COPAIR_STRATA = ("stalk", "coind", "random-T")


def _rand_vecs(rng: np.random.Generator, n: int, k: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(n, k)).astype(np.int64)


def _quotient_of_projective(a: FinDimAlgebra, rng, max_dim: int) -> FdModule:
    ids = len(a.primitive_idempotents)
    labels = sorted(rng.integers(0, ids, size=int(rng.integers(1, 3))).tolist())
    q = proj_sum(a, labels)
    rels = generated_submodule(q.module, _rand_vecs(rng, q.dim, int(rng.integers(0, 3)), a.p))
    return quotient_module(q.module, rels)[0]


def _sub_of_injective(a: FinDimAlgebra, rng, max_dim: int) -> FdModule:
    ids = len(a.primitive_idempotents)
    labels = sorted(rng.integers(0, ids, size=int(rng.integers(1, 3))).tolist())
    # D(e A) for right projectives e A, i.e. left projectives over A^op
    q = proj_sum(a.opposite, labels)
    inj = FdModule(a, LEFT, np.transpose(q.module.action, (0, 2, 1)))
    gens = generated_submodule(inj, _rand_vecs(rng, inj.dim, int(rng.integers(1, 3)), a.p))
    return submodule(inj, gens)[0]


def random_module(a: FinDimAlgebra, rng: np.random.Generator, max_dim: int = DEFAULT_MAX_DIM,
                  side: str = LEFT, tries: int = 200) -> FdModule:
    """A nonzero module of dimension at most ``max_dim``."""
    if side == RIGHT:
        x = random_module(a.opposite, rng, max_dim, LEFT, tries)
        return FdModule(a, RIGHT, x.action)
    for _ in range(tries):
        kind = int(rng.integers(0, 3))
        if kind == 0:
            x = _quotient_of_projective(a, rng, max_dim)
        elif kind == 1:
            x = _sub_of_injective(a, rng, max_dim)
        else:
            x = direct_sum([_quotient_of_projective(a, rng, max_dim),
                            _sub_of_injective(a, rng, max_dim)], a, LEFT)
        if 1 <= x.dim <= max_dim:
            return x
    raise RuntimeError(f"no module of dimension <= {max_dim} found in {tries} tries")


def random_hom(x: FdModule, y: FdModule, rng: np.random.Generator) -> np.ndarray:
    homs = hom_basis(x, y)
    if homs.shape[0] == 0:
        return np.zeros((y.dim, x.dim), dtype=np.int64)
    c = rng.integers(0, x.p, size=homs.shape[0])
    return np.tensordot(c, homs, axes=1) % x.p


@dataclass(frozen=True, eq=False)
class Sample:
    index: int
    stratum: str
    pair: object


def random_pair(ring: TensorRing, rng: np.random.Generator, stratum: str,
                max_dim: int = DEFAULT_MAX_DIM) -> PairModule:
    r = ring.base
    if stratum == "stalk":
        return functor_S(ring, random_module(r, rng, max_dim))
    if stratum == "ind":
        return functor_Ind(ring, random_module(r, rng, max(1, max_dim // 2)))
    if stratum == "sub-ind":
        ind = functor_Ind(ring, random_module(r, rng, max(1, max_dim // 2)))
        from .pairs import pair_to_module
        t = pair_to_module(ind)
        gens = generated_submodule(t, _rand_vecs(rng, t.dim, int(rng.integers(1, 3)), r.p))
        if gens.shape[1] == 0:
            return ind
        return module_to_pair(ring, submodule(t, gens)[0])
    if stratum == "random-u":
        x = random_module(r, rng, max_dim)
        s = functor_S(ring, x)
        return PairModule(ring, x, random_hom(s.mx.module, x, rng))
    if stratum == "random-T":
        return module_to_pair(ring, random_module(ring.algebra, rng, max_dim))
    raise ValueError(f"unknown stratum {stratum!r}")


def random_copair(ring: TensorRing, rng: np.random.Generator, stratum: str,
                  max_dim: int = DEFAULT_MAX_DIM) -> CoPairModule:
    r = ring.base
    if stratum == "stalk":
        return copair_S(ring, random_module(r, rng, max_dim, RIGHT))
    if stratum == "coind":
        return functor_Coind(ring, random_module(r, rng, max(1, max_dim // 2), RIGHT))
    if stratum == "random-T":
        return module_to_copair(ring, random_module(ring.algebra, rng, max_dim, RIGHT))
    raise ValueError(f"unknown stratum {stratum!r}")


def pair_samples(ring: TensorRing, count: int, seed: int,
                 max_dim: int = DEFAULT_MAX_DIM) -> List[Sample]:
    """Samples cycling through the strata; sample i uses its own child stream."""
    out = []
    seqs = np.random.SeedSequence(seed).spawn(count)
    for i, ss in enumerate(seqs):
        stratum = PAIR_STRATA[i % len(PAIR_STRATA)]
        out.append(Sample(i, stratum, random_pair(ring, np.random.default_rng(ss), stratum, max_dim)))
    return out


def module_samples(a: FinDimAlgebra, count: int, seed: int, max_dim: int = DEFAULT_MAX_DIM,
                   side: str = LEFT) -> List[FdModule]:
    seqs = np.random.SeedSequence(seed).spawn(count)
    return [random_module(a, np.random.default_rng(ss), max_dim, side) for ss in seqs]


__all__ = [
    "DEFAULT_MAX_DIM",
    "PAIR_STRATA",
    "COPAIR_STRATA",
    "Sample",
    "random_module",
    "random_hom",
    "random_pair",
    "random_copair",
    "pair_samples",
    "module_samples",
]
