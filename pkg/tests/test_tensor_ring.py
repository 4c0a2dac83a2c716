import itertools

import numpy as np
import pytest

from tensorring.algebra import ground_field, product_algebra, trivial_extension
from tensorring.homological import is_projective
from tensorring.modules import FdBimodule, regular_bimodule, tensor_over_R, zero_bimodule
from tensorring.tensor_ring import NotNilpotent, tensor_ring


def arrow_bimodule(n, p=7):
    """k^n with arrows i -> i+1; e_target acts on the left, e_source on the right."""
    r = ground_field()
    for _ in range(n - 1):
        r = product_algebra(r, ground_field())
    m = n - 1
    left = np.zeros((n, m, m), dtype=np.int64)
    right = np.zeros((n, m, m), dtype=np.int64)
    for a in range(m):
        left[a + 1, a, a] = 1
        right[a, a, a] = 1
    return r, FdBimodule(r, r, left, right, "arrows")


def test_preset_grading(ring, M):
    assert ring.grading == [6, 4]
    assert ring.algebra.dim == 10 and ring.N == 1
    assert ring.algebra.associativity_defect() is None
    assert ring.algebra.unit_defect() is None
    assert tensor_over_R(M, M).dim == 0
    assert is_projective(M.left) and is_projective(M.right)


def test_zero_bimodule(R):
    t = tensor_ring(R, zero_bimodule(R))
    assert t.grading == [6] and t.N == 0
    assert np.array_equal(t.algebra.mult, R.mult)


def test_not_nilpotent(R):
    with pytest.raises(NotNilpotent):
        tensor_ring(R, regular_bimodule(R), nil_bound=5)


def test_trivial_extension_agrees(R, M, ring):
    assert np.array_equal(trivial_extension(R, M).mult, ring.algebra.mult)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_linear_quiver_layers(n):
    r, m = arrow_bimodule(n)
    t = tensor_ring(r, m)
    # layer i = paths of length i in the linear quiver with n vertices
    assert t.grading == [n - i for i in range(n)]
    assert t.algebra.associativity_defect() is None


def test_layer_grading_of_products(ring):
    t = ring.algebra
    offs = ring.offsets + [t.dim]
    layer_of = np.searchsorted(offs, np.arange(t.dim), side="right") - 1
    for i, j in itertools.product(range(t.dim), repeat=2):
        support = np.flatnonzero(t.mult[i, j])
        assert all(layer_of[k] == layer_of[i] + layer_of[j] for k in support)


def test_three_layer_associativity():
    r, m = arrow_bimodule(4)
    t = tensor_ring(r, m)
    a = t.algebra
    # the longest path is the product of the three arrows in order
    arrows = [a.basis_vector(4 + k) for k in range(3)]
    prod = a.mul(arrows[2], a.mul(arrows[1], arrows[0]))
    assert prod.any()
    assert np.array_equal(prod, a.mul(a.mul(arrows[2], arrows[1]), arrows[0]))
