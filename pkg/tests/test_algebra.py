import itertools

import numpy as np
import pytest

from tensorring.algebra import (
    AlgebraError,
    FinDimAlgebra,
    MoritaData,
    QuiverPreset,
    morita_ring,
    mu_iso,
    path_algebra,
    product_algebra,
    trivial_extension,
)
from tensorring.exactlin import FieldSpec
from tensorring.modules import FdBimodule, zero_bimodule


def path_oracle(n, h):
    """Paths as vertex tuples; product p*q = walk q then p (or None)."""
    paths = [tuple((s - 1 + t) % n + 1 for t in range(l + 1))
             for s in range(1, n + 1) for l in range(h)]

    def mul(p, q):
        if q[-1] != p[0] or len(p) + len(q) - 2 >= h:
            return None
        return q + p[1:]

    return paths, mul


@pytest.mark.parametrize("n,h", [(3, 2), (2, 2), (3, 3), (4, 2), (4, 3)])
def test_path_algebra_matches_enumeration(n, h):
    pa = path_algebra(QuiverPreset(n, h))
    a = pa.algebra
    paths, mul = path_oracle(n, h)
    assert a.dim == len(paths) == n * h
    index = {p: i for i, p in enumerate(paths)}
    for (i, p), (j, q) in itertools.product(enumerate(paths), repeat=2):
        want = np.zeros(a.dim, dtype=np.int64)
        r = mul(p, q)
        if r is not None:
            want[index[r]] = 1
        assert np.array_equal(a.mult[i, j], want)
    assert a.associativity_defect() is None and a.unit_defect() is None


def test_preset_dimensions(nakayama, R):
    assert R.dim == 6
    e1, e3 = nakayama.idempotent(1), nakayama.idempotent(3)
    # e_3 R e_1 = 0 because 3 - 1 >= h
    for b in range(R.dim):
        x = np.eye(R.dim, dtype=np.int64)[b]
        assert not R.mul(R.mul(e3, x), e1).any()


def test_quiver_preset_bounds():
    with pytest.raises(ValueError):
        QuiverPreset(3, 1)
    with pytest.raises(ValueError):
        QuiverPreset(3, 4)


def test_opposite(R):
    op = R.opposite
    assert op.associativity_defect() is None
    assert np.array_equal(op.mult, np.transpose(R.mult, (1, 0, 2)))
    assert np.array_equal(op.opposite.mult, R.mult)
    # k[x]/x^2 is commutative, so the opposite has the same table
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = 1
    dual_numbers = FinDimAlgebra(mult, [1, 0])
    assert np.array_equal(dual_numbers.opposite.mult, dual_numbers.mult)


def test_bad_algebras_rejected():
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0, 0] = 1
    mult[1, 1, 0] = 1
    mult[0, 1, 1] = 1  # no right unit behaviour for b1 * b0
    a = FinDimAlgebra(mult, [1, 0])
    assert a.unit_defect() is not None
    with pytest.raises(AlgebraError):
        FinDimAlgebra(np.zeros((2, 2, 3)), [1, 0])


def test_product_algebra(R, k7):
    ab = product_algebra(R, k7)
    assert ab.dim == 7
    assert ab.associativity_defect() is None and ab.unit_defect() is None
    assert len(ab.primitive_idempotents) == 4


def test_trivial_extension_dual_numbers(k7):
    m = FdBimodule(k7, k7, np.ones((1, 1, 1)), np.ones((1, 1, 1)))
    te = trivial_extension(k7, m)
    want = np.zeros((2, 2, 2), dtype=np.int64)
    want[0, 0, 0] = want[0, 1, 1] = want[1, 0, 1] = 1
    assert np.array_equal(te.mult, want)


def test_trivial_extension_zero(R):
    te = trivial_extension(R, zero_bimodule(R))
    assert np.array_equal(te.mult, R.mult)


def test_triangular_morita_table(tri_ws):
    lam = morita_ring(tri_ws.morita_data())
    # basis A, U, B (V = 0): e1 e1 = e1, e2 e2 = e2, u e1 = u, e2 u = u
    want = np.zeros((3, 3, 3), dtype=np.int64)
    want[0, 0, 0] = want[2, 2, 2] = 1
    want[1, 0, 1] = want[2, 1, 1] = 1
    assert np.array_equal(lam.mult, want)


def test_morita_zero_bimodules_is_product(R, k7):
    d = MoritaData(R, k7, zero_bimodule(k7, R), zero_bimodule(R, k7))
    lam = morita_ring(d)
    assert np.array_equal(lam.mult, product_algebra(R, k7).mult)
    P, _, _ = mu_iso(d)
    assert np.array_equal(P.data, np.eye(lam.dim, dtype=np.int64))


@pytest.mark.parametrize("which", ["tri", "preset"])
def test_mu_iso_bit_exact(which, tri_ws, morita_zero_setup):
    d = tri_ws.morita_data() if which == "tri" else morita_zero_setup.data
    P, lam, te = mu_iso(d)
    perm = np.argmax(P.data, axis=0)
    assert np.array_equal(np.einsum("ijk,tk->ijt", lam.mult, P.data) % lam.p,
                          te.mult[np.ix_(perm, perm)])
    assert sorted(perm.tolist()) == list(range(lam.dim))


def test_morita_validate_rejects_bad_pairing(k7):
    u = FdBimodule(k7, k7, np.ones((1, 1, 1)), np.ones((1, 1, 1)))
    phi = np.ones((1, 1, 1))
    psi = np.zeros((1, 1, 1))
    with pytest.raises(AlgebraError):
        morita_ring(MoritaData(k7, k7, u, u, phi, psi))


def test_primitive_idempotents(R, tri_lambda):
    for a, count in ((R, 3), (tri_lambda, 2)):
        ids = a.primitive_idempotents
        assert len(ids) == count
        assert np.array_equal(sum(ids) % a.p, a.unit)
        for e, f in itertools.product(range(count), repeat=2):
            prod = a.mul(ids[e], ids[f])
            assert np.array_equal(prod, ids[e] if e == f else 0 * prod)


def test_idempotent_lifting_without_hint():
    # k x k given by a non-diagonal basis: (1,1) and (1,0)
    p = 5
    base = np.array([[1, 1], [1, 0]])  # rows: basis vectors in coordinates of k x k
    inv = np.linalg.inv(base.T).round().astype(int) % p
    d = 2
    mult = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            prod = base[i] * base[j]
            mult[i, j] = (inv @ prod) % p
    unit = (inv @ np.array([1, 1])) % p
    a = FinDimAlgebra(mult, unit, FieldSpec(p))
    assert a.associativity_defect() is None
    assert len(a.primitive_idempotents) == 2
    assert a.radical.shape[1] == 0
