import numpy as np
import pytest

from sawkit.families import mu_single
from sawkit.sampling import random_family, stream
from sawkit.transforms import (
    Gf2Basis,
    binomial,
    gf2_dependency,
    mobius_subset,
    mobius_subset_direct,
    popcount_table,
    zeta_subset,
    zeta_superset,
)


def test_zeta_subset_indicator_of_empty_set():
    v = np.zeros(8, dtype=np.int64)
    v[0] = 1
    assert np.all(zeta_subset(v) == 1)


def test_zeta_subset_singleton_indicator():
    n = 4
    v = np.zeros(1 << n, dtype=np.int64)
    v[0b0100] = 1  # the singleton {3}
    out = zeta_subset(v)
    for mask in range(1 << n):
        assert out[mask] == (1 if mask & 0b0100 else 0)


@pytest.mark.parametrize("n", [2, 5, 8, 11])
def test_zeta_subset_matches_mu_oracle(n):
    fam = random_family(n, stream(52, n))
    out = zeta_subset(fam.membership.astype(np.int64))
    for mask in range(1 << n):
        assert out[mask] == mu_single(fam, mask)


def test_zeta_superset_examples():
    n = 3
    v = np.zeros(1 << n, dtype=np.int64)
    v[0b111] = 1
    assert np.all(zeta_superset(v) == 1)
    rng = np.random.default_rng(5)
    v = rng.integers(0, 9, size=1 << n).astype(np.int64)
    assert zeta_superset(v)[0] == v.sum()


@pytest.mark.parametrize("n", [1, 4, 7, 10])
def test_zeta_superset_duality_with_complements(n):
    rng = np.random.default_rng(n)
    v = rng.integers(-20, 20, size=1 << n).astype(np.int64)
    sup = zeta_superset(v)
    sub_rev = zeta_subset(v[::-1].copy())
    full = (1 << n) - 1
    for mask in range(1 << n):
        assert sup[mask] == sub_rev[full ^ mask]


@pytest.mark.parametrize("n", range(0, 13))
def test_zeta_mobius_roundtrip(n):
    rng = np.random.default_rng(100 + n)
    v = rng.integers(-1000, 1000, size=1 << n).astype(np.int64)
    assert np.array_equal(mobius_subset(zeta_subset(v)), v)
    assert np.array_equal(zeta_subset(mobius_subset(v)), v)


@pytest.mark.parametrize("n", range(0, 7))
def test_mobius_matches_alternating_sign_oracle(n):
    rng = np.random.default_rng(200 + n)
    v = rng.integers(-50, 50, size=1 << n).astype(np.int64)
    assert np.array_equal(mobius_subset(v), mobius_subset_direct(v))


def test_lattice_vector_shape_guard():
    with pytest.raises(ValueError):
        zeta_subset(np.zeros(6, dtype=np.int64))


def test_binomial_values_and_domain():
    assert binomial(5, 2) == 10
    assert binomial(5, 3) == 10  # C(2k-1, k) at k = 3
    assert binomial(4, -1) == 0
    assert binomial(4, 5) == 0
    assert binomial(0, 0) == 1
    with pytest.raises(ValueError):
        binomial(65, 1)
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_binomial_pascal_and_symmetry():
    for n in range(1, 31):
        for k in range(0, n + 1):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)
            assert binomial(n, k) == binomial(n, n - k)


def test_popcount_table():
    pc = popcount_table(10)
    for mask in range(0, 1 << 10, 37):
        assert pc[mask] == bin(mask).count("1")


def test_gf2_dependency_examples():
    assert gf2_dependency([0b01, 0b10, 0b11]) == [0, 1, 2]
    assert gf2_dependency([0b001, 0b010, 0b100]) is None
    with pytest.raises(ValueError):
        gf2_dependency([0b01, 0])


def test_gf2_dependency_certificates_xor_to_zero():
    rng = np.random.default_rng(7)
    for trial in range(200):
        n = int(rng.integers(2, 11))
        count = int(rng.integers(1, n + 4))
        vecs = [int(rng.integers(1, 1 << n)) for _ in range(count)]
        dep = gf2_dependency(vecs)
        if dep is not None:
            acc = 0
            for i in dep:
                acc ^= vecs[i]
            assert acc == 0
        else:
            assert count <= n  # more than n nonzero vectors are always dependent


def test_gf2_pigeonhole_always_dependent():
    rng = np.random.default_rng(8)
    for trial in range(100):
        n = int(rng.integers(1, 10))
        seen = set()
        vecs = []
        while len(vecs) < n + 1:
            v = int(rng.integers(1, 1 << n))
            vecs.append(v)
        assert gf2_dependency(vecs) is not None


def test_gf2_basis_incremental():
    basis = Gf2Basis()
    assert basis.insert(0b110) is None
    assert basis.insert(0b011) is None
    dep = basis.insert(0b101)
    assert dep == [0, 1, 2]
    assert len(basis) == 2
