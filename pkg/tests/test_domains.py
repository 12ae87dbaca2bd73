"""Tests for domain membership and seeded interior/pair sampling."""

import pytest

from bergkern import DomainSpec, PointPair, SamplingError, contains, diagonal_pair, sample_interior, sample_pairs


def test_contains_d2_examples():
    d2 = DomainSpec.d2()
    assert contains(d2, (0.5, 0.0, 0.0))       # 0 < 0.0625 < 0.25
    assert not contains(d2, (0.0, 0.5, 0.0))   # 0.25 < 0 fails
    assert not contains(d2, (0.9, 0.9, 0.0))


def test_contains_ellipsoid_example():
    ell = DomainSpec.ellipsoid((1.0, 1.0))
    assert contains(ell, (0.6, 0.6))           # 0.72 < 1
    assert not contains(ell, (0.8, 0.7))


def test_contains_dimension_mismatch():
    with pytest.raises(ValueError):
        contains(DomainSpec.d2(), (0.1, 0.1))


def test_domain_spec_validation():
    with pytest.raises(ValueError):
        DomainSpec.d1(0.0, 1.0)
    with pytest.raises(ValueError):
        DomainSpec.ellipsoid(())
    with pytest.raises(ValueError):
        DomainSpec.ellipsoid((1.0, -2.0))
    assert DomainSpec.d1(1.5, 2.0).dim == 4
    assert DomainSpec.d2().dim == 3
    assert DomainSpec.ellipsoid((2.0, 1.0, 1.0)).dim == 3


def test_sample_interior_counts_and_membership():
    d2 = DomainSpec.d2()
    assert sample_interior(d2, 42, 0, 0.1) == []
    pts = sample_interior(d2, 42, 100, 0.1)
    assert len(pts) == 100
    assert all(contains(d2, z) for z in pts)
    assert all(contains(d2, z, margin=0.1) for z in pts)


def test_sample_interior_deterministic():
    for spec in (DomainSpec.d2(), DomainSpec.d1(2.0, 1.0), DomainSpec.ellipsoid((1.0, 2.0))):
        a = sample_interior(spec, 7, 20, 0.05)
        b = sample_interior(spec, 7, 20, 0.05)
        assert a == b
        c = sample_interior(spec, 8, 20, 0.05)
        assert a != c


def test_sample_interior_margin_validation():
    with pytest.raises(ValueError):
        sample_interior(DomainSpec.d2(), 1, 1, 1.0)
    with pytest.raises(ValueError):
        sample_interior(DomainSpec.d2(), 1, -1, 0.0)


def test_d1_interior_nu3_bound():
    # |z3|^2 < rho^p - rho^(2p) <= 1/4 on all of d1
    for p, lam in ((0.5, 1.0), (1.0, 2.0), (2.5, 3.0)):
        for z in sample_interior(DomainSpec.d1(p, lam), 3, 50, 0.0):
            assert abs(z[2]) ** 2 < 0.25


def test_d2_interior_z3_below_z1():
    for z in sample_interior(DomainSpec.d2(), 5, 50, 0.0):
        assert abs(z[2]) ** 2 < abs(z[0]) ** 2


def test_pair_nu_definition_and_contraction():
    pairs = sample_pairs(DomainSpec.d1(1.0, 2.0), 11, 30, 0.1)
    for pr in pairs:
        for j in range(4):
            assert pr.nu[j] == pr.z[j] * pr.zeta[j].conjugate()
            assert abs(pr.nu[j]) <= abs(pr.z[j]) ** 2 * (1 + 1e-12)


def test_pairs_deterministic():
    a = sample_pairs(DomainSpec.d2(), 42, 10, 0.2)
    b = sample_pairs(DomainSpec.d2(), 42, 10, 0.2)
    assert a == b


def test_d2_pairs_stay_in_laurent_region():
    for pr in sample_pairs(DomainSpec.d2(), 42, 100, 0.2):
        n1, n2, n3 = pr.nu
        assert abs(n3) < abs(n1)
        assert abs(n3 / n1) < 1.0
        assert abs(n1) + abs(n2 / n1) < 1.0


def test_diagonal_pair_is_fixed_point_construction():
    z = (0.3 + 0.1j, 0.05, 0.02 - 0.01j)
    pr = diagonal_pair(z)
    assert pr.z == pr.zeta
    assert all(abs(v.imag) == 0.0 for v in pr.nu)


def test_pointpair_dimension_check():
    with pytest.raises(ValueError):
        PointPair((0.1, 0.2), (0.1,))


def test_degenerate_margin_raises_sampling_error(monkeypatch):
    import bergkern.domains as domains_mod
    monkeypatch.setattr(domains_mod, "_MAX_ATTEMPTS_PER_POINT", 2000)
    with pytest.raises(SamplingError):
        sample_interior(DomainSpec.d2(), 1, 1, 0.999999)
