import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from varbounds import bounds as B
from varbounds.errors import (
    AllCompatible,
    AllCovariancesVanish,
    CommutatorStructureViolated,
    DimMismatch,
    EmptySet,
    NeedAtLeastThree,
)
from varbounds.quantum import Observable, state_from_bloch, validate_state, variance
from varbounds.verify import canonical_fixture, random_observable, random_state

import oracles

S3 = math.sqrt(3) / 2
HALF_PI = math.pi / 2


@pytest.fixture
def fig1(paulis):
    return lambda theta: (state_from_bloch(oracles.fig1_state(theta)), [paulis[0], paulis[2]])


@pytest.fixture
def fig2(paulis):
    return lambda theta: (state_from_bloch(oracles.fig2_state(theta)), list(paulis))


@pytest.fixture
def fig3(paulis):
    sx, sy, sz = paulis
    return lambda theta: (state_from_bloch(oracles.fig3_state(theta)), [sz], [sx, sy])


def _random(seed, n=3, m=3):
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(2, 5))
    s = random_state(dim, int(rng.integers(1, dim + 1)), rng)
    a = [random_observable(dim, rng, f"A{i}") for i in range(n)]
    b = [random_observable(dim, rng, f"B{j}") for j in range(m)]
    return s, a, b


class TestGram:
    def test_maximally_mixed_paulis(self, fig2):
        g = B.build_gram(*fig2(HALF_PI))
        np.testing.assert_allclose(g.m_matrix, np.eye(3), atol=1e-15)
        assert g.lambda_max == pytest.approx(1)

    def test_fig1_half_pi(self, fig1):
        g = B.build_gram(*fig1(HALF_PI))
        assert abs(g.m_matrix[0, 1]) == pytest.approx(S3, abs=1e-12)
        assert g.lambda_max == pytest.approx(1 + S3, abs=1e-12)

    def test_zero_variance_row(self, paulis):
        g = B.build_gram(state_from_bloch([0, 0, 1]), list(paulis))
        np.testing.assert_array_equal(g.m_matrix[2], 0)
        np.testing.assert_array_equal(g.m_matrix[:, 2], 0)
        assert g.deltas[2] == 0

    def test_empty(self):
        with pytest.raises(EmptySet):
            B.build_gram(state_from_bloch([0, 0, 0]), [])

    def test_dim_mismatch(self, paulis):
        with pytest.raises(DimMismatch):
            B.build_gram(validate_state(np.eye(3) / 3), [paulis[0]])

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 5))
    def test_structure(self, seed, n):
        s, obs, _ = _random(seed, n=n)
        g = B.build_gram(s, obs)
        w = np.linalg.eigvalsh(g.m_matrix)
        assert w.min() >= -1e-10
        diag = np.real(np.diag(g.m_matrix))
        assert np.all(np.minimum(np.abs(diag), np.abs(diag - 1)) <= 1e-10)
        assert g.lambda_max <= n + 1e-10
        if n >= 2:
            assert B.build_gram(s, obs[:2]).lambda_max <= 2 + 1e-10


class TestSumBounds:
    def test_thm1_fig1(self, fig1):
        assert B.bound_thm1(*fig1(HALF_PI)) == pytest.approx(2 / (1 + S3), abs=1e-12)
        assert B.bound_thm1(*fig1(HALF_PI)) == pytest.approx(1.0717968, abs=1e-7)
        s, obs = fig1(0.0)
        assert B.bound_thm1(s, obs) == pytest.approx(1.25, abs=1e-12)
        assert B.sum_of_variances(s, obs) == pytest.approx(1.25, abs=1e-12)

    def test_thm1_fig2_tight(self, fig2):
        s, obs = fig2(HALF_PI)
        assert B.bound_thm1(s, obs) == pytest.approx(3, abs=1e-12)
        assert B.sum_of_variances(s, obs) == pytest.approx(3, abs=1e-12)

    def test_thm1_all_compatible(self, paulis):
        s = state_from_bloch([0, 0, 1])
        with pytest.raises(AllCompatible):
            B.bound_thm1(s, [paulis[2], Observable("Z2", 2 * paulis[2].matrix)])

    def test_two_observable_sum_bound(self, fig1, paulis):
        assert B.bound_maccone(*fig1(HALF_PI)[0:1], *fig1(HALF_PI)[1]) == pytest.approx(1.0, abs=1e-12)
        s, (a, b) = fig1(0.0)
        assert B.bound_maccone(s, a, b) == pytest.approx(0.625, abs=1e-12)
        s, (a, *_), _ = _random(2)
        assert B.bound_maccone(s, a, a) == pytest.approx(2 * variance(s, a), abs=1e-12)

    def test_three_or_more_observable_bound(self, fig2, paulis):
        assert B.bound_chen_fei(*fig2(HALF_PI)) == pytest.approx(1.5, abs=1e-12)
        assert B.bound_chen_fei(*fig2(math.pi / 3)) == pytest.approx(1.379171, abs=1e-6)
        assert B.bound_chen_fei(*fig2(math.pi / 3)) == pytest.approx(oracles.fig2_multi_observable_bound(math.pi / 3), abs=1e-12)
        with pytest.raises(NeedAtLeastThree):
            B.bound_chen_fei(state_from_bloch([0, 0, 0]), paulis[:2])

    def test_cor3_fig2(self, fig2):
        c = B.bound_cor3(*fig2(math.pi / 3))
        assert c.sigma_max == pytest.approx(1.5, abs=1e-12)
        assert c.cor3 == pytest.approx(2 / 3, abs=1e-12)
        assert c.pairwise_rur == pytest.approx(0.5, abs=1e-12)

    def test_cor3_north_pole(self, paulis):
        c = B.bound_cor3(state_from_bloch([0, 0, 1]), list(paulis))
        assert c.sigma_max == pytest.approx(2, abs=1e-12)
        assert c.cor3 == pytest.approx(1, abs=1e-12)
        assert c.pairwise_rur == pytest.approx(1, abs=1e-12)

    def test_cor3_maximally_mixed(self, paulis):
        c = B.bound_cor3(state_from_bloch([0, 0, 0]), list(paulis))
        assert c.cor3 == 0 and c.pairwise_rur == 0

    def test_cor3_too_few(self, paulis):
        with pytest.raises(EmptySet):
            B.bound_cor3(state_from_bloch([0, 0, 0]), paulis[:1])

    def test_report_n2_and_n3(self, fig1, fig2):
        r2 = B.sum_bounds(*fig1(HALF_PI))
        assert r2.maccone == pytest.approx(1) and r2.chen_fei is None
        r3 = B.sum_bounds(*fig2(HALF_PI))
        assert r3.maccone is None and r3.chen_fei == pytest.approx(1.5)
        for r in (r2, r3):
            assert all(r.lhs >= v - 1e-9 for v in r.bounds().values())

    def test_report_records_degenerate(self, paulis):
        s = state_from_bloch([0, 0, 1])
        r = B.sum_bounds(s, [paulis[2], paulis[2]])
        assert r.thm1 is None and "thm1" in r.degenerate
        assert r.degenerate["thm1"].startswith("AllCompatible")

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(2, 5))
    def test_inequalities(self, seed, n):
        s, obs, _ = _random(seed, n=n)
        r = B.sum_bounds(s, obs)
        for name, value in r.bounds().items():
            assert r.lhs >= value - 1e-9, name
        pair = obs[:2]
        assert B.bound_thm1(s, pair) >= B.bound_maccone(s, *pair) - 1e-9
        if r.sigma_max <= n - 1:
            assert r.cor3 >= r.pairwise_rur - 1e-12


class TestPairBounds:
    def test_north_pole(self, paulis):
        pb = B.pair_bounds(state_from_bloch([0, 0, 1]), paulis[0], paulis[1])
        assert pb.rur == pytest.approx(1) and pb.sur == pytest.approx(1)

    def test_maximally_mixed(self, paulis):
        assert B.pair_bounds(state_from_bloch([0, 0, 0]), paulis[0], paulis[2]) == (0, 0)

    def test_fig3_half_pi(self, fig3):
        s, (sz,), (sx, _) = fig3(HALF_PI)
        assert B.pair_bounds(s, sz, sx).rur == pytest.approx(0.5, abs=1e-12)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_robertson_schrodinger(self, seed):
        s, (a, b, _), _ = _random(seed)
        pb = B.pair_bounds(s, a, b)
        va, vb = variance(s, a), variance(s, b)
        assert math.sqrt(va * vb) >= pb.rur - 1e-9
        assert va * vb >= pb.sur - 1e-9
        assert pb.sur >= pb.rur**2 - 1e-12


class TestOverlap:
    def test_fig3_theta0(self, fig3):
        g = B.build_overlap(*fig3(0.0))
        np.testing.assert_allclose(g.g_matrix, [[0, 0.5]], atol=1e-15)
        assert g.sigma_max == pytest.approx(0.5)

    def test_self_overlap(self, paulis):
        g = B.build_overlap(state_from_bloch([0, 0, 0]), [paulis[0]], [paulis[0]])
        np.testing.assert_allclose(g.g_matrix, [[1]])

    def test_vanishing(self, paulis):
        g = B.build_overlap(state_from_bloch([0, 0, 0]), [paulis[0]], [paulis[1]])
        np.testing.assert_array_equal(g.g_matrix, [[0]])

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(1, 4))
    def test_entries_and_route(self, seed, n, m):
        s, a, b = _random(seed, n, m)
        g = B.build_overlap(s, a, b)
        assert g.g_matrix.min() >= 0 and g.g_matrix.max() <= 1 + 1e-10
        assert np.max(np.abs(g.g_matrix - B.overlap_from_deviations(s, a, b))) <= 1e-10


class TestProductBounds:
    def test_thm2_fig3(self, fig3):
        assert B.bound_thm2(*fig3(0.0)) == pytest.approx(1.0, abs=1e-12)
        s, a, b = fig3(math.pi / 4)
        assert B.bound_thm2(s, a, b) == pytest.approx(math.sqrt(7) / 2, abs=1e-12)
        assert B.product_of_sums(s, a, b) == pytest.approx(math.sqrt(7) / 2, abs=1e-12)

    def test_thm2_vanishing(self, paulis):
        with pytest.raises(AllCovariancesVanish):
            B.bound_thm2(state_from_bloch([0, 0, 0]), [paulis[0]], [paulis[1]])
        with pytest.raises(AllCovariancesVanish):
            B.bound_cor2(state_from_bloch([0, 0, 0]), [paulis[0]], [paulis[1]])

    @pytest.mark.parametrize("theta, expected", [(0.0, 1.0), (math.pi / 4, 1.3228757), (HALF_PI, 1.0)])
    def test_cor2_fig3(self, fig3, theta, expected):
        assert B.bound_cor2(*fig3(theta)) == pytest.approx(expected, abs=1e-7)

    @pytest.mark.parametrize("theta", np.linspace(0, math.pi, 9))
    def test_c22_fig3_constant(self, fig3, theta):
        assert B.bound_c22(*fig3(theta)) == pytest.approx(0.5, abs=1e-12)

    def test_c22_other(self, paulis):
        assert B.bound_c22(state_from_bloch([0, 0, 0]), list(paulis), list(paulis)) == 0
        assert B.bound_c22(state_from_bloch([0, 0, 1]), [paulis[0]], [paulis[1]]) == pytest.approx(1)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(1, 4))
    def test_chain(self, seed, n, m):
        s, a, b = _random(seed, n, m)
        r = B.product_bounds(s, a, b)
        assert not r.degenerate
        assert r.lhs >= r.thm2 - 1e-9
        assert r.thm2 >= r.cor2 - 1e-9
        assert r.lhs >= r.c22 - 1e-9

    def test_report_degenerate(self, paulis):
        r = B.product_bounds(state_from_bloch([0, 0, 0]), [paulis[0]], [paulis[1]])
        assert r.thm2 is None and r.cor2 is None and r.c22 == 0
        assert set(r.degenerate) == {"thm2", "cor2"}


class TestCanonicalSetBound:
    def test_tight(self, paulis):
        sx, sy, sz = paulis
        p = B.bound_pati(state_from_bloch([0, 0, 1]), [sx], [sy], Observable("C", 2 * sz.matrix))
        assert p.lhs == pytest.approx(1) and p.rhs == pytest.approx(1)

    def test_maximally_mixed(self, paulis):
        sx, sy, sz = paulis
        assert B.bound_pati(state_from_bloch([0, 0, 0]), [sx], [sy], Observable("C", 2 * sz.matrix)).rhs == 0

    def test_violated(self, paulis):
        sx, _, sz = paulis
        with pytest.raises(CommutatorStructureViolated):
            B.bound_pati(state_from_bloch([0, 0, 1]), [sx], [sx], Observable("C", 2 * sz.matrix))

    def test_two_pair_fixture(self):
        rng = np.random.default_rng(9)
        s = random_state(3, 2, rng)
        a, b, c = canonical_fixture(random_observable(3, rng), random_observable(3, rng), 2, 1.7, -0.4)
        p = B.bound_pati(s, a, b, c)
        assert p.lhs >= p.rhs - 1e-9
        with pytest.raises(CommutatorStructureViolated):
            B.bound_pati(s, a, b[::-1], c)
