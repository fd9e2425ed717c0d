"""Brute-force error probabilities and bounds."""

import math

import numpy as np
import pytest

from targetdetect import (
    BoundKind,
    DensityOperator,
    NoiseSpec,
    ParameterDomainError,
    SizeLimitError,
    bhattacharyya_lower,
    chernoff_bound,
    coherent_ket,
    depolarizing_pair,
    helstrom_error,
    maximally_mixed,
    noon_ket,
    number_ket,
    pure_pure_error,
    q_s,
    spdc_ket,
    target_pair_bipartite,
    target_pair_single_mode,
    thermal_state,
)


def _random_density(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return DensityOperator(rho / np.trace(rho).real, (dim,))


class TestHelstrom:
    def test_identical_states_give_half(self):
        rho = maximally_mixed(3)
        assert helstrom_error((rho, rho)).value == pytest.approx(0.5, abs=1e-14)

    def test_depolarizing_qubit(self):
        pair = depolarizing_pair(number_ket(0, cutoff=1))
        assert helstrom_error(pair).value == pytest.approx(0.25, abs=1e-14)

    @pytest.mark.parametrize("n,n_b,m", [(0, 1.0, 1), (2, 0.5, 2), (4, 2.0, 3), (1, 1.0, 10)])
    def test_number_state_family_exact(self, n, n_b, m):
        noise = NoiseSpec(n_b=n_b)
        pair = target_pair_single_mode(number_ket(n), noise)
        got = helstrom_error(pair, m)
        expected = 0.5 * (n_b**n / (n_b + 1.0) ** (n + 1)) ** m
        assert got.value == pytest.approx(expected, rel=1e-14)
        assert got.kind is BoundKind.EXACT
        assert got.diagnostics["path"] == "diagonal_point_mass"

    def test_point_mass_path_matches_dense_path_under_rotation(self):
        # rotating both states by a common unitary leaves the error unchanged
        rng = np.random.default_rng(3)
        p = np.array([0.5, 0.3, 0.2])
        rho0 = DensityOperator(np.diag(p).astype(complex), (3,))
        rho1 = number_ket(1, cutoff=2).projector()
        fast = helstrom_error((rho0, rho1), 2)
        assert fast.diagnostics["path"] == "diagonal_point_mass"
        g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        u, _ = np.linalg.qr(g)
        rot0 = DensityOperator(u @ rho0.to_dense() @ u.conj().T, (3,))
        rot1 = DensityOperator(u @ rho1.to_dense() @ u.conj().T, (3,))
        dense = helstrom_error((rot0, rot1), 2)
        assert dense.diagnostics["path"] == "dense_tensor_power"
        assert dense.value == pytest.approx(fast.value, rel=1e-12)

    def test_diagonal_product_path(self):
        rho0 = DensityOperator(np.diag([0.6, 0.3, 0.1]).astype(complex), (3,))
        rho1 = DensityOperator(np.diag([0.2, 0.3, 0.5]).astype(complex), (3,))
        got = helstrom_error((rho0, rho1), 2)
        assert got.diagnostics["path"] == "diagonal_product"
        p = np.kron([0.6, 0.3, 0.1], [0.6, 0.3, 0.1])
        q = np.kron([0.2, 0.3, 0.5], [0.2, 0.3, 0.5])
        expected = 0.5 * (1.0 - 0.5 * np.abs(p - q).sum())
        assert got.value == pytest.approx(expected, rel=1e-14)

    def test_pure_vs_pure_matches_closed_form(self):
        n_s = 0.8
        pair = target_pair_single_mode(coherent_ket(n_s), NoiseSpec(n_b=0.0))
        got = helstrom_error(pair).value
        assert got == pytest.approx(pure_pure_error(math.exp(-n_s), 1), rel=1e-10)

    def test_memory_guard(self):
        pair = target_pair_single_mode(coherent_ket(0.5), NoiseSpec(n_b=0.75))
        with pytest.raises(SizeLimitError):
            helstrom_error(pair, 3)      # 33**3 dense would exceed the guard

    def test_diagonal_guard_without_point_mass(self):
        noise = NoiseSpec(beta=0.05)
        rho0 = thermal_state(noise)
        rho1 = thermal_state(NoiseSpec(n_b=1.0), cutoff=rho0.cutoffs[0])
        with pytest.raises(SizeLimitError):
            helstrom_error((rho0, rho1), 4)

    def test_copies_must_be_positive(self):
        pair = depolarizing_pair(number_ket(0, cutoff=1))
        with pytest.raises(ParameterDomainError):
            helstrom_error(pair, 0)


class TestQs:
    def test_identical_states(self):
        rho = maximally_mixed(4)
        for s in (0.0, 0.3, 1.0):
            assert q_s((rho, rho), s) == pytest.approx(1.0, abs=1e-14)

    def test_orthogonal_pure_states(self):
        a = number_ket(0, cutoff=1).projector()
        b = number_ket(1, cutoff=1).projector()
        assert q_s((a, b), 0.5) == pytest.approx(0.0, abs=1e-14)

    def test_pure_rho1_at_s_one_is_quadratic_form(self):
        noise = NoiseSpec(n_b=1.0)
        pair = target_pair_single_mode(coherent_ket(0.7), noise)
        psi = pair.rho1.ket.amplitudes
        psi = psi / np.linalg.norm(psi)
        rho0 = pair.rho0.to_dense()
        assert q_s(pair, 1.0) == pytest.approx(float(np.real(psi.conj() @ rho0 @ psi)), rel=1e-12)

    def test_invalid_s_rejected(self):
        rho = maximally_mixed(2)
        with pytest.raises(ParameterDomainError):
            q_s((rho, rho), 1.2)


class TestChernoff:
    def test_pure_rho1_minimizer_sits_at_one(self):
        noise = NoiseSpec(n_b=1.0)
        pair = target_pair_single_mode(coherent_ket(0.5), noise)
        got = chernoff_bound(pair, 3)
        assert got.s_star == pytest.approx(1.0, abs=1e-9)
        expected = 0.5 * q_s(pair, 1.0) ** 3
        assert got.value == pytest.approx(expected, rel=1e-12)

    def test_noon_value(self):
        pair = target_pair_bipartite(noon_ket(1), NoiseSpec(beta=math.log(2.0)),
                                     compress_idler=True)
        got = chernoff_bound(pair, 1)
        assert got.value == pytest.approx(0.078125, rel=1e-12)
        assert got.s_star == pytest.approx(1.0, abs=1e-9)

    def test_number_pair_matches_exact_every_m(self):
        noise = NoiseSpec(n_b=0.5)
        pair = target_pair_single_mode(number_ket(2), noise)
        for m in (1, 2, 5, 20):
            assert chernoff_bound(pair, m).value == pytest.approx(
                helstrom_error(pair, m).value, rel=1e-12
            )

    def test_identical_states_tie_breaks_to_smallest_s(self):
        # identical pure projectors give exactly q(s) = 1 on the whole grid
        proj = number_ket(0, cutoff=1).projector()
        got = chernoff_bound((proj, proj), 1)
        assert got.s_star == 0.0
        assert got.value == pytest.approx(0.5, abs=1e-14)

    def test_identical_mixed_states_value(self):
        rho = maximally_mixed(3)
        got = chernoff_bound((rho, rho), 1)
        assert got.value == pytest.approx(0.5, abs=1e-14)

    def test_log_linearity_in_copies(self):
        rng = np.random.default_rng(5)
        pair = (_random_density(rng, 4), _random_density(rng, 4))
        c1 = chernoff_bound(pair, 1)
        for m in (2, 3, 10, 100):
            cm = chernoff_bound(pair, m)
            assert math.log(2.0 * cm.value) == pytest.approx(
                m * math.log(2.0 * c1.value), abs=1e-12
            )
            assert cm.s_star == c1.s_star

    def test_diagnostics_recorded(self):
        pair = depolarizing_pair(number_ket(0, cutoff=1))
        got = chernoff_bound(pair)
        assert got.diagnostics["grid_size"] == 201
        assert got.diagnostics["bracket_width"] < 1e-8
        assert got.cutoffs == (1,)

    def test_exhausted_refinement_is_an_error_not_a_value(self):
        from targetdetect import ConvergenceError

        pair = depolarizing_pair(number_ket(0, cutoff=1))
        with pytest.raises(ConvergenceError):
            chernoff_bound(pair, max_refine=1)


class TestBhattacharyyaLower:
    def test_identical_states_give_half(self):
        proj = number_ket(0, cutoff=1).projector()
        assert bhattacharyya_lower((proj, proj), 1).value == pytest.approx(0.5, abs=1e-14)
        # mixed states: the sqrt is infinitely steep at overlap 1, so epsilon-level
        # overlap noise shows up at the sqrt(eps) scale, always on the safe side
        rho = maximally_mixed(3)
        got = bhattacharyya_lower((rho, rho), 1).value
        assert got == pytest.approx(0.5, abs=5e-8)
        assert got <= 0.5

    def test_noon_frozen_value(self):
        pair = target_pair_bipartite(noon_ket(1), NoiseSpec(n_b=1.0), compress_idler=True)
        got = bhattacharyya_lower(pair, 1)
        assert got.diagnostics["root_overlap"] == pytest.approx(0.375, rel=1e-13)
        assert got.value == pytest.approx(0.036487594556521064, rel=1e-12)

    def test_sandwich_on_constructed_pairs(self):
        noise = NoiseSpec(n_b=0.75)
        cases = [
            (target_pair_single_mode(coherent_ket(0.5), noise), (1,)),
            (target_pair_bipartite(noon_ket(1), noise, compress_idler=True), (1,)),
            (depolarizing_pair(number_ket(0, cutoff=2)), (1, 2)),
        ]
        for pair, copy_counts in cases:
            for m in copy_counts:
                lb = bhattacharyya_lower(pair, m).value
                ex = helstrom_error(pair, m).value
                ub = chernoff_bound(pair, m).value
                assert lb <= ex + 1e-10
                assert ex <= ub + 1e-10


class TestPurePure:
    def test_endpoints(self):
        assert pure_pure_error(0.0, 1) == 0.0
        assert pure_pure_error(1.0, 1) == pytest.approx(0.5, abs=1e-15)

    def test_formula(self):
        for ov, m in ((0.3, 1), (0.5, 2), (0.9, 7)):
            expected = 0.5 * (1.0 - math.sqrt(1.0 - ov**m))
            assert pure_pure_error(ov, m) == pytest.approx(expected, rel=1e-13)

    def test_domain(self):
        with pytest.raises(ParameterDomainError):
            pure_pure_error(1.5, 1)
        with pytest.raises(ParameterDomainError):
            pure_pure_error(0.5, 0)

    def test_coherent_vs_vacuum_matches_oracle(self):
        # weak-noise scenario: both hypotheses pure
        n_s = 0.6
        pair = target_pair_single_mode(coherent_ket(n_s), NoiseSpec(n_b=0.0))
        for m in (1, 2):
            assert helstrom_error(pair, m).value == pytest.approx(
                pure_pure_error(math.exp(-n_s), m), rel=1e-9
            )


class TestOracleVsClosedFormSpot:
    """Spot checks frozen from independent truncated-sum evaluations."""

    def test_coherent_bounds(self):
        pair = target_pair_single_mode(coherent_ket(0.5), NoiseSpec(n_b=0.75))
        assert chernoff_bound(pair, 1).value == pytest.approx(0.21470779802151027, rel=1e-10)
        assert bhattacharyya_lower(pair, 1).value == pytest.approx(0.11417530229439837, rel=1e-10)

    def test_spdc_bounds(self):
        pair = target_pair_bipartite(spdc_ket(0.5), NoiseSpec(n_b=0.75))
        assert chernoff_bound(pair, 1).value == pytest.approx(0.13333333333333333, rel=1e-10)
        assert bhattacharyya_lower(pair, 1).value == pytest.approx(0.058877215248492265, rel=1e-10)

    def test_spdc_high_signal(self):
        pair = target_pair_bipartite(spdc_ket(30.0), NoiseSpec(n_b=2.0))
        assert chernoff_bound(pair, 1).value == pytest.approx(0.5 / 1083.0, rel=1e-10)
        assert bhattacharyya_lower(pair, 1).value == pytest.approx(
            5.640959083985653e-05, rel=1e-10
        )
