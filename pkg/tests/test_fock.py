"""State constructors and linear-algebra primitives."""

import math

import numpy as np
import pytest

from targetdetect import (
    DensityOperator,
    InvalidStateError,
    NoiseSpec,
    ParameterDomainError,
    coherent_ket,
    matrix_power,
    maximally_entangled_qudit,
    maximally_mixed,
    noon_ket,
    number_ket,
    partial_trace,
    spdc_ket,
    tensor,
    thermal_state,
    trace_norm,
    werner_state,
)
from targetdetect.errors import SizeLimitError
from targetdetect.fock import TAIL_EPS, spectral_decomposition


class TestNoiseSpec:
    def test_requires_exactly_one_parameter(self):
        with pytest.raises(ParameterDomainError):
            NoiseSpec()
        with pytest.raises(ParameterDomainError):
            NoiseSpec(n_b=1.0, beta=1.0)

    def test_beta_to_mean_photon_number(self):
        # beta = 0.05 corresponds to roughly twenty thermal photons
        noise = NoiseSpec(beta=0.05)
        assert noise.n_b == pytest.approx(19.50416649306589, abs=1e-12)
        assert 19.0 < noise.n_b < 20.0

    def test_round_trip(self):
        noise = NoiseSpec(n_b=1.0)
        assert noise.beta == pytest.approx(math.log(2.0), rel=1e-15)
        back = NoiseSpec(beta=noise.beta)
        assert back.n_b == pytest.approx(1.0, rel=1e-14)

    def test_zero_temperature(self):
        assert NoiseSpec(n_b=0.0).beta == math.inf
        assert NoiseSpec(beta=math.inf).n_b == 0.0

    def test_domain_errors(self):
        with pytest.raises(ParameterDomainError):
            NoiseSpec(n_b=-0.1)
        with pytest.raises(ParameterDomainError):
            NoiseSpec(beta=0.0)
        with pytest.raises(ParameterDomainError):
            NoiseSpec(beta=-1.0)


class TestThermalState:
    def test_vacuum_limit(self):
        rho = thermal_state(NoiseSpec(n_b=0.0), cutoff=5)
        np.testing.assert_allclose(rho.diagonal_or_none(), [1, 0, 0, 0, 0, 0])
        assert rho.trace_deficit == 0.0

    def test_small_cutoff_records_deficit(self):
        rho = thermal_state(NoiseSpec(n_b=1.0), cutoff=1)
        np.testing.assert_allclose(rho.diagonal_or_none(), [0.5, 0.25])
        assert rho.trace_deficit == pytest.approx(0.25, abs=1e-15)

    def test_entries_match_geometric_form(self):
        noise = NoiseSpec(n_b=2.0)
        rho = thermal_state(noise, cutoff=10)
        k = np.arange(11)
        np.testing.assert_allclose(
            rho.diagonal_or_none(), 2.0**k / 3.0 ** (k + 1), rtol=1e-15
        )
        rho.validate()

    def test_policy_cutoff_meets_tail(self):
        noise = NoiseSpec(beta=0.05)
        rho = thermal_state(noise)
        assert rho.trace_deficit < TAIL_EPS
        # smallest such cutoff: one less must miss the budget
        smaller = thermal_state(noise, cutoff=rho.cutoffs[0] - 1)
        assert smaller.trace_deficit >= TAIL_EPS


class TestCoherentKet:
    def test_vacuum(self):
        ket = coherent_ket(0.0)
        assert ket.dims == (1,)
        assert ket.amplitudes[0] == 1.0

    def test_ground_amplitude(self):
        ket = coherent_ket(1.0, cutoff=40)
        assert ket.amplitudes[0].real == pytest.approx(math.exp(-0.5), rel=1e-15)

    def test_normalization_minus_tail(self):
        for n_s in (0.3, 1.0, 2.5):
            ket = coherent_ket(n_s)
            assert ket.norm_sq == pytest.approx(1.0 - ket.norm_deficit, abs=1e-13)
            assert ket.norm_deficit < TAIL_EPS

    def test_mean_photon_number(self):
        ket = coherent_ket(1.7)
        assert ket.mean_occupation(0) == pytest.approx(1.7, abs=1e-10)

    def test_negative_mean_rejected(self):
        with pytest.raises(ParameterDomainError):
            coherent_ket(-1.0)


class TestNumberKet:
    def test_basis_vector(self):
        ket = number_ket(3)
        assert ket.dims == (4,)
        assert ket.amplitude(3) == 1.0
        assert ket.norm_sq == 1.0

    def test_cutoff_below_occupation_rejected(self):
        with pytest.raises(ParameterDomainError):
            number_ket(3, cutoff=2)


class TestNoonKet:
    def test_n1_amplitudes(self):
        ket = noon_ket(1)
        assert ket.amplitude(2, 0) == pytest.approx(1 / math.sqrt(2))
        assert ket.amplitude(0, 2) == pytest.approx(1 / math.sqrt(2))
        assert ket.norm_sq == pytest.approx(1.0, abs=1e-15)
        assert ket.norm_deficit == 0.0

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_mean_photon_number_per_mode(self, n):
        ket = noon_ket(n)
        assert ket.mean_occupation(0) == pytest.approx(n, abs=1e-12)
        assert ket.mean_occupation(1) == pytest.approx(n, abs=1e-12)

    @pytest.mark.parametrize("n", [1, 3])
    def test_reduced_idler_state(self, n):
        marginal = partial_trace(noon_ket(n).projector(), keep=1)
        diag = marginal.diagonal_or_none()
        expected = np.zeros(2 * n + 1)
        expected[0] = 0.5
        expected[2 * n] = 0.5
        np.testing.assert_allclose(diag, expected, atol=1e-15)

    def test_zero_photons_rejected(self):
        with pytest.raises(ParameterDomainError):
            noon_ket(0)


class TestSpdcKet:
    def test_vacuum(self):
        ket = spdc_ket(0.0)
        assert ket.dims == (1, 1)
        assert ket.amplitude(0, 0) == 1.0

    def test_single_term_truncation(self):
        ket = spdc_ket(1.0, cutoff=0)
        assert ket.amplitude(0, 0).real == pytest.approx(1 / math.sqrt(2), rel=1e-15)
        assert ket.norm_deficit == pytest.approx(0.5, abs=1e-15)

    def test_reduced_state_is_thermal(self):
        n_s = 0.8
        ket = spdc_ket(n_s)
        marginal = partial_trace(ket.projector(), keep=1)
        expected = thermal_state(NoiseSpec(n_b=n_s), cutoff=ket.dims[1] - 1)
        np.testing.assert_allclose(
            marginal.diagonal_or_none(), expected.diagonal_or_none(), rtol=1e-13
        )

    def test_norm_books_balance(self):
        ket = spdc_ket(2.0)
        assert ket.norm_sq + ket.norm_deficit == pytest.approx(1.0, abs=1e-13)


class TestQuditStates:
    def test_bell_state(self):
        ket = maximally_entangled_qudit(2)
        assert ket.amplitude(0, 0) == pytest.approx(1 / math.sqrt(2))
        assert ket.amplitude(1, 1) == pytest.approx(1 / math.sqrt(2))
        assert ket.amplitude(0, 1) == 0.0
        assert ket.norm_sq == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_reduced_state_is_maximally_mixed(self, d):
        marginal = partial_trace(maximally_entangled_qudit(d).projector(), keep=0)
        np.testing.assert_allclose(marginal.to_dense(), np.eye(d) / d, atol=1e-15)

    def test_dimension_below_two_rejected(self):
        with pytest.raises(ParameterDomainError):
            maximally_entangled_qudit(1)

    def test_werner_endpoints(self):
        d = 3
        uniform = werner_state(d, 0.0)
        np.testing.assert_allclose(uniform.to_dense(), np.eye(d * d) / d**2, atol=1e-15)
        pure = werner_state(d, 1.0)
        phi = maximally_entangled_qudit(d)
        np.testing.assert_allclose(
            pure.to_dense(), np.outer(phi.amplitudes, phi.amplitudes.conj()), atol=1e-15
        )

    def test_werner_trace_and_entanglement_flag(self):
        assert werner_state(2, 0.5).trace == pytest.approx(1.0, abs=1e-14)
        assert werner_state(2, 0.5).meta["entangled"]          # 0.5 > 1/3
        assert not werner_state(2, 0.25).meta["entangled"]     # 0.25 < 1/3
        with pytest.raises(ParameterDomainError):
            werner_state(2, 1.5)


class TestTensorAndPartialTrace:
    def test_mixed_qubits(self):
        half = maximally_mixed(2)
        quarter = tensor(half, half)
        np.testing.assert_allclose(quarter.to_dense(), np.eye(4) / 4, atol=1e-15)
        assert quarter.dims == (2, 2)

    def test_trace_multiplicative(self):
        a = thermal_state(NoiseSpec(n_b=1.0), cutoff=2)
        b = thermal_state(NoiseSpec(n_b=0.5), cutoff=3)
        assert tensor(a, b).trace == pytest.approx(a.trace * b.trace, rel=1e-14)

    def test_diagonal_times_diagonal_stays_diagonal(self):
        a = thermal_state(NoiseSpec(n_b=1.0), cutoff=2)
        prod = tensor(a, a)
        assert prod.diagonal_or_none() is not None

    def test_partial_trace_of_product_recovers_factor(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            mats = []
            for dim in (2, 3):
                g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
                rho = g @ g.conj().T
                mats.append(DensityOperator(rho / np.trace(rho).real, (dim,)))
            a, b = mats
            back = partial_trace(tensor(a, b), keep=0)
            np.testing.assert_allclose(back.to_dense(), a.to_dense(), atol=1e-12)
            back = partial_trace(tensor(a, b), keep=1)
            np.testing.assert_allclose(back.to_dense(), b.to_dense(), atol=1e-12)

    def test_invalid_subsystem_rejected(self):
        pair = tensor(maximally_mixed(2), maximally_mixed(2))
        with pytest.raises(ParameterDomainError):
            partial_trace(pair, keep=2)
        with pytest.raises(ParameterDomainError):
            partial_trace(maximally_mixed(2), keep=0)

    def test_tensor_size_guard(self):
        big = thermal_state(NoiseSpec(beta=0.05))
        mid = tensor(big, big)
        with pytest.raises(SizeLimitError):
            tensor(mid, big)


class TestMatrixPower:
    def test_identity_power(self):
        rho = thermal_state(NoiseSpec(n_b=1.0), cutoff=1)
        out = matrix_power(rho, 1.0)
        np.testing.assert_allclose(
            np.asarray(out.todense()), rho.to_dense(), atol=1e-15
        )

    def test_square_root_of_diagonal(self):
        rho = thermal_state(NoiseSpec(n_b=1.0), cutoff=1)
        out = np.asarray(matrix_power(rho, 0.5).todense())
        np.testing.assert_allclose(np.diag(out).real, [0.7071067811865476, 0.5], rtol=1e-15)

    def test_zeroth_power_of_projector_is_projector(self):
        proj = number_ket(2).projector()
        out = matrix_power(proj, 0.0)
        np.testing.assert_allclose(out, proj.to_dense(), atol=1e-14)

    def test_eigenvalue_composition(self):
        rng = np.random.default_rng(11)
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = DensityOperator(g @ g.conj().T / np.trace(g @ g.conj().T).real, (4,))
        base = np.sort(np.linalg.eigvalsh(rho.to_dense()))
        for s in (0.25, 0.5, 0.9):
            powered = np.sort(np.linalg.eigvalsh(matrix_power(rho, s)))
            np.testing.assert_allclose(powered, base**s, atol=1e-12)

    def test_power_outside_unit_interval_rejected(self):
        rho = maximally_mixed(2)
        with pytest.raises(ParameterDomainError):
            matrix_power(rho, 1.5)

    def test_negative_eigenvalue_rejected(self):
        bad = DensityOperator(np.diag([1.5, -0.5]).astype(complex), (2,))
        with pytest.raises(InvalidStateError):
            matrix_power(bad, 0.5)


class TestTraceNorm:
    def test_density_operator_has_unit_norm(self):
        assert trace_norm(maximally_mixed(3)) == pytest.approx(1.0, abs=1e-14)
        assert trace_norm(werner_state(2, 0.7)) == pytest.approx(1.0, abs=1e-14)

    def test_signed_diagonal(self):
        assert trace_norm(np.diag([0.5 - 1.0, 0.5]).astype(complex)) == pytest.approx(
            1.0, abs=1e-15
        )

    def test_zero(self):
        assert trace_norm(np.zeros((3, 3))) == 0.0

    def test_non_hermitian_rejected(self):
        with pytest.raises(InvalidStateError):
            trace_norm(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestSpectralStructure:
    def test_ket_provenance_skips_eigensolver(self):
        proj = coherent_ket(1.0).projector()
        vals, vecs = spectral_decomposition(proj)
        assert vals.shape == (1,)
        assert vals[0] == pytest.approx(proj.ket.norm_sq, rel=1e-14)
        assert vecs.shape == (proj.dim, 1)

    def test_sparse_rank_one_detected_without_provenance(self):
        ket = spdc_ket(0.5)
        proj = ket.projector()
        anonymous = DensityOperator(proj.matrix, proj.dims, proj.trace_deficit)
        vals, vecs = spectral_decomposition(anonymous)
        assert vals.shape == (1,)
        assert vals[0] == pytest.approx(ket.norm_sq, rel=1e-10)

    def test_validate_catches_broken_hermiticity(self):
        mat = np.eye(2, dtype=complex)
        mat[0, 1] = 1e-6
        with pytest.raises(InvalidStateError):
            DensityOperator(mat / np.trace(mat).real, (2,)).validate()


class TestConstructorInvariants:
    def test_every_constructor_passes_full_validation(self):
        noise = NoiseSpec(n_b=1.3)
        states = [
            thermal_state(noise),
            thermal_state(noise, cutoff=4),
            coherent_ket(0.7).projector(),
            noon_ket(2).projector(),
            spdc_ket(0.9).projector(),
            maximally_entangled_qudit(3).projector(),
            werner_state(3, 0.6),
            maximally_mixed(4),
            tensor(thermal_state(noise, cutoff=3), maximally_mixed(2)),
            partial_trace(spdc_ket(0.9).projector(), keep=1),
        ]
        for rho in states:
            rho.validate()


class TestTruncationConvergence:
    def test_doubling_cutoff_barely_moves_overlaps(self):
        # downstream overlap: Tr[rho_th**(1/2) |psi><psi|**(1/2)] via raw sums
        noise = NoiseSpec(n_b=1.5)
        base = thermal_state(noise)
        k_small = base.cutoffs[0]
        for build in (coherent_ket, spdc_ket):
            small = build(1.2)
            big = build(1.2, cutoff=2 * small.cutoffs[0] + 1)
            th_small = thermal_state(noise, cutoff=k_small)
            th_big = thermal_state(noise, cutoff=2 * k_small + 1)

            def overlap(ket, th):
                amp2 = np.abs(ket.amplitudes.reshape(ket.dims)) ** 2
                weights = np.sqrt(th.diagonal_or_none())[: ket.dims[0]]
                per_signal = amp2.sum(axis=tuple(range(1, ket.n_modes)))
                return float(per_signal[: weights.size] @ weights)

            delta = abs(overlap(small, th_small) - overlap(big, th_big))
            assert delta < 10 * TAIL_EPS
