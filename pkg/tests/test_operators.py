"""Grids, Toeplitz/circulant operators, padding, and the 3D tables."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import zeta as hurwitz_zeta

from fraclap import (
    KernelSpec,
    aliasing_difference,
    circulant_from_generator,
    circulant_surrogate,
    circulant_surrogate_3d,
    compress,
    compressed_operator,
    compressed_operator_3d,
    exact_embedding_generator,
    frequency_grid,
    image_sum,
    kernel_table,
    kernel_table_3d,
    lambda_max_3d,
    pad,
    residual,
    residual_3d,
    tail_sum_3d,
    toeplitz_target,
    toeplitz_target_3d,
)
from fraclap.errors import ResourceLimitError, ValidationError


def images_zeta(alpha, d, period):
    """Independent image sum over l != 0 of c_{d + l*period}.

    Valid for the closed-form exponents with an even period: the image
    indices all share the parity of d, so the alternating sign is constant
    and the two one-sided sums are Hurwitz zeta values.
    """
    assert period % 2 == 0
    if alpha == 1.0:
        if d % 2 == 0:
            return 0.0
        scale = -2.0 / math.pi
    else:
        assert alpha == 2.0
        scale = 2.0 * (-1.0) ** d
    return scale / period ** 2 * (
        float(hurwitz_zeta(2, 1.0 + d / period))
        + float(hurwitz_zeta(2, 1.0 - d / period)))


class TestFrequencyGrid:
    def test_exact_values_n8(self):
        grid = frequency_grid(8, 1.0)
        want = math.pi * np.array([0.0, 0.25, 0.5, 0.75, -1.0, -0.75, -0.5, -0.25])
        assert np.array_equal(grid.freqs, want)

    def test_exact_values_n4_halved_mesh(self):
        grid = frequency_grid(4, 0.5)
        want = np.array([0.0, math.pi, -2.0 * math.pi, -math.pi])
        assert np.array_equal(grid.freqs, want)

    def test_negation_symmetry(self):
        freqs = frequency_grid(16, 1.0).freqs
        for k in range(1, 8):
            assert freqs[16 - k] == -freqs[k]

    def test_extreme_frequency(self):
        assert frequency_grid(32, 2.0).freqs[16] == -math.pi / 2.0

    def test_rejects_non_power_of_two(self):
        for bad in (0, 3, 6, 48, -8):
            with pytest.raises(ValidationError):
                frequency_grid(bad, 1.0)

    def test_rejects_bad_mesh(self):
        with pytest.raises(ValidationError):
            frequency_grid(8, 0.0)


class TestToeplitzTarget:
    def test_entries_from_table(self):
        spec = KernelSpec(1.5, 1.0)
        table = kernel_table(spec, 7)
        op = toeplitz_target(spec, 8, table)
        for i in range(8):
            for j in range(8):
                assert op.entries[i, j] == table.coeff(i - j)
        assert op.geometry == "toeplitz-open"

    def test_symmetric(self):
        spec = KernelSpec(0.5, 1.0)
        op = toeplitz_target(spec, 16, kernel_table(spec, 15))
        assert np.array_equal(op.entries, op.entries.T)

    def test_cap_checked_before_coverage(self):
        # the size cap must fire even when the table could not cover N anyway
        spec = KernelSpec(1.0, 1.0)
        small = kernel_table(spec, 3)
        with pytest.raises(ResourceLimitError):
            toeplitz_target(spec, 4097, small)

    def test_table_coverage_required(self):
        spec = KernelSpec(1.0, 1.0)
        with pytest.raises(ValidationError):
            toeplitz_target(spec, 8, kernel_table(spec, 6))


class TestCirculantSurrogate:
    def test_eigenvalues_are_symbol_samples(self):
        spec = KernelSpec(1.5, 1.0)
        op = circulant_surrogate(spec, 16)
        freqs = frequency_grid(16, 1.0).freqs
        want = np.abs(freqs) ** 1.5
        assert np.allclose(op.eigenvalues.real, want, rtol=0.0, atol=1e-13)
        assert np.max(np.abs(op.eigenvalues.imag)) <= 1e-13

    def test_circulant_structure(self):
        op = circulant_surrogate(KernelSpec(0.8, 2.0), 8)
        col = op.entries[:, 0]
        for i in range(8):
            for j in range(8):
                assert op.entries[i, j] == col[(i - j) % 8]

    def test_symmetric(self):
        op = circulant_surrogate(KernelSpec(1.0, 1.0), 32)
        assert np.allclose(op.entries, op.entries.T, rtol=0.0, atol=1e-15)

    @settings(deadline=None, max_examples=25)
    @given(st.lists(st.floats(-1.0, 1.0), min_size=16, max_size=16))
    def test_apply_matches_dense(self, values):
        op = circulant_surrogate(KernelSpec(1.5, 1.0), 16)
        v = np.asarray(values)
        dense = op.entries @ v
        fast = op.apply(v)
        assert np.allclose(fast, dense, rtol=0.0, atol=1e-12 * max(1.0, np.max(np.abs(dense))))


class TestAliasing:
    @pytest.mark.parametrize("alpha", [1.0, 2.0])
    @pytest.mark.parametrize("N", [4, 8, 16])
    def test_difference_equals_image_sums(self, alpha, N):
        spec = KernelSpec(alpha, 1.0)
        diff = aliasing_difference(spec, N, kernel_table(spec, N - 1))
        for d in range(N):
            assert abs(diff.entries[d, 0] - images_zeta(alpha, d, N)) <= 1e-12

    def test_difference_matches_internal_image_sums(self):
        # fractional exponent: compare against the expansion-based sums,
        # inside their certified uncertainty plus float slack
        spec = KernelSpec(1.5, 1.0)
        N = 8
        diff = aliasing_difference(spec, N, kernel_table(spec, N - 1))
        for d in range(N):
            value, unc = image_sum(spec, d, N)
            assert abs(diff.entries[d, 0] - value) <= unc + 1e-12

    def test_geometry_and_meta(self):
        spec = KernelSpec(1.0, 1.0)
        diff = aliasing_difference(spec, 8, kernel_table(spec, 7))
        assert diff.geometry == "residual"
        assert diff.meta == (8, 8)


class TestPadCompress:
    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=12),
           st.integers(0, 20))
    def test_round_trip(self, values, extra):
        v = np.asarray(values)
        M = len(v) + extra
        assert np.array_equal(compress(pad(v, M), len(v)), v)

    def test_pad_preserves_norm(self):
        v = np.array([3.0, -4.0])
        assert np.linalg.norm(pad(v, 9)) == np.linalg.norm(v)

    def test_pad_validation(self):
        with pytest.raises(ValidationError):
            pad(np.zeros(4), 3)
        with pytest.raises(ValidationError):
            pad(np.zeros((2, 2)), 8)

    def test_compress_validation(self):
        with pytest.raises(ValidationError):
            compress(np.zeros(4), 5)
        with pytest.raises(ValidationError):
            compress(np.zeros((2, 2)), 2)


class TestCompressedOperator:
    def test_equals_surrogate_slice(self):
        spec = KernelSpec(1.5, 1.0)
        comp = compressed_operator(spec, 8, 16)
        full = circulant_surrogate(spec, 16)
        assert np.array_equal(comp.entries, full.entries[:8, :8])
        assert comp.meta == (8, 16)
        assert comp.geometry == "compressed"

    def test_large_period_column_route(self):
        # M beyond the dense cap: entries are c_d plus period-M images
        spec = KernelSpec(1.0, 1.0)
        N, M = 4, 8192
        table = kernel_table(spec, N - 1)
        comp = compressed_operator(spec, N, M)
        for d in range(N):
            want = table.coeff(d) + images_zeta(1.0, d, M)
            assert abs(comp.entries[d, 0] - want) <= 1e-12

    def test_toeplitz_structure(self):
        comp = compressed_operator(KernelSpec(0.5, 1.0), 8, 64)
        for i in range(8):
            for j in range(8):
                if i >= j:
                    # lower triangle gathers the stored column directly
                    assert comp.entries[i, j] == comp.entries[i - j, 0]
                else:
                    # the mirrored column index is equal only up to rounding
                    assert comp.entries[i, j] == pytest.approx(
                        comp.entries[j - i, 0], rel=1e-14, abs=1e-15)

    def test_validation(self):
        spec = KernelSpec(1.0, 1.0)
        with pytest.raises(ValidationError):
            compressed_operator(spec, 8, 8)  # needs M >= 2N
        with pytest.raises(ValidationError):
            compressed_operator(spec, 8, 24)  # not a power of two
        with pytest.raises(ResourceLimitError):
            compressed_operator(spec, 8, 2 ** 23)


class TestResidual:
    def test_definition(self):
        spec = KernelSpec(1.5, 1.0)
        table = kernel_table(spec, 7)
        E = residual(spec, 8, 32, table)
        want = compressed_operator(spec, 8, 32).entries \
            - toeplitz_target(spec, 8, table).entries
        assert np.array_equal(E.entries, want)
        assert E.geometry == "residual"
        assert E.meta == (8, 32)

    @pytest.mark.parametrize("alpha", [1.0, 2.0])
    def test_entries_are_image_sums(self, alpha):
        spec = KernelSpec(alpha, 1.0)
        N, M = 8, 32
        E = residual(spec, N, M, kernel_table(spec, N - 1))
        for d in range(N):
            want = images_zeta(alpha, d, M)
            assert abs(E.entries[d, 0] - want) <= 1e-12
            assert abs(E.entries[0, d] - want) <= 1e-12


class TestExactEmbedding:
    def test_generator_layout(self):
        spec = KernelSpec(1.3, 1.0)
        table = kernel_table(spec, 3)
        g = exact_embedding_generator(spec, 4, table)
        assert g.shape == (8,)
        assert np.array_equal(g[:4], table.coeffs[:4])
        assert g[4] == 0.0
        assert np.array_equal(g[5:], table.coeffs[3:0:-1])

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.0])
    @pytest.mark.parametrize("N", [2, 4, 8, 64])
    def test_leading_block_is_bit_exact(self, alpha, N):
        spec = KernelSpec(alpha, 1.0)
        table = kernel_table(spec, N - 1)
        big = circulant_from_generator(exact_embedding_generator(spec, N, table))
        target = toeplitz_target(spec, N, table)
        assert np.array_equal(big.entries[:N, :N], target.entries)

    def test_circulant_from_generator(self):
        g = np.array([1.0, 2.0, 3.0])
        op = circulant_from_generator(g)
        want = np.array([[1.0, 3.0, 2.0], [2.0, 1.0, 3.0], [3.0, 2.0, 1.0]])
        assert np.array_equal(op.entries, want)
        assert np.allclose(op.eigenvalues, np.fft.fft(g))

    def test_generator_validation(self):
        with pytest.raises(ValidationError):
            circulant_from_generator(np.array([]))
        with pytest.raises(ValidationError):
            circulant_from_generator(np.zeros((2, 2)))


class TestImageSum:
    def test_matches_brute_force(self):
        # alpha = 1, d = 1, period = 8: explicit closed-form sum to |l| = 1e5
        value, unc = image_sum(KernelSpec(1.0, 1.0), 1, 8)
        ls = np.arange(1, 10 ** 5 + 1)
        idx = np.concatenate([1 + 8 * ls, np.abs(1 - 8 * ls)])
        brute = float(np.sum(((-1.0) ** idx - 1.0) / (math.pi * idx ** 2)))
        # truncation of the brute sum leaves ~ 4/(pi * 8e5)
        assert abs(value - brute) <= unc + 2e-6

    def test_matches_zeta_closed_form(self):
        for alpha in (1.0, 2.0):
            for d in range(6):
                value, unc = image_sum(KernelSpec(alpha, 1.0), d, 16)
                assert abs(value - images_zeta(alpha, d, 16)) <= unc + 1e-12

    def test_closed_form_uncertainty_is_zero(self):
        # integer exponents take the closed-form route end to end
        for alpha in (1.0, 2.0):
            _, unc = image_sum(KernelSpec(alpha, 1.0), 3, 32)
            assert unc == 0.0

    def test_fractional_uncertainty_is_positive(self):
        _, unc = image_sum(KernelSpec(1.5, 1.0), 3, 32)
        assert unc > 0.0

    def test_validation(self):
        spec = KernelSpec(1.0, 1.0)
        with pytest.raises(ValidationError):
            image_sum(spec, 0, 7)
        with pytest.raises(ValidationError):
            image_sum(spec, 16, 16)


class TestKernelTable3D:
    def test_fold_matches_direct_triple_sum(self):
        # independent evaluation: explicit phase sums over the 32^3 grid
        spec = KernelSpec(1.5, 1.0)
        table3 = kernel_table_3d(spec, 1, n_ref=32)
        n = 32
        k = np.arange(n)
        kk = np.where(k < n // 2, k, k - n)
        xi = 2.0 * math.pi * kk / n
        f2 = xi ** 2
        sym = (f2[:, None, None] + f2[None, :, None] + f2[None, None, :]) ** (spec.alpha / 2.0)
        ph = 2.0 * math.pi * kk / n
        for a in (-1, 0, 1):
            for b in (-1, 0, 1):
                for c in (-1, 0, 1):
                    w = np.exp(1j * a * ph)[:, None, None] \
                        * np.exp(1j * b * ph)[None, :, None] \
                        * np.exp(1j * c * ph)[None, None, :]
                    want = complex(np.sum(sym * w) / n ** 3)
                    assert abs(want.imag) <= 1e-12
                    assert table3.coeff(a, b, c) == pytest.approx(want.real, abs=1e-12)

    def test_axis_support_at_two(self):
        # additive symbol: the 3D kernel lives on the coordinate axes and
        # its axis values equal the 1D fold of the squared frequencies
        spec = KernelSpec(2.0, 1.0)
        table3 = kernel_table_3d(spec, 2, n_ref=64)
        n = 64
        k = np.arange(n)
        kk = np.where(k < n // 2, k, k - n)
        xi = 2.0 * math.pi * kk / n
        ph = 2.0 * math.pi * kk / n

        def fold1(r):
            return float(np.sum(xi ** 2 * np.cos(r * ph)) / n)

        assert table3.coeff(0, 0, 0) == pytest.approx(3.0 * fold1(0), rel=1e-14)
        for r in (1, 2):
            assert table3.coeff(r, 0, 0) == pytest.approx(fold1(r), rel=1e-13)
            assert table3.coeff(0, r, 0) == pytest.approx(fold1(r), rel=1e-13)
        assert abs(table3.coeff(1, 1, 0)) <= 1e-12
        assert abs(table3.coeff(1, 1, 1)) <= 1e-12

    def test_fold_error_shrinks_with_reference_grid(self):
        spec = KernelSpec(1.0, 1.0)
        coarse = kernel_table_3d(spec, 1, n_ref=32)
        fine = kernel_table_3d(spec, 1, n_ref=64)
        assert fine.remainder_estimate < coarse.remainder_estimate

    def test_validation(self):
        spec = KernelSpec(1.5, 1.0)
        with pytest.raises(ValidationError):
            kernel_table_3d(spec, 20, n_ref=64)  # beyond n_ref/4
        with pytest.raises(ValidationError):
            kernel_table_3d(spec, 1, n_ref=48)
        table3 = kernel_table_3d(spec, 1, n_ref=32)
        with pytest.raises(ValidationError):
            table3.coeff(2, 0, 0)


class TestOperators3D:
    def test_target_entries_and_symmetry(self):
        spec = KernelSpec(1.5, 1.0)
        table3 = kernel_table_3d(spec, 1, n_ref=32)
        op = toeplitz_target_3d(spec, 2, table3)
        assert op.dim == 8
        assert np.array_equal(op.entries, op.entries.T)
        # x-major ordering: row index is kx*N^2 + ky*N + kz
        assert op.entries[0, 0] == table3.coeff(0, 0, 0)
        assert op.entries[4, 0] == table3.coeff(1, 0, 0)
        assert op.entries[1, 0] == table3.coeff(0, 0, 1)
        assert op.entries[5, 2] == table3.coeff(1, -1, 1)

    def test_surrogate_eigenvalues(self):
        spec = KernelSpec(1.0, 1.0)
        op = circulant_surrogate_3d(spec, 2)
        freqs = frequency_grid(2, 1.0).freqs
        f2 = freqs ** 2
        want = (f2[:, None, None] + f2[None, :, None] + f2[None, None, :]) ** 0.5
        got = np.sort(np.linalg.eigvalsh(op.entries))
        assert np.allclose(got, np.sort(want.ravel()), rtol=0.0,
                           atol=1e-12 * lambda_max_3d(spec))

    def test_residual_via_residue_lattice(self):
        # the M-periodic fold equals the reference fold summed over the
        # residue lattice, so compressed-minus-target entries follow from
        # the reference table alone; fold errors cancel between the sides
        spec = KernelSpec(1.5, 1.0)
        N, M = 2, 4
        n_ref = 64
        table3 = kernel_table_3d(spec, N - 1, n_ref=n_ref)
        E3 = residual_3d(spec, N, M, table3)
        ratio = n_ref // M
        folded = table3.fold.reshape(ratio, M, ratio, M, ratio, M).sum(axis=(0, 2, 4))

        def col_entry(dx, dy, dz):
            return folded[dx % M, dy % M, dz % M] - table3.coeff(dx, dy, dz)

        lam3 = lambda_max_3d(spec)
        for i in range(8):
            ix, iy, iz = i // 4, (i // 2) % 2, i % 2
            for j in range(8):
                jx, jy, jz = j // 4, (j // 2) % 2, j % 2
                want = col_entry(ix - jx, iy - jy, iz - jz)
                assert abs(E3.entries[i, j] - want) <= 1e-12 * lam3

    def test_caps(self):
        spec = KernelSpec(1.0, 1.0)
        with pytest.raises(ResourceLimitError):
            toeplitz_target_3d(spec, 16, kernel_table_3d(spec, 1))
        with pytest.raises(ResourceLimitError):
            compressed_operator_3d(spec, 2, 32)


class TestTailSum3D:
    def test_alpha_two_reduces_to_axes(self):
        from fraclap import tail_sum

        spec = KernelSpec(2.0, 1.0)
        table3 = kernel_table_3d(spec, 1, n_ref=64)
        value3, rem3 = tail_sum_3d(table3, 3)
        value1, rem1 = tail_sum(spec, 3, 10 ** 6)
        assert value3 == pytest.approx(3.0 * value1, rel=1e-14)
        assert rem3 == pytest.approx(3.0 * rem1, rel=1e-14)

    @pytest.mark.parametrize("alpha", [1.0, 1.5])
    def test_bound_covers_residual_norm(self, alpha):
        spec = KernelSpec(alpha, 1.0)
        N, M = 2, 4
        table3 = kernel_table_3d(spec, N - 1, n_ref=64)
        E3 = residual_3d(spec, N, M, table3)
        norm = float(np.linalg.norm(E3.entries, 2))
        value, estimate = tail_sum_3d(table3, M - N + 1)
        assert norm <= value + estimate

    def test_validation(self):
        table3 = kernel_table_3d(KernelSpec(1.5, 1.0), 1, n_ref=64)
        with pytest.raises(ValidationError):
            tail_sum_3d(table3, 0)
        with pytest.raises(ValidationError):
            tail_sum_3d(table3, 32)  # at or past n_ref/2
