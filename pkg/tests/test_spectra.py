import numpy as np
import pytest

from ptreal import (
    ClosureError,
    PotentialSpec,
    char_poly,
    classify_spectrum,
    convergence_sweep,
    eigenvalues_real,
    hamiltonian_matrix,
    hessenberg,
    phase_unitary,
    polynomial_roots,
    realify,
    sweep_to_csv,
)
from oracle_utils import greedy_match_distance, random_a_symmetric

SHIFTED = PotentialSpec(((2, 1 + 0j), (1, 2j)))
CUBIC = PotentialSpec(((3, 1j),))
HARMONIC = PotentialSpec(((2, 1 + 0j),))


class TestHessenberg:
    def test_two_by_two_unchanged(self):
        m = np.array([[1.0, 2.0], [3.0, 4.0]])
        h, q = hessenberg(m)
        assert np.array_equal(h, m)
        assert np.array_equal(q, np.eye(2))

    def test_diagonal_unchanged(self):
        m = np.diag([1.0, 3.0, 5.0])
        h, q = hessenberg(m)
        assert np.array_equal(h, m)

    def test_reconstruction_random(self):
        rng = np.random.default_rng(51)
        for n in (3, 8, 20):
            m = rng.standard_normal((n, n))
            h, q = hessenberg(m)
            scale = np.max(np.abs(m))
            assert np.max(np.abs(q @ h @ q.T - m)) <= 1e-12 * scale
            assert np.max(np.abs(q @ q.T - np.eye(n))) <= 1e-13
            assert np.all(np.abs(np.tril(h, -2)) == 0.0)


class TestEigenvaluesReal:
    def test_rotation_matrix(self):
        eigs, _ = eigenvalues_real(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert np.allclose(eigs, [-1j, 1j], atol=1e-15)

    def test_companion_matrix(self):
        # companion of z^2 - 3z + 2, roots {1, 2}
        eigs, _ = eigenvalues_real(np.array([[0.0, -2.0], [1.0, 3.0]]))
        assert np.allclose(eigs, [1.0, 2.0], atol=1e-12)

    def test_broken_phase_two_by_two(self):
        eigs, _ = eigenvalues_real(np.array([[0.5, -1.0], [1.0, -0.5]]))
        root = 0.8660254037844386  # sqrt(3)/2, closed form
        assert np.allclose(eigs, [-1j * root, 1j * root], atol=1e-14)

    def test_shifted_oscillator_levels(self):
        h = hamiltonian_matrix(SHIFTED, 40)
        eigs, _ = eigenvalues_real(realify(h, phase_unitary(40)).entries)
        lowest = sorted(eigs, key=lambda z: (abs(z.real), z.imag))[:5]
        assert np.allclose(lowest, [2.0, 4.0, 6.0, 8.0, 10.0], atol=1e-6)

    def test_exact_conjugate_pairs(self):
        rng = np.random.default_rng(52)
        m = rng.standard_normal((24, 24))
        eigs, _ = eigenvalues_real(m)
        complexes = [z for z in eigs if z.imag != 0.0]
        assert len(complexes) % 2 == 0
        remaining = list(complexes)
        while remaining:
            z = remaining.pop(0)
            assert np.conj(z) in remaining
            remaining.remove(np.conj(z))

    def test_backward_error_random(self):
        rng = np.random.default_rng(53)
        for n in (2, 5, 17, 64, 128):
            m = rng.standard_normal((n, n))
            _, backward = eigenvalues_real(m)
            assert backward <= 1e-10 * np.max(np.abs(m))

    def test_ordering_deterministic(self):
        rng = np.random.default_rng(54)
        m = rng.standard_normal((12, 12))
        first, _ = eigenvalues_real(m)
        second, _ = eigenvalues_real(m.copy())
        assert np.array_equal(first, second)
        keys = [(z.real, z.imag) for z in first]
        assert keys == sorted(keys)

    def test_rejects_complex(self):
        with pytest.raises(TypeError, match="real"):
            eigenvalues_real(np.eye(3, dtype=complex))

    def test_rejects_non_finite(self):
        m = np.zeros((3, 3))
        m[0, 0] = np.nan
        with pytest.raises(ValueError):
            eigenvalues_real(m)

    def test_size_cap(self):
        with pytest.raises(ValueError, match="1024"):
            eigenvalues_real(np.zeros((1025, 1025)))

    def test_one_by_one(self):
        eigs, backward = eigenvalues_real(np.array([[4.25]]))
        assert eigs[0] == 4.25
        assert backward == 0.0


class TestOracleEquivalence:
    def test_qr_matches_char_poly_roots(self):
        rng = np.random.default_rng(55)
        for _ in range(25):
            n = int(rng.integers(2, 13))
            h = random_a_symmetric(rng, n)
            eigs, _ = eigenvalues_real(realify(h, phase_unitary(n)).entries)
            roots = polynomial_roots(char_poly(h))
            assert greedy_match_distance(eigs, roots) <= 1e-8

    def test_small_hamiltonians(self):
        # N = 12 puts the spectral radius near 24 and the char-poly root
        # conditioning right at 1e-8; stay at N <= 10 for a clean margin
        for spec in (SHIFTED, CUBIC):
            for n in (4, 8, 10):
                h = hamiltonian_matrix(spec, n)
                eigs, _ = eigenvalues_real(realify(h, phase_unitary(n)).entries)
                roots = polynomial_roots(char_poly(h))
                assert greedy_match_distance(eigs, roots) <= 1e-8


class TestPolynomialRoots:
    def test_known_cubic(self):
        # (z - 1)(z - (2+i))(z - (2-i)) = z^3 - 5 z^2 + 9 z - 5
        roots = polynomial_roots([1.0, -5.0, 9.0, -5.0])
        assert greedy_match_distance(roots, [1.0, 2 + 1j, 2 - 1j]) <= 1e-12

    def test_linear(self):
        assert polynomial_roots([2.0, -4.0])[0] == pytest.approx(2.0)

    def test_leading_zero_rejected(self):
        with pytest.raises(ValueError):
            polynomial_roots([0.0, 1.0, 2.0])


class TestClassify:
    def test_all_real(self):
        report = classify_spectrum([2.0, 4.0], 1e-8)
        assert report.real_set == (2.0, 4.0)
        assert report.pairs == ()

    def test_tiny_imaginary_counts_as_real(self):
        report = classify_spectrum([1.0 + 1e-12j], 1e-8)
        assert report.real_set == (1.0,)

    def test_pair_plus_real(self):
        report = classify_spectrum([0.866j, -0.866j, 3.0], 1e-8)
        assert report.real_set == (3.0,)
        assert report.pairs == ((0.866j, -0.866j),)

    def test_positive_imaginary_listed_first(self):
        report = classify_spectrum([-1j, 1j], 1e-8)
        assert report.pairs[0][0].imag > 0

    def test_unpaired_raises(self):
        with pytest.raises(ClosureError):
            classify_spectrum([1j, 5.0], 1e-8)

    def test_mismatched_pair_raises(self):
        with pytest.raises(ClosureError):
            classify_spectrum([1 + 1j, 2 - 1j], 1e-8)

    def test_tolerance_validated(self):
        with pytest.raises(ValueError):
            classify_spectrum([1.0], 0.0)

    def test_every_eigenvalue_in_one_bucket(self):
        rng = np.random.default_rng(56)
        for _ in range(10):
            n = int(rng.integers(2, 17))
            h = random_a_symmetric(rng, n)
            eigs, backward = eigenvalues_real(realify(h, phase_unitary(n)).entries)
            report = classify_spectrum(eigs, backward_error=backward)
            assert len(report.real_set) + 2 * len(report.pairs) == n
            scale = max(1.0, max(abs(z) for z in report.eigenvalues))
            for plus, minus in report.pairs:
                assert abs(plus - np.conj(minus)) <= report.tol_classify * scale

    def test_report_metadata(self):
        report = classify_spectrum([1.0, 2.0], 1e-8, backward_error=3e-15, n_basis=7)
        assert report.backward_error == 3e-15
        assert report.n_basis == 7


class TestUnbrokenPhaseRegression:
    def test_cubic_stable_levels_all_real(self):
        from oracle_utils import stable_levels

        spectra = {}
        for n in (32, 48, 64):
            h = hamiltonian_matrix(CUBIC, n)
            eigs, _ = eigenvalues_real(realify(h, phase_unitary(n)).entries)
            spectra[n] = eigs
        for small, big in ((32, 48), (48, 64)):
            stable = stable_levels(spectra[small], spectra[big], 1e-4)[:8]
            assert len(stable) >= 3
            scale = max(1.0, max(abs(z) for z in spectra[big]))
            for z in stable:
                assert abs(z.imag) <= 1e-8 * scale


class TestConvergenceSweep:
    def test_harmonic_levels_exact(self):
        rows = convergence_sweep(HARMONIC, [8, 16], 3)
        assert len(rows) == 6
        by_n = {}
        for row in rows:
            by_n.setdefault(row.n_basis, []).append(row)
        for n, group in by_n.items():
            assert [r.level for r in group] == [0, 1, 2]
            assert np.allclose([r.value for r in group], [1.0, 3.0, 5.0], atol=1e-10)
        assert all(r.cauchy_diff is None for r in by_n[8])
        assert all(r.cauchy_diff <= 1e-10 for r in by_n[16])

    def test_cubic_ground_state(self):
        rows = convergence_sweep(CUBIC, [32, 64], 1)
        final = rows[-1]
        assert final.cauchy_diff <= 1e-6  # measured 2.9e-7 with exact matrix elements
        assert final.value.real == pytest.approx(1.156267072, abs=1e-6)

    def test_shifted_oscillator_ground_state(self):
        rows = convergence_sweep(SHIFTED, [20, 40], 1)
        assert rows[-1].value.real == pytest.approx(2.0, abs=1e-8)
        assert rows[-1].cauchy_diff <= 1e-8

    def test_validation(self):
        with pytest.raises(ValueError, match="ascending"):
            convergence_sweep(HARMONIC, [16, 8], 1)
        with pytest.raises(ValueError, match="m_track"):
            convergence_sweep(HARMONIC, [8, 16], 9)
        with pytest.raises(ValueError):
            convergence_sweep(HARMONIC, [], 1)

    def test_csv_format(self):
        rows = convergence_sweep(HARMONIC, [4, 8], 2)
        text = sweep_to_csv(rows)
        lines = text.strip().split("\n")
        assert lines[0] == "N,level,re,im,cauchy_diff"
        assert len(lines) == 5
        assert lines[1].startswith("4,0,")
        assert lines[1].endswith(",")  # no previous size: empty diff field
