import math

import numpy as np
import pytest

from eqkit.ea import certify_equiangular, triangular_equiangular
from eqkit.errors import (
    ComplexSpectrum,
    InvalidAlpha,
    MultiplicityUnsupported,
    NonRealRoots,
    NotSymmetric,
    WrongSpectrum,
)
from eqkit.factor import (
    alpha_real_root_bound,
    build_poly,
    elementary_symmetric,
    equiangular_eigenvectors,
    nonreal_root_certificate,
    schur_equiangular,
    sdst_coefficients,
    sdst_factor,
    two_eigenvalue_factor,
)
from eqkit.gram import GramParams, gram_matrix, gram_principal_sqrt
from eqkit.kernel import poly_roots


def _planted(n, alpha, eigvals, seed):
    """A = S diag(w) S^-1 with S = Q Shat, a known equiangular eigenbasis."""
    shat = triangular_equiangular(GramParams(n, alpha)).mat
    g = np.random.default_rng(seed).standard_normal((n, n))
    Q, r = np.linalg.qr(g)
    Q = Q * np.where(np.diag(r) < 0, -1.0, 1.0)
    S = Q @ shat
    return S @ np.diag(np.asarray(eigvals, dtype=float)) @ np.linalg.inv(S), S


# ---- polynomial machinery --------------------------------------------------


def test_elementary_symmetric():
    assert np.allclose(elementary_symmetric([1.0, 2.0, 3.0]), [1.0, 6.0, 11.0, 6.0])


def test_coefficients_at_zero_are_elementary():
    lam = [2.0, -1.0, 4.0, 0.5]
    assert np.allclose(sdst_coefficients(lam, 1e-15), elementary_symmetric(lam)[1:], atol=1e-10)


def test_coefficients_fixture_123():
    a = 0.3
    c = sdst_coefficients([1.0, 2.0, 3.0], a)
    assert np.allclose(c, [6.0, 11.0 / (1 - a * a), 6.0 / ((1 - a) ** 2 * (1 + 2 * a))])


def test_coefficients_equal_values_binomial():
    n, r, a = 5, 2.0, 0.4
    c = sdst_coefficients([r] * n, a)
    want = [math.comb(n, k) * r**k / ((1 - a) ** (k - 1) * (1 + (k - 1) * a)) for k in range(1, n + 1)]
    assert np.allclose(c, want)


def test_coefficients_alpha_range():
    with pytest.raises(InvalidAlpha):
        sdst_coefficients([1.0, 2.0], 1.0)
    with pytest.raises(InvalidAlpha):
        sdst_coefficients([1.0, 2.0], -0.2)


def test_build_poly_g2_fixture():
    p = build_poly([1.0, 1.0], 0.5)
    assert np.allclose(p.coeffs, [1.0, -2.0, 4.0 / 3.0])


def test_build_poly_alternating_signs():
    p = build_poly([1.0, 2.0, 3.0, 4.0], 0.1)
    signs = np.sign(p.coeffs)
    assert np.array_equal(signs, [1.0, -1.0, 1.0, -1.0, 1.0])


def test_build_poly_roots_evaluate_to_zero():
    p = build_poly([1.0, 2.0, 3.0], 0.1)
    for root in poly_roots(p.coeffs):
        assert abs(np.polyval(p.coeffs, root)) <= 1e-8


def test_coefficient_chain_against_determinant():
    # char poly of diag(d) G_alpha must be build_poly of its spectrum
    rng = np.random.default_rng(17)
    for n, alpha in [(3, 0.2), (5, 0.45)]:
        d = np.sort(rng.uniform(0.5, 3.0, n))
        lam = np.linalg.eigvals(np.diag(d) @ gram_matrix(GramParams(n, alpha)))
        assert np.abs(lam.imag).max() <= 1e-10
        p = build_poly(np.sort(lam.real), alpha)
        xs = np.linspace(-1.0, 4.0, 2 * n + 1)
        direct = [np.prod(x - d) for x in xs]
        assert np.abs(np.polyval(p.coeffs, xs) - direct).max() <= 1e-6


def test_nonreal_certificate_g2():
    assert nonreal_root_certificate(build_poly([1.0, 1.0], 0.5)) == 2


def test_nonreal_certificate_zero_alpha():
    assert nonreal_root_certificate(build_poly([1.0, 2.0, 3.0], 1e-15)) == 0


def test_nonreal_sweep_equal_values():
    for n in range(4, 9):
        for a in (0.1, 0.5, 0.9):
            assert nonreal_root_certificate(build_poly([1.0] * n, a)) >= 2


# ---- alpha_real_root_bound -------------------------------------------------


def test_bound_fixture_123():
    assert abs(alpha_real_root_bound([1.0, 2.0, 3.0]) - 0.1843) <= 5e-3


def test_bound_collapses_for_repeats():
    assert alpha_real_root_bound([1.0, 1.0, 2.0]) <= 1e-4


def test_bound_monotone_in_spread():
    wide = alpha_real_root_bound([1.0, 10.0, 100.0])
    tight = alpha_real_root_bound([1.0, 1.1, 1.2])
    assert abs(wide - 0.81342) <= 5e-4
    assert abs(tight - 0.03643) <= 5e-4
    assert wide > tight


# ---- two_eigenvalue_factor -------------------------------------------------


def test_two_eigenvalue_direct_case():
    r, S = two_eigenvalue_factor(np.diag([1.0, 1.0, 2.0]))
    assert abs(r - 4.0 / 3.0) <= 1e-12
    assert abs(S.alpha - 0.25) <= 1e-12
    assert np.abs(S.mat[2] - math.sqrt(0.5)).max() <= 1e-12
    assert np.linalg.norm(r * (S.mat @ S.mat.T) - np.diag([1.0, 1.0, 2.0]), 2) <= 1e-10


def test_two_eigenvalue_inverse_case():
    A = np.diag([2.0, 2.0, 1.0])
    r, S = two_eigenvalue_factor(A)
    assert r == pytest.approx(5.0 / 3.0, abs=1e-12)
    assert S.alpha == pytest.approx(-0.2, abs=1e-12)
    assert np.linalg.norm(r * (S.mat @ S.mat.T) - A, 2) <= 1e-10


def test_two_eigenvalue_negative_spectrum():
    A = np.diag([-1.0, -1.0, -2.0])
    r, S = two_eigenvalue_factor(A)
    assert r < 0
    assert np.linalg.norm(r * (S.mat @ S.mat.T) - A, 2) <= 1e-10


def test_two_eigenvalue_rotated_input(rng):
    g = rng.standard_normal((5, 5))
    Q, _ = np.linalg.qr(g)
    A = Q @ np.diag([3.0, 3.0, 3.0, 3.0, 7.0]) @ Q.T
    r, S = two_eigenvalue_factor(A)
    assert np.linalg.norm(r * (S.mat @ S.mat.T) - A, 2) <= 1e-8 * np.linalg.norm(A, 2)
    assert certify_equiangular(S, tol=1e-8) == pytest.approx(S.alpha, abs=1e-8)


@pytest.mark.parametrize(
    "diag",
    [
        [3.0, 3.0, 3.0],       # one distinct value
        [1.0, 1.0, -2.0],      # mixed signs
        [1.0, 2.0, 3.0],       # three distinct values
        [0.0, 1.0, 1.0],       # singular
        [1.0, 1.0, 2.0, 2.0],  # (2,2) multiplicities
    ],
)
def test_two_eigenvalue_rejections(diag):
    with pytest.raises(WrongSpectrum):
        two_eigenvalue_factor(np.diag(diag))


# ---- sdst_factor -----------------------------------------------------------


def test_sdst_fixture_123():
    A = np.diag([1.0, 2.0, 3.0])
    f = sdst_factor(A, 0.1)
    assert f.residual <= 1e-8
    assert abs(f.D.sum() - 6.0) <= 1e-10
    assert np.linalg.norm(f.S.mat @ np.diag(f.D) @ f.S.mat.T - A, 2) <= 1e-8
    assert certify_equiangular(f.S, tol=1e-8) == pytest.approx(0.1, abs=1e-8)


def test_sdst_routes_two_value_spectrum_to_closed_form():
    with pytest.raises(MultiplicityUnsupported, match="two_eigenvalue_factor"):
        sdst_factor(np.diag([1.0, 1.0, 2.0]), 0.2)


def test_sdst_rejects_scaled_identity():
    for a in (0.1, 0.5, 0.9):
        with pytest.raises(NonRealRoots):
            sdst_factor(3.0 * np.eye(4), a)


def test_sdst_rejects_zero_one_one():
    with pytest.raises((NonRealRoots, MultiplicityUnsupported)):
        sdst_factor(np.diag([0.0, 1.0, 1.0]), 0.3)


def test_sdst_zero_eigenvalues_extension(rng):
    # up to n-2 zeros ride along via the EA block extension
    g = rng.standard_normal((5, 5))
    Q, _ = np.linalg.qr(g)
    A = Q @ np.diag([0.0, 0.0, 1.0, 2.0, 3.5]) @ Q.T
    f = sdst_factor(A, 0.12)
    assert f.residual <= 1e-8 * np.linalg.norm(A, 2)
    assert np.sort(f.D)[:2] == pytest.approx([0.0, 0.0], abs=1e-9)
    assert certify_equiangular(f.S, tol=1e-8) is not None


def test_sdst_too_many_zeros():
    with pytest.raises(MultiplicityUnsupported):
        sdst_factor(np.diag([0.0, 0.0, 1.0]), 0.1)


def test_sdst_alpha_validation():
    with pytest.raises(InvalidAlpha):
        sdst_factor(np.diag([1.0, 2.0]), 0.0)
    with pytest.raises(InvalidAlpha):
        sdst_factor(np.diag([1.0, 2.0]), -0.3)


def test_sdst_needs_symmetry():
    with pytest.raises(NotSymmetric):
        sdst_factor(np.array([[1.0, 1.0], [0.0, 2.0]]), 0.1)


def test_sdst_random_distinct_spectra(rng):
    done = 0
    while done < 8:
        n = int(rng.integers(3, 7))
        lam = np.sort(rng.uniform(0.5, 4.0, n))
        if np.min(np.diff(lam)) < 0.2:
            continue
        g = rng.standard_normal((n, n))
        Q, _ = np.linalg.qr(g)
        A = Q @ np.diag(lam) @ Q.T
        alpha = min(0.05, 0.5 * alpha_real_root_bound(lam))
        f = sdst_factor(A, alpha)
        assert f.residual <= 1e-7 * np.linalg.norm(A, 2)
        assert abs(f.D.sum() - lam.sum()) <= 1e-8
        done += 1


def test_counterexample_spectra_have_no_real_factorization():
    # k equal values with 2 <= k <= n-2: polynomial goes complex or the
    # reconstructed spectrum misses the target; sdst_factor refuses either way
    rng = np.random.default_rng(3)
    for n in (4, 5, 6):
        for k in range(2, n - 1):
            rest = list(2.0 + np.arange(n - k))
            lam = np.array([1.0] * k + rest)
            for a in (0.05, 0.1, 0.2):
                with pytest.raises((NonRealRoots, MultiplicityUnsupported)):
                    sdst_factor(np.diag(lam), a)
                p = build_poly(lam, a)
                roots = poly_roots(p.coeffs)
                if np.any(roots.imag != 0.0):
                    continue
                _, sbar = gram_principal_sqrt(GramParams(n, a))
                M = sbar @ np.diag(np.sort(roots.real)) @ sbar
                mu = np.sort(np.linalg.eigvalsh(M))
                assert np.abs(mu - np.sort(lam)).max() > 1e-7


# ---- similarity forms ------------------------------------------------------


def test_schur_equiangular_round_trip(rng):
    A = rng.standard_normal((6, 6))
    S, T = schur_equiangular(A, 0.3)
    inv = np.linalg.inv(S.mat)
    assert np.linalg.norm(S.mat @ T @ inv - A, 2) <= 1e-8 * np.linalg.norm(A, 2)
    # quasi-triangular: nothing below the first subdiagonal
    assert np.allclose(np.tril(T, -2), 0.0)


def test_schur_equiangular_symmetric_is_triangular(rng):
    lam = [1.0, 4.0, 9.0]
    g = rng.standard_normal((3, 3))
    Q, _ = np.linalg.qr(g)
    A = Q @ np.diag(lam) @ Q.T
    S, T = schur_equiangular(A, 0.25)
    assert np.allclose(np.tril(T, -1), 0.0)
    assert np.allclose(np.sort(np.diag(T)), lam, atol=1e-9)


def test_schur_equiangular_keeps_rotation_block():
    A = np.array([[0.0, -2.0], [2.0, 0.0]])
    S, T = schur_equiangular(A, 0.4)
    assert abs(T[1, 0]) > 1e-6  # the complex pair's 2x2 block survives
    assert np.linalg.norm(S.mat @ T @ np.linalg.inv(S.mat) - A, 2) <= 1e-8


def test_eigenvector_recovery_round_trip():
    for n, seed in [(3, 0), (4, 1), (6, 2)]:
        A, _ = _planted(n, 0.4, np.arange(1.0, n + 1.0), seed)
        out = equiangular_eigenvectors(A)
        assert out is not None
        alpha, V = out
        assert abs(alpha - 0.4) <= 1e-6
        w = np.arange(1.0, n + 1.0)
        for i in range(n):
            assert np.linalg.norm(A @ V.mat[:, i] - w[i] * V.mat[:, i]) <= 1e-7 * n
        assert certify_equiangular(V, tol=1e-6) is not None


def test_eigenvector_recovery_other_alpha():
    A, _ = _planted(5, 0.15, [2.0, 3.0, 5.0, 7.0, 11.0], 4)
    out = equiangular_eigenvectors(A)
    assert out is not None and abs(out[0] - 0.15) <= 1e-6


def test_symmetric_matrix_has_no_equiangular_eigenbasis(rng):
    g = rng.standard_normal((4, 4))
    Q, _ = np.linalg.qr(g)
    A = Q @ np.diag([1.0, 2.0, 3.0, 4.0]) @ Q.T
    assert equiangular_eigenvectors(A) is None


def test_scalar_matrix_branch():
    out = equiangular_eigenvectors(3.0 * np.eye(4))
    assert out is not None
    alpha, V = out
    assert alpha == 0.5
    assert certify_equiangular(V, tol=1e-10) == pytest.approx(0.5, abs=1e-10)


def test_complex_spectrum_rejected():
    with pytest.raises(ComplexSpectrum):
        equiangular_eigenvectors(np.array([[0.0, -1.0], [1.0, 0.0]]))
