"""Incremental construction of equiangular vector systems.

Given independent input vectors a_1, ..., a_m and a target angle theta, the
construction produces unit vectors s_1, ..., s_m whose pairwise inner
products all equal cos(theta), with span(s_1..s_k) = span(a_1..a_k) for
every prefix.  Each new vector is a blend of the direction orthogonal to
the current span and the normalized running sum of the existing vectors:

    s_{k+1} ~ q_{k+1} + gamma_k * (s_1 + ... + s_k) / ||s_1 + ... + s_k||

with gamma_k = alpha * sqrt(k / ((1 - alpha) (1 + k alpha))), alpha being
the target cosine.  The same expression covers acute and obtuse angles
(gamma flips sign with alpha); an obtuse angle is feasible for a (k+1)-th
vector only while alpha > -1/k.

Factoring A = S R with S equiangular and R upper triangular with positive
diagonal is the resulting analogue of QR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateAngle,
    InvalidAlpha,
    InvalidAngle,
    NotSquare,
    RankDeficient,
)
from .gram import BOUNDARY_TOL, GramParams, gram_inverse, gram_principal_sqrt, gram_sqrt_inverse
from .kernel import RANK_RTOL, as_matrix

# 1 + k*alpha at or below this margin means the obtuse angle is too wide.
DEGENERATE_TOL = 1e-12


@dataclass
class EquiangularMatrix:
    """Matrix whose unit columns share the pairwise cosine ``alpha``."""

    mat: np.ndarray
    alpha: float
    cert_tol: float = 1e-9


@dataclass
class SRDecomposition:
    S: EquiangularMatrix
    R: np.ndarray
    residual: float = field(default=0.0)


def _orthonormal_basis(S: np.ndarray) -> np.ndarray:
    if S.shape[1] == 0:
        return S
    q, _ = np.linalg.qr(S)
    return q


def _orth_step(basis: np.ndarray, a: np.ndarray):
    """Component of ``a`` orthogonal to the orthonormal columns of ``basis``.

    One projection plus one reorthogonalization pass; returns (q, rho) with
    q unit and rho the residual norm before normalization.
    """
    r = a.astype(float, copy=True)
    if basis.shape[1]:
        r -= basis @ (basis.T @ r)
        r -= basis @ (basis.T @ r)
    rho = float(np.linalg.norm(r))
    if rho <= RANK_RTOL * max(float(np.linalg.norm(a)), np.finfo(float).tiny):
        raise RankDeficient("next vector lies in the span of the current system")
    return r / rho, rho


def _blend(S: np.ndarray, q: np.ndarray, alpha: float) -> np.ndarray:
    """Mix the orthogonal direction q with the running sum of S's columns."""
    k = S.shape[1]
    if k == 0:
        return q
    gamma = alpha * math.sqrt(k / ((1.0 - alpha) * (1.0 + k * alpha)))
    wsum = S.sum(axis=1)
    # ||sum of k unit vectors at cosine alpha|| has a closed form.
    wnorm = math.sqrt(k * (1.0 + (k - 1) * alpha))
    v = q + (gamma / wnorm) * wsum
    return v / np.linalg.norm(v)


def next_equiangular(S_k: EquiangularMatrix, a_next, theta: float) -> np.ndarray:
    """Extend an acute equiangular system by one vector.

    Parameters
    ----------
    S_k : EquiangularMatrix
        Existing system (may have zero columns).
    a_next : vector
        Direction to absorb; must be independent of the current span.
    theta : float
        Common angle in radians, in (0, pi/2].  theta = pi/2 degenerates to
        plain Gram-Schmidt.
    """
    if not 0.0 < theta <= math.pi / 2 + 1e-12:
        raise InvalidAngle(f"acute construction needs theta in (0, pi/2], got {theta!r}")
    S = as_matrix(S_k.mat)
    a = np.asarray(a_next, dtype=float).ravel()
    q, _ = _orth_step(_orthonormal_basis(S), a)
    return _blend(S, q, max(math.cos(theta), 0.0))


def next_equiangular_obtuse(S_k: EquiangularMatrix, a_next, theta: float) -> np.ndarray:
    """Extend an obtuse equiangular system by one vector.

    theta must lie in (pi/2, pi); adding a (k+1)-th vector is only possible
    while cos(theta) > -1/k, otherwise DegenerateAngle is raised.
    """
    if not math.pi / 2 < theta < math.pi:
        raise InvalidAngle(f"obtuse construction needs theta in (pi/2, pi), got {theta!r}")
    alpha = math.cos(theta)
    S = as_matrix(S_k.mat)
    k = S.shape[1]
    if k >= 1 and 1.0 + k * alpha <= DEGENERATE_TOL:
        raise DegenerateAngle(
            f"cos(theta)={alpha:.6g} <= -1/{k}: no unit vector can extend {k} vectors"
        )
    a = np.asarray(a_next, dtype=float).ravel()
    q, _ = _orth_step(_orthonormal_basis(S), a)
    return _blend(S, q, alpha)


def sr_decompose(A, theta: float) -> SRDecomposition:
    """Factor A = S R with S equiangular at cos(theta) and R upper triangular.

    Parameters
    ----------
    A : (n, m) array_like with independent columns, n >= m.
    theta : float
        Angle in radians; cos(theta) must lie in (-1/(m-1), 1).

    Returns
    -------
    SRDecomposition with diag(R) > 0 and the recomputed residual ||A - S R||.
    """
    A = as_matrix(A)
    n, m = A.shape
    if n < m:
        raise RankDeficient(f"{m} columns cannot be independent in dimension {n}")
    if m == 0:
        return SRDecomposition(EquiangularMatrix(A.copy(), math.cos(theta)), np.zeros((0, 0)))
    alpha = math.cos(theta)
    if abs(alpha) < 1e-15:
        alpha = 0.0  # theta = pi/2 routes to plain QR
    if m >= 2 and not (-1.0 / (m - 1) + BOUNDARY_TOL < alpha < 1.0 - BOUNDARY_TOL):
        raise InvalidAngle(
            f"cos(theta)={alpha:.6g} outside (-1/{m - 1}, 1) for {m} columns"
        )

    S = np.empty((n, m))
    basis = np.empty((n, m))
    norm0 = float(np.linalg.norm(A[:, 0]))
    if norm0 <= RANK_RTOL:
        raise RankDeficient("first column is zero")
    basis[:, 0] = A[:, 0] / norm0
    S[:, 0] = basis[:, 0]
    for k in range(1, m):
        q, _ = _orth_step(basis[:, :k], A[:, k])
        basis[:, k] = q
        S[:, k] = _blend(S[:, :k], q, alpha)

    # R solves S R = A in the least-squares sense; with the closed-form Gram
    # inverse this is O(n m^2) and exact up to roundoff for consistent input.
    if m >= 2:
        R = gram_inverse(GramParams(m, alpha)) @ (S.T @ A)
    else:
        R = (S.T @ A) / float(S[:, 0] @ S[:, 0])
    R = np.triu(R)  # strictly-lower entries are pure roundoff
    residual = float(np.linalg.norm(A - S @ R, 2))
    return SRDecomposition(EquiangularMatrix(S, alpha), R, residual)


def triangular_equiangular(p: GramParams) -> EquiangularMatrix:
    """Upper triangular equiangular system with positive diagonal.

    Row i has a diagonal entry d_i and a single repeated value o_i in all
    later columns:

        d_1 = 1,   o_i = d_i - (1 - alpha) / d_i,
        d_i = sqrt(1 - sum_{j<i} o_j^2).

    This is the unique upper triangular member of the family (it is the
    transposed Cholesky factor of the Gram matrix).  Requires 0 <= alpha < 1;
    alpha = 0 yields the identity.
    """
    if p.alpha < 0.0:
        raise InvalidAlpha("triangular construction requires alpha >= 0")
    n, a = p.n, p.alpha
    m = np.zeros((n, n))
    sumsq = 0.0
    for i in range(n):
        d = math.sqrt(1.0 - sumsq)
        o = d - (1.0 - a) / d
        m[i, i] = d
        m[i, i + 1 :] = o
        sumsq += o * o
    return EquiangularMatrix(m, a)


def certify_equiangular(M, tol: float = 1e-8):
    """Return the common pairwise cosine of M's columns, or None.

    Checks that every column is unit and every off-diagonal Gram entry sits
    within ``tol`` of their mean.  A single column certifies with alpha 0.
    """
    M = as_matrix(getattr(M, "mat", M))
    m = M.shape[1]
    if m == 0:
        return None
    G = M.T @ M
    if float(np.max(np.abs(np.diag(G) - 1.0))) > tol:
        return None
    if m == 1:
        return 0.0
    off = G[~np.eye(m, dtype=bool)]
    mean = float(off.mean())
    if float(np.max(np.abs(off - mean))) > tol:
        return None
    return mean


def polar_orthogonal_factor(S: EquiangularMatrix) -> np.ndarray:
    """Orthogonal factor Q of the polar-style splitting S = Q * sqrt(Gram).

    Right-multiplying by the closed-form inverse principal root peels the
    equiangular correlation off and leaves an orthogonal matrix.
    """
    M = as_matrix(S.mat)
    if M.shape[0] != M.shape[1]:
        raise NotSquare("polar splitting is defined for square systems")
    return M @ gram_sqrt_inverse(GramParams(M.shape[0], S.alpha))


def random_equiangular(n: int, alpha: float, rng=None, m: int | None = None) -> EquiangularMatrix:
    """Random equiangular system: Haar orthonormal columns times the principal Gram root."""
    rng = np.random.default_rng(rng)
    m = n if m is None else m
    g = rng.standard_normal((n, m))
    q, r = np.linalg.qr(g)
    q = q * np.where(np.diag(r) < 0, -1.0, 1.0)
    _, sbar = gram_principal_sqrt(GramParams(m, alpha))
    return EquiangularMatrix(q @ sbar, float(alpha))
