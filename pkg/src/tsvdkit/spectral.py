"""Mode-3 DFT of real tensors and a complex one-sided Jacobi SVD.

The forward transform is the unnormalized DFT along tubes (third axis); the
inverse carries the 1/p factor.  Transforms of real tensors are conjugate
symmetric along the third axis: slice p - k is the conjugate of slice k and
slice 0 (plus slice p/2 for even p) is real.
"""

import math
import os
from dataclasses import dataclass

import numpy as np

from .core import as_tensor

__all__ = [
    "dft_mode3",
    "idft_mode3",
    "complex_svd",
    "SliceSvd",
    "SvdConvergenceError",
    "set_max_workers",
    "get_max_workers",
]

# Inverse transforms of conjugate-symmetric data are real up to roundoff; any
# larger imaginary residue means the symmetry was broken upstream.
IMAG_RESIDUE_TOL = 1e-8

# Jacobi sweeps stop once every column pair is orthogonal to PAIR_TOL relative
# to the column norms, which bounds the off-diagonal Gram mass by
# PAIR_TOL * ||input||_F^2.
PAIR_TOL = 1e-14
MAX_SWEEPS = 60

_max_workers = 1


def set_max_workers(n):
    """Cap the worker threads used for independent per-slice factorizations.

    ``n = 0`` selects the CPU count.  Results are identical for any setting;
    this only affects wall-clock time.
    """
    n = int(n)
    if n < 0:
        raise ValueError(f"worker count must be >= 0, got {n}")
    global _max_workers
    _max_workers = n if n > 0 else (os.cpu_count() or 1)


def get_max_workers():
    return _max_workers


def dft_mode3(a):
    """Forward DFT along tubes: slice k holds sum_l w**(k*l) * a[:, :, l].

    The kernel is w = exp(-2j*pi/p), unnormalized, so slice 0 is the sum of
    the frontal slices.
    """
    return np.fft.fft(as_tensor(a), axis=2)


def idft_mode3(d, residue_tol=IMAG_RESIDUE_TOL):
    """Inverse DFT along tubes of a conjugate-symmetric complex array.

    Returns the real part after checking that every entry's imaginary residue
    is at most ``residue_tol * (1 + max modulus)``; a larger residue raises
    ValueError because the input cannot be the transform of a real tensor.
    """
    d = np.asarray(d, dtype=complex)
    if d.ndim != 3:
        raise ValueError(f"expected a third-order spectrum, got {d.ndim} axes")
    x = np.fft.ifft(d, axis=2)
    scale = 1.0 + np.abs(x).max()
    residue = np.abs(x.imag).max()
    if residue > residue_tol * scale:
        raise ValueError(
            f"inverse transform is not real: imaginary residue {residue:.3e} "
            f"exceeds {residue_tol:.1e} * (1 + max modulus); "
            "input lacks conjugate symmetry"
        )
    return np.ascontiguousarray(x.real)


class SvdConvergenceError(ArithmeticError):
    """Jacobi sweeps hit the cap before reaching the orthogonality target."""

    def __init__(self, off_norm, sweeps=MAX_SWEEPS):
        self.off_norm = off_norm
        self.sweeps = sweeps
        super().__init__(
            f"SVD did not converge after {sweeps} sweeps; "
            f"achieved off-diagonal Gram norm {off_norm:.3e}"
        )


@dataclass(frozen=True)
class SliceSvd:
    """Full SVD of one transform slice: d = u @ diag(sigma) @ v.conj().T."""

    u: np.ndarray  # (m, m) unitary
    sigma: np.ndarray  # (min(m, n),) nonnegative, non-increasing
    v: np.ndarray  # (n, n) unitary


def _off_norm(w):
    g = w.conj().T @ w
    g[np.diag_indices_from(g)] = 0.0
    return float(np.linalg.norm(g))


def _orthogonalize_columns(w, v):
    """Plane-rotate columns of `w` (mirroring into `v`) until pairwise orthogonal.

    Each rotation diagonalizes the 2x2 Gram block of a column pair; a pair is
    skipped once its inner product is below PAIR_TOL relative to the column
    norms.  Raises SvdConvergenceError if MAX_SWEEPS full sweeps still rotate.
    """
    n = w.shape[1]
    if n < 2:
        return
    for _ in range(MAX_SWEEPS):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                gij = complex(np.vdot(w[:, i], w[:, j]))
                gii = float(np.vdot(w[:, i], w[:, i]).real)
                gjj = float(np.vdot(w[:, j], w[:, j]).real)
                if abs(gij) <= PAIR_TOL * math.sqrt(gii * gjj):
                    continue
                # Unitary R = [[c, s], [-s*conj(phase), c*conj(phase)]] with the
                # classic smaller-angle tangent; R^H G R is diagonal for the
                # pair's 2x2 Gram block G.
                phase_conj = (gij / abs(gij)).conjugate()
                zeta = (gjj - gii) / (2.0 * abs(gij))
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.hypot(1.0, t)
                s = c * t
                col = w[:, i].copy()
                w[:, i] = c * col - (phase_conj * s) * w[:, j]
                w[:, j] = s * col + (phase_conj * c) * w[:, j]
                if v is not None:
                    col = v[:, i].copy()
                    v[:, i] = c * col - (phase_conj * s) * v[:, j]
                    v[:, j] = s * col + (phase_conj * c) * v[:, j]
                rotated = True
        if not rotated:
            return
    raise SvdConvergenceError(_off_norm(w), MAX_SWEEPS)


def _singular_values_tall(d):
    """Non-increasing singular values of `d` (any shape) via Jacobi sweeps."""
    m, n = d.shape
    w = (d if m >= n else d.conj().T).copy()
    _orthogonalize_columns(w, None)
    values = np.linalg.norm(w, axis=0)
    values[::-1].sort()
    return values


def _jacobi_svd(d):
    """Full SVD of a tall matrix (m >= n): returns (u, sigma, v) unnormalized phases."""
    m, n = d.shape
    w = d.copy()
    v = np.eye(n, dtype=complex)
    _orthogonalize_columns(w, v)
    sigma = np.linalg.norm(w, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = np.ascontiguousarray(sigma[order])
    w = w[:, order]
    v = np.ascontiguousarray(v[:, order])
    u = np.zeros((m, m), dtype=complex)
    cutoff = (sigma[0] if n else 0.0) * max(m, n) * np.finfo(float).eps
    rank = int((sigma > cutoff).sum())
    if rank:
        u[:, :rank] = w[:, :rank] / sigma[:rank]
    if rank < m:
        # Orthonormal complement: QR of [computed columns | identity] keeps the
        # computed columns' span in front, so the trailing Q columns fill u.
        if rank:
            basis = np.linalg.qr(
                np.hstack([u[:, :rank], np.eye(m, dtype=complex)])
            )[0]
            u[:, rank:] = basis[:, rank:]
        else:
            u[:, :] = np.eye(m)
    return u, sigma, v


def _normalize_phases(u, sigma, v):
    """Make the first significant entry of each left column real nonnegative.

    Compensating phases go into the paired right column so the product
    u @ diag(sigma) @ v^H is unchanged.
    """
    k = sigma.shape[0]
    for i in range(u.shape[1]):
        col = u[:, i]
        lead = np.flatnonzero(np.abs(col) > 1e-8)
        if lead.size == 0:
            continue
        entry = col[lead[0]]
        phase_conj = (entry / abs(entry)).conjugate()
        u[:, i] = col * phase_conj
        if i < k:
            v[:, i] = v[:, i] * phase_conj
    return u, v


def complex_svd(d):
    """Full SVD of a complex matrix with deterministic factors.

    One-sided Jacobi with complex plane rotations; singular values are sorted
    non-increasing (stable among ties) and each left column's first
    significant entry is made real nonnegative.  Exactly real input yields
    exactly real factors.
    """
    d = np.asarray(d, dtype=complex)
    if d.ndim != 2:
        raise ValueError(f"expected a matrix, got {d.ndim} axes")
    if d.size and not np.isfinite(d).all():
        raise ValueError("matrix entries must be finite")
    m, n = d.shape
    if m >= n:
        u, sigma, v = _jacobi_svd(d)
    else:
        v, sigma, u = _jacobi_svd(d.conj().T)
    u, v = _normalize_phases(u, sigma, v)
    return SliceSvd(u=u, sigma=sigma, v=v)
