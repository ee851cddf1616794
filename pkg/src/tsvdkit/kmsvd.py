"""Kilmer-Martin mapping, T-SVD, singular values, ranks, and truncations.

The mapping sends a real tensor through the mode-3 DFT, takes the SVD of each
transform slice with non-increasing singular values, and inverse transforms
the per-slice singular value matrices.  The result is a real f-diagonal
tensor that is invariant under T-products with orthogonal tensors, which is
what makes the derived singular values and ranks well defined.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import as_tensor, frobenius_norm, transpose
from .spectral import (
    _singular_values_tall,
    complex_svd,
    dft_mode3,
    get_max_workers,
    idft_mode3,
)
from .tprod import tprod

__all__ = [
    "TSvd",
    "RankReport",
    "km_mapping",
    "tsvd",
    "singular_values",
    "truncate_trank",
    "best_trank_one",
    "sigma1",
    "sigma1_upper_bound_check",
    "km_equal",
    "default_rank_threshold",
]


@dataclass(frozen=True)
class TSvd:
    """Factorization a = u * s * transpose(v) with f-diagonal real s."""

    u: np.ndarray  # (m, m, p) orthogonal
    s: np.ndarray  # (m, n, p) f-diagonal, slice-1 diagonal nonnegative
    v: np.ndarray  # (n, n, p) orthogonal


@dataclass(frozen=True)
class RankReport:
    """Spectral summary: sorted singular values, tube norms, and both ranks."""

    singular_values: np.ndarray  # p*min(m, n) values, non-increasing
    t_singular_values: np.ndarray  # min(m, n) tube norms, non-increasing
    t_rank: int
    tubal_rank: int
    threshold: float


def _independent_slices(p):
    """Indices of transform slices not determined by conjugate symmetry."""
    return range(p // 2 + 1)


def _realified(spec, k, p):
    """Slice k of the spectrum, forced exactly real when self-conjugate.

    Self-paired slices of a real tensor's transform are real up to roundoff;
    dropping the residue keeps the factor slices exactly conjugate symmetric,
    so the inverse transform is real by construction.
    """
    sl = spec[:, :, k]
    if (p - k) % p == k:
        return sl.real.astype(complex)
    return sl


def _map_slices(func, items):
    workers = get_max_workers()
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def _diagonal_spectrum(a):
    """Per-slice singular values of the transform, (min(m, n), p), mirrored."""
    a = as_tensor(a)
    m, n, p = a.shape
    spec = dft_mode3(a)
    vals = np.empty((min(m, n), p))
    half = list(_independent_slices(p))
    computed = _map_slices(
        lambda k: _singular_values_tall(_realified(spec, k, p)), half
    )
    for k, col in zip(half, computed):
        vals[:, k] = col
        mirror = (p - k) % p
        if mirror != k:
            vals[:, mirror] = col
    return vals


def km_mapping(a):
    """Real f-diagonal image of `a`: inverse DFT of the slicewise singular values."""
    a = as_tensor(a)
    m, n, p = a.shape
    r = min(m, n)
    vals = _diagonal_spectrum(a)
    sig = np.zeros((m, n, p), dtype=complex)
    sig[np.arange(r), np.arange(r), :] = vals
    return idft_mode3(sig)


def tsvd(a):
    """Full T-SVD of `a`; the middle factor equals ``km_mapping(a)``."""
    a = as_tensor(a)
    m, n, p = a.shape
    r = min(m, n)
    spec = dft_mode3(a)
    u_hat = np.empty((m, m, p), dtype=complex)
    v_hat = np.empty((n, n, p), dtype=complex)
    s_hat = np.zeros((m, n, p), dtype=complex)
    half = list(_independent_slices(p))
    factors = _map_slices(lambda k: complex_svd(_realified(spec, k, p)), half)
    diag = np.arange(r)
    for k, f in zip(half, factors):
        u_hat[:, :, k] = f.u
        v_hat[:, :, k] = f.v
        s_hat[diag, diag, k] = f.sigma
        mirror = (p - k) % p
        if mirror != k:
            u_hat[:, :, mirror] = f.u.conj()
            v_hat[:, :, mirror] = f.v.conj()
            s_hat[diag, diag, mirror] = f.sigma
    return TSvd(u=idft_mode3(u_hat), s=idft_mode3(s_hat), v=idft_mode3(v_hat))


def default_rank_threshold(shape, sigma1):
    """Relative gate for counting a singular value as nonzero."""
    m, n, p = shape
    return float(np.finfo(float).eps * max(m, n) * p * sigma1)


def singular_values(a, tol=None):
    """Rank report of `a`: singular values, tube norms, T-rank, tubal rank.

    Singular values are the absolute diagonal entries of the mapping's image,
    sorted non-increasing; tube norms are the Euclidean norms of its diagonal
    tubes.  `tol` defaults to ``eps * max(m, n) * p * sigma_1``.
    """
    a = as_tensor(a)
    s = km_mapping(a)
    r = min(a.shape[0], a.shape[1])
    diag = s[np.arange(r), np.arange(r), :]
    sv = np.sort(np.abs(diag), axis=None)[::-1]
    lam = np.sqrt((diag**2).sum(axis=1))
    if tol is None:
        tol = default_rank_threshold(a.shape, float(sv[0]))
    elif tol < 0:
        raise ValueError(f"tolerance must be >= 0, got {tol}")
    return RankReport(
        singular_values=sv,
        t_singular_values=lam,
        t_rank=int((sv > tol).sum()),
        tubal_rank=int((lam > tol).sum()),
        threshold=float(tol),
    )


def truncate_trank(fac, s):
    """Keep the s largest-magnitude diagonal entries of the middle factor.

    Ties are broken by slice-then-row position, ascending, so position
    (1, 1, 1) always hosts the top value.  Returns u * s_kept * transpose(v).
    """
    m, n, p = fac.s.shape
    r = min(m, n)
    total = p * r
    if not 1 <= s <= total:
        raise ValueError(f"kept-entry count must be in 1..{total}, got {s}")
    diag = fac.s[np.arange(r), np.arange(r), :]  # (r, p)
    rows, slices = np.meshgrid(np.arange(r), np.arange(p), indexing="ij")
    rows = rows.ravel()
    slices = slices.ravel()
    order = np.lexsort((rows, slices, -np.abs(diag).ravel()))
    keep = order[:s]
    s_kept = np.zeros_like(fac.s)
    s_kept[rows[keep], rows[keep], slices[keep]] = diag[rows[keep], slices[keep]]
    return tprod(fac.u, tprod(s_kept, transpose(fac.v)))


def best_trank_one(a):
    """Closest tensor (in Frobenius norm) with a single nonzero singular value."""
    return truncate_trank(tsvd(a), 1)


def sigma1(a):
    """Largest singular value; equals the mapping's (1, 1, 1) entry."""
    return float(km_mapping(a)[0, 0, 0])


def sigma1_upper_bound_check(a):
    """Verify the top singular value dominates every entry magnitude."""
    a = as_tensor(a)
    s1 = sigma1(a)
    return bool(s1 + 1e-10 * (1.0 + s1) >= np.abs(a).max())


def km_equal(a, b, tol=1e-8):
    """True iff the two tensors have the same mapping image.

    Uses a mixed gate: ``||S(a) - S(b)||_F <= tol * (1 + ||S(a)||_F)``.
    """
    a = as_tensor(a)
    b = as_tensor(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    sa = km_mapping(a)
    sb = km_mapping(b)
    return bool(frobenius_norm(sa - sb) <= tol * (1.0 + frobenius_norm(sa)))
