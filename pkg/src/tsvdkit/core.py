"""Dense third-order tensor primitives and the block-circulant correspondence.

A tensor of shape ``(m, n, p)`` is stored as a real numpy array whose k-th
frontal slice is ``a[:, :, k]``.  Everything here is a pure index permutation
or an elementwise reduction; no function mutates its input.
"""

import numpy as np

__all__ = [
    "as_tensor",
    "frobenius_norm",
    "unfold",
    "fold",
    "bcirc",
    "bcirc_inverse",
    "transpose",
    "identity_tensor",
    "is_f_diagonal",
]


def as_tensor(a):
    """Validate `a` as a dense real third-order tensor and return it as float64.

    Raises ValueError if `a` is not three-dimensional, has an empty axis, or
    contains non-finite entries.
    """
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 3:
        raise ValueError(f"expected a third-order tensor, got {arr.ndim} axes")
    if min(arr.shape) < 1:
        raise ValueError(f"tensor axes must be positive, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("tensor entries must be finite (no NaN/Inf)")
    return arr


def frobenius_norm(a):
    """Square root of the sum of squared entries."""
    return float(np.linalg.norm(as_tensor(a)))


def unfold(a):
    """Stack the frontal slices vertically into an (m*p, n) matrix."""
    a = as_tensor(a)
    m, n, p = a.shape
    return a.transpose(2, 0, 1).reshape(m * p, n).copy()


def fold(mat, p):
    """Inverse of :func:`unfold`: reassemble p stacked slices into a tensor."""
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2:
        raise ValueError(f"fold expects a matrix, got {mat.ndim} axes")
    rows, n = mat.shape
    if p < 1 or rows % p != 0:
        raise ValueError(f"cannot fold {rows} rows into {p} frontal slices")
    m = rows // p
    return mat.reshape(p, m, n).transpose(1, 2, 0).copy()


def bcirc(a):
    """Block circulant matrix of `a`: block (r, c) is frontal slice (r - c) mod p.

    The first block column is ``unfold(a)``; each later block column is the
    previous one cyclically shifted down by one block.  Materializes an
    (m*p, n*p) matrix, so this is meant for verification and small inputs.
    """
    a = as_tensor(a)
    m, n, p = a.shape
    shift = (np.arange(p)[:, None] - np.arange(p)[None, :]) % p
    return a[:, :, shift].transpose(2, 0, 3, 1).reshape(m * p, n * p)


def bcirc_inverse(mat, m, n, p, tol=1e-9):
    """Recover the tensor whose block circulant matrix is `mat`.

    `mat` must be (m*p, n*p) with circulant block structure; any block that
    deviates from the first block column by more than `tol` (absolute, per
    entry) raises ValueError.  The extraction itself is a pure slice, so
    ``bcirc_inverse(bcirc(a), ...)`` returns `a` exactly.
    """
    mat = np.asarray(mat, dtype=float)
    if any(d < 1 for d in (m, n, p)):
        raise ValueError(f"tensor axes must be positive, got ({m}, {n}, {p})")
    if mat.shape != (m * p, n * p):
        raise ValueError(
            f"expected a {m * p}x{n * p} matrix for dims ({m}, {n}, {p}), "
            f"got {mat.shape[0]}x{mat.shape[1]}"
        )
    a = fold(mat[:, :n], p)
    deviation = np.abs(bcirc(a) - mat).max()
    if deviation > tol:
        raise ValueError(
            f"matrix is not block circulant: max block deviation {deviation:.3e} "
            f"exceeds tolerance {tol:.3e}"
        )
    return a


def transpose(a):
    """Tensor transpose: slice 1 transposed, slices 2..p reversed and transposed.

    This is the unique permutation satisfying
    ``bcirc(transpose(a)) == bcirc(a).T`` entry for entry.
    """
    a = as_tensor(a)
    p = a.shape[2]
    order = (-np.arange(p)) % p
    return a[:, :, order].transpose(1, 0, 2).copy()


def identity_tensor(n, p):
    """Tensor whose first frontal slice is the n-by-n identity, rest zero."""
    if n < 1 or p < 1:
        raise ValueError(f"identity_tensor needs n, p >= 1, got ({n}, {p})")
    t = np.zeros((n, n, p))
    t[:, :, 0] = np.eye(n)
    return t


def is_f_diagonal(a, tol=0.0):
    """True iff every frontal slice is diagonal (off-diagonals <= tol)."""
    a = as_tensor(a)
    m, n, _ = a.shape
    off = ~np.eye(m, n, dtype=bool)
    return bool(np.abs(a[off]).max() <= tol) if off.any() else True
