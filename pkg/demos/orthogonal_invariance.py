"""
Orthogonal equivalence leaves the spectral image untouched
==========================================================

Multiplying a tensor by orthogonal tensors on either side (a -> y * a * z^T)
changes every entry, but the mapped f-diagonal image, the singular values,
and both ranks stay put.  Scaling, by contrast, moves the image immediately.
"""

import numpy as np

from tsvdkit import (
    frobenius_norm,
    km_equal,
    km_mapping,
    random_orthogonal,
    singular_values,
    tprod,
    transpose,
)

rng = np.random.default_rng(2)
a = rng.standard_normal((5, 4, 3))

print("image gap under random orthogonal products:")
for seed in range(5):
    y = random_orthogonal(5, 3, 2 * seed)
    z = random_orthogonal(4, 3, 2 * seed + 1)
    b = tprod(y, tprod(a, transpose(z)))
    gap = frobenius_norm(km_mapping(b) - km_mapping(a))
    print(f"seed {seed}: entries moved by {frobenius_norm(b - a):8.3f}, "
          f"image moved by {gap:.2e}, km_equal -> {km_equal(a, b)}")

ra = singular_values(a)
rb = singular_values(b)
print("\nsingular values agree:",
      np.abs(ra.singular_values - rb.singular_values).max())
print("ranks agree:", (ra.t_rank, ra.tubal_rank) == (rb.t_rank, rb.tubal_rank))

# A plain scaling is NOT an orthogonal equivalence; the image scales with it.
print("\nkm_equal(a, 2a) ->", km_equal(a, 2.0 * a))

# The top singular value never drops below the largest entry magnitude, with
# equality for a tensor holding a single nonzero entry.
single = np.zeros((5, 4, 3))
single[3, 2, 1] = -7.5
print("\nsigma_1 of single-entry tensor:",
      singular_values(single).singular_values[0], "(entry magnitude 7.5)")
print("sigma_1 >= max |entry| for a:",
      ra.singular_values[0] >= np.abs(a).max())
