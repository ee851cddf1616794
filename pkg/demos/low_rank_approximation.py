"""
Low-rank truncation and the energy budget
=========================================

Truncating the factorization to its s largest singular values leaves a
residual whose square is exactly the discarded tail energy, and the rank-one
truncation is the best possible among all tensors with one nonzero singular
value.  This script approximates a noisy low-tubal-rank tensor at increasing
s and watches the residual track the tail.
"""

import numpy as np

from tsvdkit import (
    frobenius_norm,
    singular_values,
    tprod,
    transpose,
    truncate_trank,
    tsvd,
)

rng = np.random.default_rng(1)

# Planted structure: tubal rank 2 out of 5, plus small dense noise.
m, n, p, planted = 6, 5, 4, 2
clean = tprod(rng.standard_normal((m, planted, p)),
              rng.standard_normal((planted, n, p)))
noisy = clean + 0.01 * rng.standard_normal((m, n, p))

report = singular_values(noisy)
print("singular values:")
print(np.array2string(report.singular_values, precision=4))
print("tube norms:", np.array2string(report.t_singular_values, precision=4))
print("the planted rank shows up as", planted, "dominant tubes;",
      "tubal_rank =", report.tubal_rank, "because of the noise floor")

fac = tsvd(noisy)
total = frobenius_norm(noisy) ** 2
print(f"\n{'s':>3} {'residual':>12} {'tail energy':>12}")
for s in (1, 2, 4, 8, 12, 20):
    approx = truncate_trank(fac, s)
    residual = frobenius_norm(noisy - approx)
    tail = np.sqrt((report.singular_values[s:] ** 2).sum())
    print(f"{s:>3} {residual:>12.6f} {tail:>12.6f}")

# Keeping every entry reproduces the tensor.
full = truncate_trank(fac, p * min(m, n))
print("\nfull truncation residual:", frobenius_norm(noisy - full))

# Denoising view: the best approximation of the noisy tensor at the planted
# tube count recovers most of the clean signal.
r = planted
b = tprod(fac.u, fac.s)[:, :r, :]
c = transpose(fac.v)[:r, :, :]
denoised = tprod(b, c)
print("clean vs denoised:", frobenius_norm(clean - denoised))
print("clean vs noisy:   ", frobenius_norm(clean - noisy))
