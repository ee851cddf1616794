"""
T-product algebra and the block circulant correspondence
========================================================

The T-product of third-order tensors is ordinary matrix multiplication of
their block circulant matrices, folded back to a tensor.  The production code
never builds the big matrix (it multiplies transform slices instead); this
script shows the two routes agree and tours the algebraic laws.
"""

import numpy as np

from tsvdkit import (
    bcirc,
    frobenius_norm,
    identity_tensor,
    is_orthogonal,
    random_orthogonal,
    tinverse,
    tprod,
    tprod_direct,
    transpose,
    unfold,
)

rng = np.random.default_rng(0)
a = rng.standard_normal((3, 2, 4))
b = rng.standard_normal((2, 5, 4))

# The (m*p) x (n*p) block circulant matrix: first block column stacks the
# frontal slices, later block columns are cyclic shifts.
print("bcirc(a) shape:", bcirc(a).shape)
print("first block column == unfold(a):",
      np.array_equal(bcirc(a)[:, :2], unfold(a)))

# Transform route vs. literal block circulant route.
fast = tprod(a, b)
direct = tprod_direct(a, b)
print("transform vs block-circulant route:",
      frobenius_norm(fast - direct), "(difference)")

# Identity element and transpose reversal.
ident = identity_tensor(2, 4)
print("a * I == a:", frobenius_norm(tprod(a, ident) - a))
lhs = transpose(tprod(a, b))
rhs = tprod(transpose(b), transpose(a))
print("(a * b)^T == b^T * a^T:", frobenius_norm(lhs - rhs))

# Orthogonal tensors: q^T is the inverse, and products with q preserve norms.
q = random_orthogonal(3, 4, seed=42)
print("q orthogonal:", is_orthogonal(q))
print("tinverse(q) == q^T:", frobenius_norm(tinverse(q) - transpose(q)))
print("||q * a|| == ||a||:",
      abs(frobenius_norm(tprod(q, a)) - frobenius_norm(a)))

# Well-conditioned square tensors invert; the inverse multiplies to identity
# from both sides.
c = rng.standard_normal((3, 3, 4)) + 2.0 * identity_tensor(3, 4)
c_inv = tinverse(c)
ident3 = identity_tensor(3, 4)
print("c * c^-1 == I:", frobenius_norm(tprod(c, c_inv) - ident3))
print("c^-1 * c == I:", frobenius_norm(tprod(c_inv, c) - ident3))
