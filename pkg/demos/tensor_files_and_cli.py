"""
Tensor files and the command-line tool
======================================

Tensors travel as plain text files (``dims = [...]`` and ``data = [...]``)
that round-trip bit-exactly.  The ``tsvdkit`` command reads and writes them;
this script drives the CLI in-process on a temporary directory.
"""

import tempfile
from pathlib import Path

import numpy as np

from tsvdkit import read_tensor, write_tensor
from tsvdkit.cli import main

rng = np.random.default_rng(4)
workdir = Path(tempfile.mkdtemp(prefix="tsvdkit-demo-"))
print("working in", workdir)

# Write a tensor file and show its head.
a = rng.standard_normal((3, 3, 3))
a_path = workdir / "a.tensor"
write_tensor(a_path, a)
print("\nfile head:")
print(a_path.read_text()[:120], "...")
print("round-trip exact:", np.array_equal(read_tensor(a_path), a))

# Factor it: writes a.u / a.s / a.v next to the input.
print("\n$ tsvdkit tsvd a.tensor")
main(["tsvd", str(a_path)])

# Rank report.
print("\n$ tsvdkit rank a.tensor")
main(["rank", str(a_path)])

# Best approximation keeping 4 singular values.
print("\n$ tsvdkit approx a.tensor --rank 4 --out a4.tensor")
main(["approx", str(a_path), "--rank", "4", "--out", str(workdir / "a4.tensor")])

# T-product of the factor files: U * S reproduces a * V (since V^T V = I).
print("\n$ tsvdkit tprod a.u a.s --out us.tensor")
main(["tprod", str(workdir / "a.u"), str(workdir / "a.s"),
      "--out", str(workdir / "us.tensor")])

# Property verification: exit code 0 means every property passed.
print("\n$ tsvdkit verify a.tensor --seed 1 --trials 10")
code = main(["verify", str(a_path), "--seed", "1", "--trials", "10"])
print("exit code:", code)
