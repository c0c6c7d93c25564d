"""Every eps-LDP mechanism is an extremal staircase mechanism followed by post-processing.

Run: python3 demos/04_extremal_decomposition.py
"""
import numpy as np

from putlab import decompose_extremal, extremal_matrix
from putlab.mechanisms import pair_balance
from putlab.oracle import random_ldp_sampler

eps = 0.8
q = random_ldp_sampler(3, 4, eps, 1, 2024)[0]
np.set_printoptions(precision=4, suppress=True)
print("random 0.8-LDP mechanism:\n", q)

ext, post = decompose_extremal(q, eps)
print("extremal matrix (columns = cube vertices):\n", extremal_matrix(3, eps))
print("column weights theta:", ext.theta)
print("post-processing:\n", post)
print("reconstruction residual:", np.abs(ext.matrix @ post - q).max())

# The weights put equal mass on "h high, h' low" and "h low, h' high" columns.
print("pair balance (rows 0, 1):", pair_balance(ext.theta, 0, 1))
