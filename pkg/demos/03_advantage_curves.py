"""Quantum over classical utility ratios as the privacy budget grows.

Prints ratio_s and ratio_a for a few alphabet sizes. v=2 is the control:
a qubit cannot beat randomized response there.

Run: python3 demos/03_advantage_curves.py
"""
import numpy as np

from putlab import corollary_ratio_limits, curve_sweep

grid = np.array([1e-3, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0])
print("eps      " + "".join(f"{e:>9g}" for e in grid))
for v in (2, 3, 4, 9):
    points = curve_sweep(v, 1.0, grid, numeric_fallback=False)
    print(f"v={v} S   " + "".join(f"{p.ratio_s:9.4f}" for p in points))
    if points[0].ratio_a is not None:
        print(f"v={v} A   " + "".join(f"{p.ratio_a:9.4f}" for p in points))
    print(f"    small-eps limits {corollary_ratio_limits(v)}")

# Smoothing the hypotheses (eta < 1) shrinks the gap but does not close it at eta = 0.91.
p = curve_sweep(9, 0.91, [0.5])[0]
print(f"v=9, eta=0.91, eps=0.5: ratio_s={p.ratio_s:.4f} ratio_a={p.ratio_a:.4f}")
