"""Plot utility curves. Needs matplotlib (pip install matplotlib).

Run: python3 demos/05_plot_curves.py [out.png]
"""
import sys

import matplotlib.pyplot as plt
import numpy as np

from putlab import curve_sweep

grid = np.geomspace(0.01, 3, 80)
fig, (ax_s, ax_a) = plt.subplots(1, 2, figsize=(9, 3.5), sharex=True)
for v, style in ((4, "-"), (9, "--")):
    pts = curve_sweep(v, 1.0, grid)
    ax_s.plot(grid, [p.s_quantum for p in pts], "C0" + style, label=f"quantum v={v}")
    ax_s.plot(grid, [p.s_classical_upper for p in pts], "C1" + style, label=f"classical v={v}")
    ax_a.plot(grid, [p.a_quantum for p in pts], "C0" + style)
    ax_a.plot(grid, [p.a_classical for p in pts], "C1" + style)
for ax, name in ((ax_s, "symmetric exponent"), (ax_a, "asymmetric exponent")):
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("eps")
    ax.set_title(name)
ax_s.legend(fontsize=8)
fig.tight_layout()
fig.savefig(sys.argv[1] if len(sys.argv) > 1 else "put_curves.png", dpi=120)
