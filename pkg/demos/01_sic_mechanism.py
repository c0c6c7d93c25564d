"""Build the depolarised SIC-state mechanism and see why its noise level is the right one.

Run: python3 demos/01_sic_mechanism.py
"""
import numpy as np

from putlab import mu_feasible_interval, proposed_mechanism, utility_a, utility_s, verify_qldp

eps = 1.0
mech = proposed_mechanism(4, eps)
print(f"v=4 inputs are encoded in a qubit; depolarising strength mu* = {mech.mu:.6f}")

# The privacy constraint binds exactly at mu*: any less noise breaks it.
for mu in (mech.mu - 0.01, mech.mu, mech.mu + 0.01):
    m = proposed_mechanism(4, eps, mu=mu)
    verdict = verify_qldp(m, eps)
    print(f"  mu={mu:.4f}  private={verdict.passed!s:5}  margin={verdict.margin:+.2e}  "
          f"S={utility_s(m).value:.5f}  A={utility_a(m).value:.5f}")

# Noise levels past mu = 1 are also private. For a qubit mu and 2 - mu give the
# same spectra, but in a qutrit the low-noise end is strictly better.
lo = proposed_mechanism(9, eps)
b = mu_feasible_interval(1 / 4, 3, eps)
hi = proposed_mechanism(9, eps, mu=min(b.mu_max, 1.5))
print(f"v=9: private for mu in [{b.mu_min:.4f}, {min(b.mu_max, 1.5):.4f}]")
for name, m in (("mu_min", lo), ("mu_max", hi)):
    print(f"  {name}={m.mu:.4f}  S={utility_s(m).value:.5f}  A={utility_a(m).value:.5f}")

np.set_printoptions(precision=4, suppress=True)
print("first output state of the qubit mechanism:\n", mech.outputs[0])
