"""Classical side: block-design mechanisms reach the best eps-LDP utility.

The optimum is attained by a complete design whose block size k is picked
by a one-dimensional search; random LDP mechanisms never beat it.

Run: python3 demos/02_classical_put.py
"""
from putlab import a_classical, block_design_mechanism, complete_design, s_classical_upper
from putlab import utility_a, utility_s
from putlab.oracle import random_ldp_sampler

v, eps, eta = 5, 1.0, 0.7
print(f"v={v}, eps={eps}, eta={eta}")
for k in range(v + 1):
    q = block_design_mechanism(complete_design(v, k), eps)
    print(f"  k={k}: S={utility_s(q).value:.6f}  A={utility_a(q, eta).value:.6f}")

s_best, k_s = s_classical_upper(v, eps)
a_best, k_a = a_classical(v, eps, eta)
print(f"closed forms: S={s_best:.6f} at k={k_s}, A={a_best:.6f} at k={k_a}")

best_random = max(utility_a(q, eta).value for q in random_ldp_sampler(v, 6, eps, 200, 1))
print(f"best of 200 random {eps}-LDP mechanisms falls well short: A={best_random:.6f}")
