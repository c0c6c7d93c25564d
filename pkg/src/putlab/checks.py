"""Named invariant suites run by ``putlab verify``."""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .divergences import utility_a, utility_s
from .mechanisms import (block_design_mechanism, complete_design, decompose_extremal,
                         extremal_matrix, pair_balance, proposed_mechanism, verify_qldp)
from .oracle import DEFAULT_SEED, random_ldp_sampler
from .put import (a_classical, a_classical_coefficient, a_quantum, a_quantum_coefficient,
                  s_classical_coefficient, s_classical_upper, s_quantum, s_quantum_coefficient)
from .states import sic_states


class Check(NamedTuple):
    name: str
    passed: bool
    margin: float   # measured error (or slack) that decided the verdict


def check_sic():
    out = []
    for d in (2, 3):
        psi = sic_states(d)
        frame = sum(np.outer(p, p.conj()) for p in psi)
        gram = np.abs(psi.conj() @ psi.T) ** 2
        off = gram[~np.eye(d * d, dtype=bool)]
        err = max(np.abs(frame - d * np.eye(d)).max(), np.abs(off - 1 / (d + 1)).max())
        out.append(Check(f"sic d={d}", err <= 1e-9, float(err)))
    return out


def check_qldp():
    out = []
    for v in range(2, 10):
        for eps in (0.1, 0.5, 1.0, 2.0):
            mech = proposed_mechanism(v, eps)
            at = verify_qldp(mech, eps)
            below = verify_qldp(mech, 0.9 * eps)
            out.append(Check(f"qldp boundary v={v} eps={eps}", at.passed and not below.passed,
                             min(at.margin, -below.margin)))
    return out


def check_achievability():
    out = []
    for v in range(2, 7):
        for eps in (0.5, 1.0, 2.0):
            mechs = [block_design_mechanism(complete_design(v, k), eps) for k in range(v + 1)]
            best_s = max(utility_s(q, 1.0).value for q in mechs)
            err = abs(best_s - s_classical_upper(v, eps, 1.0)[0])
            for eta in (0.3, 0.7, 1.0):
                best_a = max(utility_a(q, eta).value for q in mechs)
                err = max(err, abs(best_a - a_classical(v, eps, eta)[0]))
            out.append(Check(f"achievability v={v} eps={eps}", err <= 1e-8, err))
    return out


def check_converse(seed: int = DEFAULT_SEED, count: int = 100):
    out = []
    eps = 1.0
    for v in (2, 3, 4):
        worst = -math.inf
        for q in random_ldp_sampler(v, 2 + v, eps, count, seed + v):
            worst = max(worst, utility_s(q, 1.0).value - s_classical_upper(v, eps, 1.0)[0])
            for eta in (0.3, 0.7, 1.0):
                worst = max(worst, utility_a(q, eta).value - a_classical(v, eps, eta)[0])
        out.append(Check(f"converse v={v}", worst <= 1e-8, worst))
    return out


def check_decompose(seed: int = DEFAULT_SEED, count: int = 25):
    out = []
    eps = 1.0
    for v in (2, 3, 4):
        for b in range(2, 7):
            resid, balance = 0.0, 0.0
            for q in random_ldp_sampler(v, b, eps, count, seed + 10 * v + b):
                ext, post = decompose_extremal(q, eps)
                resid = max(resid, np.abs(ext.matrix @ post - q).max(),
                            np.abs(extremal_matrix(v, eps) @ ext.theta - 1).max())
                for h in range(v):
                    for hp in range(h + 1, v):
                        x, y = pair_balance(ext.theta, h, hp)
                        balance = max(balance, abs(x - y))
            out.append(Check(f"decompose v={v} b={b}", resid < 1e-9 and balance < 1e-10,
                             max(resid, balance)))
    return out


def check_taylor():
    out = []
    eps = 1e-3
    for v in range(2, 10):
        errs = [abs(s_quantum(v, eps) / eps ** 2 / s_quantum_coefficient(v) - 1),
                abs(s_classical_upper(v, eps)[0] / eps ** 2 / s_classical_coefficient(v) - 1),
                abs(a_classical(v, eps)[0] / eps ** 2 / a_classical_coefficient(v) - 1)]
        if v in (4, 9):
            d = math.isqrt(v)
            errs.append(abs(a_quantum(d, eps) / eps ** 2 / a_quantum_coefficient(d) - 1))
        out.append(Check(f"taylor v={v}", max(errs) <= 0.01, max(errs)))
    return out


SUITES = {
    "sic": check_sic,
    "qldp": check_qldp,
    "converse": check_converse,
    "achievability": check_achievability,
    "taylor": check_taylor,
    "decompose": check_decompose,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    results = []
    for n in names:
        fn = SUITES[n]
        results.extend(fn(seed) if n in ("converse", "decompose") else fn())
    return results
