"""Independent reference computations used to cross-check the closed forms.

Nothing in the production formulas imports this module. The code paths here
deliberately avoid the ones they check: Chernoff information is taken on a
dense grid with raw ``numpy.linalg.eigh``; the classical bounds are rebuilt
from explicit cube vertices instead of the simplified algebra.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import CapabilityError, DomainError, PutlabError
from .mechanisms import verify_ldp

DEFAULT_SEED = 0x5EED


def _psd_power(m: np.ndarray, s: float) -> np.ndarray:
    w, u = np.linalg.eigh(m)
    keep = w > 1e-12 * max(abs(w).max(), 1e-300)
    p = np.zeros_like(w)
    p[keep] = w[keep] ** s
    return (u * p) @ u.conj().T


def chernoff_grid_oracle(rho, sigma, grid_size: int = 10_000) -> float:
    """``-log min_s Tr(rho**s sigma**(1-s))`` over a uniform grid of s."""
    if grid_size < 1000:
        raise DomainError("grid_size must be at least 1000")
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    best = math.inf
    for s in np.linspace(0.0, 1.0, grid_size + 1):
        val = np.trace(_psd_power(rho, s) @ _psd_power(sigma, 1 - s)).real
        best = min(best, val)
    if best <= 1e-15:
        return math.inf
    return -math.log(best)


def random_ldp_mechanism(v: int, b: int, eps: float, rng: np.random.Generator) -> np.ndarray:
    """One random eps-LDP mechanism of shape (v, b).

    Column y is ``theta_y`` times a vector in [1, e**eps]**v. Given the
    column scales (total in [e**-eps, 1]) each row can be solved for
    independently, which keeps every row sum exact.
    """
    e = math.exp(eps)
    theta = rng.dirichlet(np.full(b, 0.7)) * rng.uniform(1 / e, 1.0)
    total = theta.sum()
    target = (1 - total) / (e - 1)   # required sum_y w_y theta_y, lies in [0, total]
    q = np.empty((v, b))
    for x in range(v):
        w = rng.uniform(size=b) ** rng.choice([0.3, 1.0, 3.0])
        mass = w @ theta
        if mass > target:
            w = w * (target / mass)
        else:
            w = 1 - (1 - w) * ((total - target) / (total - mass))
        q[x] = theta * (1 + (e - 1) * w)
    return q


def random_ldp_sampler(v: int, b: int, eps: float, count: int,
                       rng_seed: int = DEFAULT_SEED) -> list[np.ndarray]:
    """Deterministic corpus of ``count`` eps-LDP mechanisms of shape (v, b)."""
    if v > 6 or b > 8 or v < 2 or b < 1:
        raise CapabilityError(f"sampler supports 2 <= v <= 6 and 1 <= b <= 8, got ({v}, {b})")
    rng = np.random.default_rng(rng_seed)
    out, attempts = [], 0
    while len(out) < count and attempts < 10 * count:
        attempts += 1
        q = random_ldp_mechanism(v, b, eps, rng)
        if np.max(np.abs(q.sum(axis=1) - 1)) > 1e-10 or not verify_ldp(q, eps).passed:
            continue
        out.append(q)
    if len(out) < count:
        raise PutlabError(f"sampler produced {len(out)} of {count} mechanisms")
    return out


def random_stochastic(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    return rng.dirichlet(np.ones(cols), size=rows)


def _vertex(v: int, k: int, eps: float) -> np.ndarray:
    col = np.ones(v)
    col[:k] = math.exp(eps)
    return col


def extremal_vertex_oracle(v: int, eps: float, eta: float, objective: str) -> float:
    """Best classical utility when all extremal weight sits on one vertex class.

    For objective ``"S"`` this evaluates the symmetric-testing upper bound from
    the pairwise Bhattacharyya sums of an explicit vertex; for ``"A"`` the
    relative-entropy sum of an explicit vertex against the uniform input.
    """
    if v > 6:
        raise CapabilityError("vertex oracle supports v <= 6")
    objective = objective.upper()
    if objective not in ("S", "A"):
        raise DomainError(f"objective must be 'S' or 'A', got {objective!r}")
    hyp = [np.full(v, (1 - eta) / v) + eta * np.eye(v)[h] for h in range(v)]
    uniform = np.full(v, 1 / v)
    best = -math.inf
    for k in range(v + 1):
        col = _vertex(v, k, eps)
        mean = col.mean()
        if objective == "S":
            cross = sum(math.sqrt(col[x] * col[xp]) for x in range(v) for xp in range(v) if x != xp)
            diag = sum(float(hyp[h] @ hyp[hp]) for h in range(v) for hp in range(v) if h != hp)
            mixed = sum(hyp[h][x] * hyp[hp][xp]
                        for h in range(v) for hp in range(v) if h != hp
                        for x in range(v) for xp in range(v) if x != xp)
            # the pairwise sum splits over x = x' and x != x' once theta is a point mass
            avg = (diag + mixed / (v * (v - 1)) * cross / mean) / (v * (v - 1))
            val = -math.log(avg)
        else:
            ref = float(uniform @ col)
            val = 0.0
            for h in range(v):
                p = float(hyp[h] @ col)
                val += p * math.log(p / ref)
            val /= v * mean
        best = max(best, val)
    return best
