"""Closed-form privacy-utility values, their small-eps limits and curve sweeps."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .divergences import utility_a, utility_s
from .errors import CapabilityError, DomainError
from .mechanisms import mu_feasible_interval, proposed_mechanism, sic_dimension

CLOSED = "closed"
NUMERIC = "numeric"


def xlogx(x: float) -> float:
    return 0.0 if x == 0 else x * math.log(x)


def _check_mu(d: int, mu: float):
    if d < 2:
        raise DomainError(f"d must be >= 2, got {d}")
    if not 0.0 <= mu <= d / (d - 1) + 1e-15:
        raise DomainError(f"mu must lie in [0, {d / (d - 1):g}], got {mu}")


def _overlap_deficit(c: float, d: int, mu: float) -> float:
    # 1 - G, rewritten so the O((1 - mu)**2) value has no cancellation near mu = 1
    root = math.sqrt(max(mu * (d - (d - 1) * mu), 0.0))
    return (1 - c) * d * (1 - mu) ** 2 / (2 * root + d - (d - 2) * mu)


def depolarized_overlap(c: float, d: int, mu: float) -> float:
    """Minimum over s of Tr(Q**s Q'**(1-s)) for two depolarised pure states.

    ``c`` is the squared overlap of the pure states, ``mu`` the common
    depolarising strength, ``d`` the dimension.
    """
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"c must lie in [0, 1], got {c}")
    _check_mu(d, mu)
    return 1.0 - _overlap_deficit(c, d, mu)


def vertex_mean(v: int, k: int, eps: float) -> float:
    """Mean entry of a cube vertex with ``k`` coordinates at e**eps and v-k at 1."""
    if not 0 <= k <= v:
        raise DomainError(f"k must lie in [0, {v}], got {k}")
    return (k * math.exp(eps) + v - k) / v


def vertex_divergence(v: int, k: int, eps: float, eta: float) -> float:
    """Summed relative-entropy contribution of one such vertex over all h."""
    f = vertex_mean(v, k, eps)
    up = eta * math.exp(eps) + (1 - eta) * f
    flat = eta + (1 - eta) * f
    return k * xlogx(up) + (v - k) * xlogx(flat) - v * xlogx(f)


# --- the depolarised SIC mechanism ------------------------------------------------

def _sic_noise(v: int, eps: float) -> tuple[int, float]:
    """(d, 1 - mu_min) for the SIC subset on v symbols, computed without cancellation."""
    if not 2 <= v <= 9:
        raise CapabilityError(f"closed forms cover 2 <= v <= 9, got v={v}")
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    d = sic_dimension(v)
    g_minus = mu_feasible_interval(1 / (d + 1), d, eps).g_minus
    return d, 1 / (1 - d * g_minus)


def effective_mu(v: int, eps: float, eta: float = 1.0) -> float:
    """Depolarising strength seen by the ensemble states when v = d**2."""
    _, gap = _sic_noise(v, eps)
    return 1 - eta * gap


def is_square(v: int) -> bool:
    return math.isqrt(v) ** 2 == v


def s_quantum_has_closed_form(v: int, eta: float) -> bool:
    return eta == 1.0 or is_square(v)


def s_quantum(v: int, eps: float, eta: float = 1.0) -> float:
    """Symmetric-testing utility of the depolarised SIC mechanism.

    Closed form at eta = 1 or when v is a perfect square; otherwise the
    mechanism is built and its utility evaluated numerically.
    """
    _check_eta(eta)
    d, gap = _sic_noise(v, eps)
    if not s_quantum_has_closed_form(v, eta):
        return utility_s(proposed_mechanism(v, eps, eta), eta).value
    return -math.log1p(-_overlap_deficit(1 / (d + 1), d, 1 - eta * gap))


def a_quantum(d: int, eps: float, eta: float = 1.0) -> float:
    """Asymmetric-testing utility of the mechanism on all d**2 SIC states."""
    _check_eta(eta)
    if d not in (2, 3):
        raise CapabilityError(f"closed form available for d in (2, 3), got d={d}")
    _, gap = _sic_noise(d * d, eps)
    mu = 1 - eta * gap
    return max(0.0, math.log(d) + xlogx(1 - mu + mu / d) + (d - 1) * xlogx(mu / d))


def a_quantum_numeric(v: int, eps: float, eta: float = 1.0) -> float:
    return utility_a(proposed_mechanism(v, eps, eta), eta).value


# --- classical --------------------------------------------------------------------

def _check_eta(eta: float):
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"eta must lie in (0, 1], got {eta}")


def _check_classical(v: int, eps: float, eta: float):
    if v < 2:
        raise DomainError(f"v must be >= 2, got {v}")
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    _check_eta(eta)


def s_classical_upper(v: int, eps: float, eta: float = 1.0) -> tuple[float, int]:
    """Upper bound on the best symmetric utility of an eps-LDP mechanism.

    Exact at eta = 1. Returns the value and the block size ``k`` attaining
    it (smallest one on ties).
    """
    _check_classical(v, eps, eta)
    terms = [k * (v - k) / vertex_mean(v, k, eps) for k in range(v + 1)]
    k_opt = int(np.argmax(terms))
    x = (v + eta ** 2 - 1) * math.expm1(eps / 2) ** 2 / (v * v * (v - 1)) * terms[k_opt]
    return -math.log1p(-x), k_opt


def a_classical(v: int, eps: float, eta: float = 1.0) -> tuple[float, int]:
    """Best asymmetric utility of an eps-LDP mechanism, and its block size."""
    _check_classical(v, eps, eta)
    terms = [vertex_divergence(v, k, eps, eta) / (v * vertex_mean(v, k, eps)) for k in range(v + 1)]
    k_opt = int(np.argmax(terms))
    return max(0.0, terms[k_opt]), k_opt


# --- small-eps behaviour ------------------------------------------------------------

def s_quantum_coefficient(v: int) -> float:
    return 1 / (4 * sic_dimension(v))


def s_classical_coefficient(v: int) -> float:
    return v / (16 * (v - 1)) if v % 2 == 0 else (v + 1) / (16 * v)


def a_quantum_coefficient(d: int) -> float:
    return (d * d - 1) / (2 * d ** 3)


def a_classical_coefficient(v: int) -> float:
    return 1 / 8 if v % 2 == 0 else (v * v - 1) / (8 * v * v)


def corollary_ratio_limits(v: int) -> tuple[float, float | None]:
    """Lower bounds on lim_{eps->0} quantum/classical for both utilities.

    The asymmetric bound is only defined when v is a perfect square.
    """
    if v < 2:
        raise DomainError(f"v must be >= 2, got {v}")
    d = sic_dimension(v)
    s = 4 * (v - 1) / (v * d) if v % 2 == 0 else 4 * v / ((v + 1) * d)
    if not is_square(v):
        return s, None
    a = 4 * (d * d - 1) / d ** 3 if v % 2 == 0 else 4 * d / (d * d + 1)
    return s, a


# --- sweeps -----------------------------------------------------------------------

@dataclass(frozen=True)
class PutCurvePoint:
    v: int
    eta: float
    eps: float
    s_quantum: float
    s_classical_upper: float
    ratio_s: float
    a_quantum: float | None
    a_classical: float
    ratio_a: float | None
    k_opt_s: int
    k_opt_a: int
    s_provenance: str
    a_provenance: str | None

    @property
    def quantum_provenance(self) -> str:
        kinds = {self.s_provenance} | ({self.a_provenance} if self.a_provenance else set())
        return kinds.pop() if len(kinds) == 1 else "mixed"

    def as_dict(self) -> dict:
        out = asdict(self)
        out["quantum_provenance"] = self.quantum_provenance
        return out


def _ratio(num, den):
    if num is None:
        return None
    return num / den if den > 0 else math.nan


def curve_point(v: int, eta: float, eps: float, numeric_fallback: bool = True) -> PutCurvePoint:
    sq_closed = s_quantum_has_closed_form(v, eta)
    sq = s_quantum(v, eps, eta)
    if is_square(v):
        aq, a_prov = a_quantum(math.isqrt(v), eps, eta), CLOSED
    elif numeric_fallback:
        aq, a_prov = a_quantum_numeric(v, eps, eta), NUMERIC
    else:
        aq, a_prov = None, None
    sc, ks = s_classical_upper(v, eps, eta)
    ac, ka = a_classical(v, eps, eta)
    return PutCurvePoint(
        v=v, eta=eta, eps=float(eps),
        s_quantum=sq, s_classical_upper=sc, ratio_s=_ratio(sq, sc),
        a_quantum=aq, a_classical=ac, ratio_a=_ratio(aq, ac),
        k_opt_s=ks, k_opt_a=ka,
        s_provenance=CLOSED if sq_closed else NUMERIC, a_provenance=a_prov,
    )


def curve_sweep(v: int, eta: float, eps_grid, numeric_fallback: bool = True,
                workers: int | None = None) -> list[PutCurvePoint]:
    """One :class:`PutCurvePoint` per eps, in grid order."""
    grid = [float(e) for e in eps_grid]
    if not grid or any(e <= 0 for e in grid):
        raise DomainError("eps grid must be non-empty and positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("eps grid must be strictly increasing")
    if not 2 <= v <= 9:
        raise CapabilityError(f"curves cover 2 <= v <= 9, got v={v}")

    def point(eps):
        return curve_point(v, eta, eps, numeric_fallback)

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(point, grid))
    return [point(e) for e in grid]
