"""Chernoff information, relative entropy and the two testing utilities.

All logarithms are natural, so every quantity is in nats. Infinite values
(disjoint supports) are returned as ``math.inf`` explicitly rather than
through overflow.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ._config import get_tolerances
from .errors import ValidationError
from .hermitian import EigenSystem, psd_eig, spectral_power
from .mechanisms import CQMechanism, as_stochastic
from .states import Hypothesis, as_density_operator, ensemble_state, smoothed_point_mass

INVPHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class UtilityReport:
    value: float
    s_opt: float | None = None
    argmin: tuple | int | None = None

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)


def golden_section(f, lo: float, hi: float, xtol: float):
    """Minimise a unimodal ``f`` on [lo, hi]; returns ``(x, f(x))``."""
    a, b = lo, hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def minimize_on_unit_interval(f, grid: int | None = None, xtol: float | None = None):
    """Minimise a convex function of s on [0, 1].

    A coarse scan picks the bracket, golden-section refines it; the scan
    points themselves (including both endpoints) stay candidates, so a
    minimum sitting on the boundary is found exactly.
    """
    tol = get_tolerances()
    grid = tol.s_grid if grid is None else grid
    xtol = tol.s_xtol if xtol is None else xtol
    s = np.linspace(0.0, 1.0, grid + 1)
    vals = np.array([f(x) for x in s])
    i = int(np.argmin(vals))
    best = (float(s[i]), float(vals[i]))
    lo, hi = s[max(i - 1, 0)], s[min(i + 1, grid)]
    x, fx = golden_section(f, lo, hi, xtol)
    if fx < best[1]:
        best = (float(x), float(fx))
    return best


class _Spectrum:
    """Eigenvalues and eigenvectors of a state, clamped for the support convention."""

    def __init__(self, es: EigenSystem):
        self.values = es.eigenvalues
        self.vectors = es.eigenvectors

    @classmethod
    def of_state(cls, rho):
        return cls(psd_eig(as_density_operator(rho)))


def _overlaps(a: _Spectrum, b: _Spectrum) -> np.ndarray:
    o = np.abs(a.vectors.conj().T @ b.vectors) ** 2
    o[o < get_tolerances().zero_overlap] = 0.0
    return o


def _chernoff_kernel(p: np.ndarray, r: np.ndarray, overlap: np.ndarray | None) -> UtilityReport:
    """``-log min_s sum_ij p_i**s r_j**(1-s) O_ij`` (O = identity when None)."""
    if overlap is None:
        def phi(s):
            return float(np.dot(spectral_power(p, s), spectral_power(r, 1 - s)))
    else:
        def phi(s):
            return float(spectral_power(p, s) @ overlap @ spectral_power(r, 1 - s))
    s_opt, phi_min = minimize_on_unit_interval(phi)
    if phi_min <= 0:
        return UtilityReport(math.inf, s_opt)
    return UtilityReport(max(0.0, -math.log(phi_min)), s_opt)


def quantum_chernoff(rho, sigma) -> UtilityReport:
    """Chernoff information ``-log min_s Tr(rho**s sigma**(1-s))``."""
    a, b = _Spectrum.of_state(rho), _Spectrum.of_state(sigma)
    if a.values.size != b.values.size:
        raise ValidationError("states have different dimensions")
    return _chernoff_kernel(a.values, b.values, _overlaps(a, b))


def as_distribution(p) -> np.ndarray:
    tol = get_tolerances().stochastic
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or np.any(p < -tol) or abs(p.sum() - 1) > tol:
        raise ValidationError("not a probability vector")
    return np.clip(p, 0.0, None)


def classical_chernoff(p, r) -> UtilityReport:
    """Chernoff information of two distributions, with ``0**s 0**(1-s) = 0``."""
    p, r = as_distribution(p), as_distribution(r)
    if p.size != r.size:
        raise ValidationError("distributions have different lengths")
    return _chernoff_kernel(p, r, None)


def _relative_entropy_kernel(a: np.ndarray, b: np.ndarray, overlap: np.ndarray) -> float:
    tol = get_tolerances()
    outside = b <= 0
    leak = float(a @ overlap[:, outside].sum(axis=1)) if outside.any() else 0.0
    if leak > tol.support:
        return math.inf
    pos_a = a > 0
    neg_entropy = float(np.sum(a[pos_a] * np.log(a[pos_a])))
    logb = np.zeros_like(b)
    logb[~outside] = np.log(b[~outside])
    cross = float(a @ overlap @ logb)
    return max(0.0, neg_entropy - cross)


def quantum_relative_entropy(rho, sigma) -> float:
    """``Tr rho (log rho - log sigma)``; infinite if supp rho is not inside supp sigma."""
    a, b = _Spectrum.of_state(rho), _Spectrum.of_state(sigma)
    if a.values.size != b.values.size:
        raise ValidationError("states have different dimensions")
    return _relative_entropy_kernel(a.values, b.values, _overlaps(a, b))


def classical_relative_entropy(p, r) -> float:
    p, r = as_distribution(p), as_distribution(r)
    if p.size != r.size:
        raise ValidationError("distributions have different lengths")
    return _relative_entropy_kernel(p, r, np.eye(p.size))


# --- utilities of a mechanism ---------------------------------------------------

def _is_quantum(mech) -> bool:
    if isinstance(mech, CQMechanism):
        return True
    return np.asarray(mech).ndim == 3


def _ensembles(mech, eta: float):
    """Output ensembles for h = 0 (uniform), 1, ..., v."""
    if _is_quantum(mech):
        outputs = np.asarray(getattr(mech, "outputs", mech))
        v = outputs.shape[0]
        return v, [ensemble_state(outputs, Hypothesis(v, h, eta)) for h in range(v + 1)]
    q = as_stochastic(mech)
    v = q.shape[0]
    return v, [q.T @ smoothed_point_mass(v, h, eta) for h in range(v + 1)]


def utility_s(mech, eta: float = 1.0) -> UtilityReport:
    """Symmetric-testing exponent: smallest pairwise Chernoff information
    among the smoothed-point-mass ensembles. Works for CQ mechanisms and for
    row-stochastic matrices."""
    Hypothesis(2, 1, eta)  # domain check on eta
    v, ens = _ensembles(mech, eta)
    best = UtilityReport(math.inf)
    if _is_quantum(mech):
        spectra = [_Spectrum.of_state(rho) for rho in ens]
        for h, hp in itertools.combinations(range(1, v + 1), 2):
            rep = _chernoff_kernel(spectra[h].values, spectra[hp].values,
                                   _overlaps(spectra[h], spectra[hp]))
            if rep.value < best.value or best.argmin is None:
                best = UtilityReport(rep.value, rep.s_opt, (h, hp))
    else:
        for h, hp in itertools.combinations(range(1, v + 1), 2):
            rep = _chernoff_kernel(ens[h], ens[hp], None)
            if rep.value < best.value or best.argmin is None:
                best = UtilityReport(rep.value, rep.s_opt, (h, hp))
    return best


def utility_a(mech, eta: float = 1.0) -> UtilityReport:
    """Asymmetric-testing exponent: min over h of D(ensemble_h || uniform ensemble)."""
    Hypothesis(2, 1, eta)
    v, ens = _ensembles(mech, eta)
    values = []
    if _is_quantum(mech):
        spectra = [_Spectrum.of_state(rho) for rho in ens]
        ref = spectra[0]
        for h in range(1, v + 1):
            values.append(_relative_entropy_kernel(spectra[h].values, ref.values,
                                                   _overlaps(spectra[h], ref)))
    else:
        eye = np.eye(len(ens[0]))
        for h in range(1, v + 1):
            values.append(_relative_entropy_kernel(ens[h], ens[0], eye))
    h = int(np.argmin(values))
    return UtilityReport(float(values[h]), None, h + 1)
