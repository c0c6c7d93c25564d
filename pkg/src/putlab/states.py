"""SIC states, depolarised pure states and hypothesis ensembles."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._config import get_tolerances
from .errors import CapabilityError, DomainError, NotPSDError, ValidationError
from .hermitian import as_hermitian, min_eigenvalue

SIC_DIMENSIONS = (2, 3)


def _fiducial(d: int) -> np.ndarray:
    if d == 2:
        cos2 = (1 + 1 / math.sqrt(3)) / 2
        c, s = math.sqrt(cos2), math.sqrt(1 - cos2)
        return np.array([c, np.exp(1j * math.pi / 4) * s])
    if d == 3:
        return np.array([0, 1, -1], dtype=complex) / math.sqrt(2)
    raise CapabilityError(f"SIC states are only available for d in {SIC_DIMENSIONS}, got d={d}")


def weyl_heisenberg(d: int, a: int, b: int) -> np.ndarray:
    """Displacement ``X**a Z**b`` with X|j> = |j+1>, Z|j> = w**j |j>."""
    omega = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(omega ** np.arange(d))
    return np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)


def sic_states(d: int) -> np.ndarray:
    """The d**2 SIC vectors of dimension ``d`` as rows, in (a, b) lexicographic order.

    Generated as the Weyl-Heisenberg orbit of a fixed closed-form fiducial, so
    the family (and any prefix of it) is deterministic.
    """
    if d not in SIC_DIMENSIONS:
        raise CapabilityError(f"SIC states are only available for d in {SIC_DIMENSIONS}, got d={d}")
    fid = _fiducial(d)
    return np.array([weyl_heisenberg(d, a, b) @ fid for a in range(d) for b in range(d)])


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def as_pure_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size < 2:
        raise ValidationError(f"expected a vector of length >= 2, got shape {psi.shape}")
    norm2 = float(np.vdot(psi, psi).real)
    if abs(norm2 - 1) > get_tolerances().norm:
        raise ValidationError(f"state is not normalised (|psi|^2 = {norm2!r})")
    return psi


def as_density_operator(rho) -> np.ndarray:
    tol = get_tolerances()
    rho = as_hermitian(rho)
    tr = np.trace(rho).real
    if abs(tr - 1) > tol.trace:
        raise ValidationError(f"trace is {tr!r}, expected 1")
    lo = min_eigenvalue(rho)
    if lo < -tol.psd:
        raise NotPSDError(f"density operator has negative eigenvalue {lo:.3g}")
    return rho


def depolarized_pure(psi, mu: float) -> np.ndarray:
    """``(mu/d) I + (1 - mu)|psi><psi|`` for ``mu`` in [0, d/(d-1)]."""
    psi = as_pure_state(psi)
    d = psi.size
    if not 0.0 <= mu <= d / (d - 1):
        raise DomainError(f"mu must lie in [0, {d / (d - 1):g}] for d={d}, got {mu}")
    return (mu / d) * np.eye(d) + (1 - mu) * projector(psi)


@dataclass(frozen=True)
class Hypothesis:
    """Smoothed point mass on ``[v]``; ``h = 0`` means the uniform distribution.

    ``h`` is 1-based like the hypothesis labels it represents.
    """
    v: int
    h: int
    eta: float = 1.0

    def __post_init__(self):
        if self.v < 2:
            raise DomainError(f"alphabet size must be >= 2, got {self.v}")
        if not 0 <= self.h <= self.v:
            raise DomainError(f"h must lie in [0, {self.v}], got {self.h}")
        if self.h and not 0.0 < self.eta <= 1.0:
            raise DomainError(f"eta must lie in (0, 1], got {self.eta}")

    def probabilities(self) -> np.ndarray:
        return smoothed_point_mass(self.v, self.h, self.eta)


def smoothed_point_mass(v: int, h: int, eta: float = 1.0) -> np.ndarray:
    p = np.full(v, 1.0 / v)
    if h:
        p *= 1 - eta
        p[h - 1] += eta
    return p


def ensemble_state(mech, hyp: Hypothesis) -> np.ndarray:
    """Mixture ``sum_x P_x Q_x`` of a CQ mechanism's outputs under ``hyp``."""
    outputs = np.asarray(getattr(mech, "outputs", mech))
    if outputs.shape[0] != hyp.v:
        raise ValidationError(
            f"mechanism has {outputs.shape[0]} inputs but hypothesis is over {hyp.v} symbols")
    return np.tensordot(hyp.probabilities(), outputs, axes=1)
