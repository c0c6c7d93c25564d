"""Central tolerance record shared by every module."""
from __future__ import annotations

import contextlib
import dataclasses
import json
import os
from dataclasses import dataclass

ENV_VAR = "PUTLAB_TOLERANCE"


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-12      # |m - m^H| entrywise
    psd: float = 1e-9             # most negative eigenvalue still called PSD
    eig_clamp: float = 1e-12      # eigenvalues below this * max|eig| are zero
    trace: float = 1e-10
    norm: float = 1e-12           # pure-state normalisation
    stochastic: float = 1e-12     # row sums / probability vectors
    ldp: float = 1e-12            # additive slack in the classical LDP test
    qldp: float = 1e-9            # additive slack in the operator QLDP test
    zero_overlap: float = 1e-20   # squared overlaps below this count as orthogonal
    support: float = 1e-12        # mass leaking outside a support before D = inf
    s_xtol: float = 1e-10         # golden-section bracket width over s
    s_grid: int = 64              # seeding scan for the s minimisation
    max_dim: int = 8


_current = Tolerances()


def get_tolerances() -> Tolerances:
    return _current


def set_tolerances(tol: Tolerances | None = None, **changes) -> Tolerances:
    """Replace the active record (or patch fields of it); returns the old one."""
    global _current
    old = _current
    base = tol if tol is not None else _current
    _current = dataclasses.replace(base, **changes)
    return old


@contextlib.contextmanager
def override_tolerances(**changes):
    old = set_tolerances(**changes)
    try:
        yield _current
    finally:
        set_tolerances(old)


def tolerances_from_env(value: str | None = None) -> Tolerances:
    """Parse ``PUTLAB_TOLERANCE``.

    A bare number sets both privacy-check slacks (``psd``, ``qldp``, ``ldp``);
    a JSON object patches named fields.
    """
    raw = os.environ.get(ENV_VAR) if value is None else value
    if raw is None or not raw.strip():
        return _current
    raw = raw.strip()
    try:
        x = float(raw)
    except ValueError:
        fields = json.loads(raw)
        if not isinstance(fields, dict):
            raise ValueError(f"{ENV_VAR} must be a number or a JSON object")
        known = {f.name for f in dataclasses.fields(Tolerances)}
        unknown = set(fields) - known
        if unknown:
            raise ValueError(f"unknown tolerance fields: {sorted(unknown)}")
        return dataclasses.replace(_current, **fields)
    if not x > 0:
        raise ValueError(f"{ENV_VAR} must be positive, got {raw}")
    return dataclasses.replace(_current, psd=x, qldp=x, ldp=x)
