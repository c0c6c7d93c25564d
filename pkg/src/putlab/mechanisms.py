"""Quantum and classical privacy mechanisms and their privacy checks."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._config import get_tolerances
from .errors import CapabilityError, DomainError, PreconditionError, ValidationError
from .hermitian import min_eigenvalue
from .states import as_density_operator, depolarized_pure, sic_states

MAX_EXTREMAL_V = 12


def sic_dimension(v: int) -> int:
    """Smallest d with d**2 >= v."""
    return math.isqrt(v - 1) + 1


@dataclass(frozen=True)
class CQMechanism:
    """Classical-quantum channel: one density operator per input symbol."""
    outputs: np.ndarray
    mu: float | None = None
    eps: float | None = None
    eta: float | None = None

    def __post_init__(self):
        out = np.asarray(self.outputs, dtype=complex)
        if out.ndim != 3 or out.shape[1] != out.shape[2]:
            raise ValidationError(f"outputs must have shape (v, d, d), got {out.shape}")
        for rho in out:
            as_density_operator(rho)
        out.setflags(write=False)
        object.__setattr__(self, "outputs", out)

    @property
    def v(self) -> int:
        return self.outputs.shape[0]

    @property
    def dim(self) -> int:
        return self.outputs.shape[1]


def as_stochastic(q) -> np.ndarray:
    tol = get_tolerances().stochastic
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] < 1 or q.shape[1] < 1:
        raise ValidationError(f"expected a 2-d matrix, got shape {q.shape}")
    if np.any(q < -tol):
        raise ValidationError("stochastic matrix has negative entries")
    rows = q.sum(axis=1)
    if np.max(np.abs(rows - 1)) > tol:
        raise ValidationError(f"rows do not sum to 1 (max deviation {np.max(np.abs(rows - 1)):.3g})")
    return q


# --- quantum ---------------------------------------------------------------

@dataclass(frozen=True)
class QldpBounds:
    c_star: float
    g_minus: float
    g_plus: float
    mu_min: float
    mu_max: float


def mu_feasible_interval(c_star: float, d: int, eps: float) -> QldpBounds:
    """Depolarising strengths for which ``(mu/d) I + (1-mu)|psi_x><psi_x|`` is eps-QLDP.

    ``c_star`` is the smallest pairwise squared overlap among the pure states.
    """
    if not 0.0 <= c_star <= 1.0:
        raise DomainError(f"c_star must lie in [0, 1], got {c_star}")
    if d < 2:
        raise DomainError(f"d must be >= 2, got {d}")
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    root = math.sqrt(1 + (1 - c_star) / math.sinh(eps / 2) ** 2)
    g_minus = (1 - root) / 2
    g_plus = (1 + root) / 2
    mu_min = d * g_minus / (d * g_minus - 1)
    mu_max = d * g_plus / (d * g_plus - 1)
    return QldpBounds(c_star, g_minus, g_plus, mu_min, mu_max)


def min_pairwise_overlap(states: np.ndarray) -> float:
    gram = np.abs(states.conj() @ states.T) ** 2
    off = gram[~np.eye(len(states), dtype=bool)]
    return float(off.min())


def proposed_mechanism(v: int, eps: float, eta: float = 1.0, mu: float | None = None) -> CQMechanism:
    """Depolarised SIC-state mechanism on ``v`` inputs.

    Uses the first ``v`` SIC states in dimension ``ceil(sqrt(v))`` and, unless
    ``mu`` is given, the smallest depolarising strength that is still
    eps-QLDP. ``eta`` is only recorded; the channel does not depend on it.
    """
    if not 2 <= v <= 9:
        raise CapabilityError(f"proposed mechanism supports 2 <= v <= 9, got v={v}")
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    d = sic_dimension(v)
    states = sic_states(d)[:v]
    if mu is None:
        mu = mu_feasible_interval(min_pairwise_overlap(states), d, eps).mu_min
    outputs = np.array([depolarized_pure(psi, mu) for psi in states])
    return CQMechanism(outputs, mu=mu, eps=eps, eta=eta)


class PrivacyVerdict(NamedTuple):
    passed: bool
    margin: float           # worst slack; negative means violated
    worst: tuple            # (x, x') for QLDP, (x, x', y) for LDP; 0-based


def verify_qldp(mech, eps: float, tol: float | None = None) -> PrivacyVerdict:
    """Check ``Q_x <= e**eps Q_x'`` for every ordered pair of inputs."""
    tol = get_tolerances().qldp if tol is None else tol
    outputs = np.asarray(getattr(mech, "outputs", mech))
    scale = math.exp(eps)
    margin, worst = math.inf, ()
    for x, xp in itertools.permutations(range(len(outputs)), 2):
        m = min_eigenvalue(scale * outputs[xp] - outputs[x])
        if m < margin:
            margin, worst = m, (x, xp)
    if not worst:
        margin = 0.0
    return PrivacyVerdict(margin >= -tol, margin, worst)


def verify_ldp(q, eps: float, tol: float | None = None) -> PrivacyVerdict:
    """Check ``q[x, y] <= e**eps q[x', y]`` for all x, x', y."""
    tol = get_tolerances().ldp if tol is None else tol
    q = as_stochastic(q)
    # the binding pair in each column is (argmax, argmin)
    hi, lo = q.argmax(axis=0), q.argmin(axis=0)
    cols = np.arange(q.shape[1])
    slack = math.exp(eps) * q[lo, cols] - q[hi, cols]
    y = int(np.argmin(slack))
    margin = float(slack[y])
    return PrivacyVerdict(margin >= -tol, margin, (int(hi[y]), int(lo[y]), y))


# --- block designs ----------------------------------------------------------

@dataclass(frozen=True)
class BlockDesign:
    v: int
    k: int
    lam: int
    r: int
    blocks: tuple = field(repr=False)

    @property
    def b(self) -> int:
        return len(self.blocks)

    def incidence(self) -> np.ndarray:
        """v x b 0/1 matrix, entry (x, y) set when x lies in block y."""
        m = np.zeros((self.v, self.b), dtype=int)
        for y, block in enumerate(self.blocks):
            m[list(block), y] = 1
        return m


def block_design(v: int, blocks) -> BlockDesign:
    """Validate an incidence structure on ``range(v)`` and return it as a design.

    Counts are checked exactly: every block has the same size, every vertex
    lies in the same number of blocks and every pair in the same number.
    """
    blocks = tuple(tuple(sorted(set(b))) for b in blocks)
    if v < 2:
        raise ValidationError(f"need at least 2 vertices, got {v}")
    if not blocks:
        raise ValidationError("a design needs at least one block")
    if any(x < 0 or x >= v for b in blocks for x in b):
        raise ValidationError("block contains a vertex outside range(v)")
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise ValidationError(f"blocks are not uniform: sizes {sorted(sizes)}")
    (k,) = sizes
    degree = [sum(x in b for b in blocks) for x in range(v)]
    if len(set(degree)) != 1:
        raise ValidationError(f"design is not regular: vertex degrees {degree}")
    pairs = {sum(x in b and y in b for b in blocks) for x, y in itertools.combinations(range(v), 2)}
    if len(pairs) != 1:
        raise ValidationError(f"design is not pairwise balanced: pair counts {sorted(pairs)}")
    r, (lam,) = degree[0], pairs
    if k not in (0, 1, v):
        if r * (k - 1) != lam * (v - 1) or len(blocks) * k != v * r:
            raise ValidationError("design violates r(k-1) = lam(v-1) or bk = vr")
    return BlockDesign(v, k, lam, r, blocks)


def complete_design(v: int, k: int) -> BlockDesign:
    """All k-subsets of ``range(v)`` in lexicographic order."""
    if v < 2:
        raise DomainError(f"v must be >= 2, got {v}")
    if not 0 <= k <= v:
        raise DomainError(f"k must lie in [0, {v}], got {k}")
    return block_design(v, itertools.combinations(range(v), k))


def block_design_mechanism(design: BlockDesign, eps: float) -> np.ndarray:
    """Two-valued mechanism: ``e**eps / Z`` on incidences, ``1 / Z`` elsewhere."""
    e = math.exp(eps)
    z = design.r * e + design.b - design.r
    return np.where(design.incidence() == 1, e / z, 1 / z)


def randomized_response(v: int, eps: float) -> np.ndarray:
    return block_design_mechanism(complete_design(v, 1), eps)


# --- extremal mechanisms ------------------------------------------------------

def hypercube_vertices(v: int) -> np.ndarray:
    """v x 2**v 0/1 matrix; column j holds the bits of j, row x being bit x."""
    if not 1 <= v <= MAX_EXTREMAL_V:
        raise CapabilityError(f"extremal matrices support v <= {MAX_EXTREMAL_V}, got v={v}")
    j = np.arange(2 ** v)
    return (j[None, :] >> np.arange(v)[:, None]) & 1


def extremal_matrix(v: int, eps: float) -> np.ndarray:
    """Staircase matrix with entries in {1, e**eps}, one column per vertex of the cube."""
    if v < 2:
        raise CapabilityError(f"extremal matrices need v >= 2, got v={v}")
    return 1.0 + (math.exp(eps) - 1.0) * hypercube_vertices(v)


@dataclass(frozen=True)
class ExtremalMechanism:
    v: int
    eps: float
    theta: np.ndarray

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if theta.shape != (2 ** self.v,):
            raise ValidationError(f"theta must have length 2**v = {2 ** self.v}")
        if np.any(theta < -get_tolerances().stochastic):
            raise ValidationError("theta must be nonnegative")
        resid = np.max(np.abs(extremal_matrix(self.v, self.eps) @ theta - 1))
        if resid > 1e-10:
            raise ValidationError(f"theta does not normalise the rows (residual {resid:.3g})")
        object.__setattr__(self, "theta", theta)

    @property
    def matrix(self) -> np.ndarray:
        return extremal_matrix(self.v, self.eps) * self.theta


def vertex_weights(t: np.ndarray) -> np.ndarray:
    """Product-measure weights on cube vertices with marginals ``t``.

    Vertex j receives prod_x t_x**bit_x(j) (1 - t_x)**(1 - bit_x(j)), so the
    weighted vertex average is exactly ``t``.
    """
    bits = hypercube_vertices(len(t))
    t = np.asarray(t, dtype=float)[:, None]
    return np.prod(np.where(bits == 1, t, 1 - t), axis=0)


def decompose_extremal(q, eps: float) -> tuple[ExtremalMechanism, np.ndarray]:
    """Factor an eps-LDP mechanism as ``extremal_matrix diag(theta) @ post``.

    Each column is rescaled by its minimum so it lies in [1, e**eps]**v, and
    that point is written as a convex combination of cube vertices. Returns
    the extremal mechanism and the row-stochastic post-processing matrix.
    """
    q = as_stochastic(q)
    verdict = verify_ldp(q, eps)
    if not verdict.passed:
        raise PreconditionError(f"input is not {eps}-LDP (margin {verdict.margin:.3g} at {verdict.worst})")
    v, b = q.shape
    e = math.exp(eps)
    col_min = q.min(axis=0)
    weights = np.zeros((2 ** v, b))
    for y in range(b):
        if col_min[y] <= 0:
            continue  # an all-zero column contributes nothing
        t = np.clip((q[:, y] / col_min[y] - 1) / (e - 1), 0.0, 1.0)
        weights[:, y] = col_min[y] * vertex_weights(t)
    zeta = weights.sum(axis=1)
    post = np.zeros_like(weights)
    used = zeta > 0
    post[used] = weights[used] / zeta[used, None]
    post[~used, 0] = 1.0  # unreachable rows: any stochastic row will do
    return ExtremalMechanism(v, eps, zeta), post


def pair_balance(theta: np.ndarray, h: int, hp: int) -> tuple[float, float]:
    """Weights of the columns where exactly one of rows h, h' carries e**eps."""
    v = int(round(math.log2(len(theta))))
    bits = hypercube_vertices(v)
    only_h = (bits[h] == 1) & (bits[hp] == 0)
    only_hp = (bits[h] == 0) & (bits[hp] == 1)
    return float(theta[only_h].sum()), float(theta[only_hp].sum())
