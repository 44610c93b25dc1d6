"""Max-relaxation construction of a Barabanov norm for 2x2 matrix sets.

The joint spectral radius rho of a finite irreducible matrix set is
certified by a Barabanov norm: a norm for which max_i ||A_i x|| equals
rho*||x|| everywhere.  This module builds one iteratively.  Starting from
the Euclidean gauge, each sweep measures the extreme ratios

    rho_plus  = max over directions of  max_i ||A_i x|| / ||x||,
    rho_minus = min over directions of  max_i ||A_i x|| / ||x||,

blends them into a relaxation factor gamma, lifts the gauge to
max(R, R*/gamma) where R* is the image gauge, and renormalizes at the
direction (1, 0).  rho_minus and rho_plus are genuine lower/upper bounds
for rho, rho_minus never decreases, rho_plus never increases, and both
converge to rho; the gap at termination is the a posteriori error bar.

All gauges live on the uniform angular grid of :class:`~jsrnorm.gauge.PolarNorm`.
Because a 2x2 matrix maps the direction phi to a fixed image direction
with a fixed stretch, the per-sweep work reduces to table lookups: the
stretch factors and image angles are precomputed once per run.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .gauge import PolarNorm, grid_angles
from .linalg import ReducibleSetError, as_matrix_set, common_invariant_line

AVERAGING_KINDS = ("arithmetic", "geometric", "harmonic")


@dataclass(frozen=True)
class TransformTables:
    """Per-matrix direction maps on the angular grid.

    gains[i, k] is the Euclidean length of A_i applied to the unit vector
    at grid angle phi_k; angles[i, k] is the direction of that image
    (NaN where the gain vanishes and the direction is undefined).
    """

    gains: np.ndarray
    angles: np.ndarray

    @property
    def matrix_count(self):
        return self.gains.shape[0]

    @property
    def node_count(self):
        return self.gains.shape[1]


@dataclass(frozen=True)
class IterationRecord:
    n: int
    rho_minus: float
    rho_plus: float
    gamma: float

    @property
    def gap(self):
        return self.rho_plus - self.rho_minus


@dataclass
class RunConfig:
    """Iteration parameters; defaults match the reference setup."""

    node_count: int = 3000
    tol_abs: float = 1e-3
    max_iterations: int = 1000
    averaging: str = "arithmetic"
    allow_reducible: bool = False

    def validate(self):
        if self.node_count < 8:
            raise ValueError("node_count must be at least 8")
        if self.node_count % 2:
            raise ValueError(
                "node_count must be even so the grid contains the "
                "normalization direction phi = 0"
            )
        if not self.tol_abs > 0.0:
            raise ValueError("tol_abs must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.averaging not in AVERAGING_KINDS:
            raise ValueError(
                f"unknown averaging rule {self.averaging!r}; "
                f"choose one of {', '.join(AVERAGING_KINDS)}"
            )


@dataclass
class RunResult:
    """Outcome of a run: bounds, point estimate, final gauge, history."""

    status: str  # "converged" or "max_iters_exceeded"
    rho_lower: float
    rho_upper: float
    rho_estimate: float
    norm: PolarNorm
    history: list = field(repr=False)
    residual: float = 0.0

    @property
    def iterations(self):
        return len(self.history)


def precompute(matrices, node_count):
    """Tabulate image lengths and image angles for every grid direction."""
    matrices = as_matrix_set(matrices)
    phi = grid_angles(node_count)
    units = np.stack((np.cos(phi), np.sin(phi)))  # (2, N)
    images = matrices @ units  # (r, 2, N)
    gains = np.hypot(images[:, 0, :], images[:, 1, :])
    with np.errstate(invalid="ignore"):
        angles = np.arctan2(images[:, 1, :], images[:, 0, :])
    angles = np.where(gains > 0.0, angles, np.nan)
    # keep angles in [-pi, pi): atan2 returns +pi on the negative real axis
    angles = np.where(angles == np.pi, -np.pi, angles)
    return TransformTables(gains=gains, angles=angles)


def images_gauge(tables, norm):
    """Gauge of the worst-case image per grid node.

    Entry k is max_i gains[i,k] * R(angles[i,k]): the largest norm of
    A_i applied to the unit vector at phi_k, measured in the current
    gauge.  Matrices that annihilate the direction contribute zero.
    """
    if tables.node_count != norm.node_count:
        raise ValueError(
            f"table grid ({tables.node_count}) does not match gauge grid "
            f"({norm.node_count})"
        )
    safe_angles = np.where(np.isnan(tables.angles), 0.0, tables.angles)
    contrib = tables.gains * norm.eval_direction(safe_angles)
    contrib = np.where(tables.gains > 0.0, contrib, 0.0)
    return contrib.max(axis=0)


def bounds(norm, rstar):
    """Extreme ratios (rho_minus, rho_plus) of the image gauge to the gauge."""
    rstar = np.asarray(rstar, dtype=float)
    if rstar.shape != norm.values.shape:
        raise ValueError("image gauge length does not match the grid")
    ratio = rstar / norm.values
    return float(ratio.min()), float(ratio.max())


def average(rule, t, s):
    """Blend two positive bounds with the named mean.

    All three rules return t for t == s, a value strictly between the
    inputs otherwise, and scale linearly under t, s -> c*t, c*s.
    """
    if not (t > 0.0 and s > 0.0):
        raise ValueError(f"averaging needs positive inputs, got ({t}, {s})")
    if rule == "arithmetic":
        return 0.5 * (t + s)
    if rule == "geometric":
        return float(np.sqrt(t) * np.sqrt(s))
    if rule == "harmonic":
        return 2.0 * t * s / (t + s)
    raise ValueError(
        f"unknown averaging rule {rule!r}; choose one of {', '.join(AVERAGING_KINDS)}"
    )


def relax(norm, rstar, gamma):
    """Pointwise max of the gauge with the image gauge shrunk by gamma.

    The output dominates the input at every node, which is what makes the
    bound sequences monotone.
    """
    if not gamma > 0.0:
        raise ValueError("relaxation factor must be positive")
    return PolarNorm(np.maximum(norm.values, np.asarray(rstar) / gamma))


def normalize(norm):
    """Rescale so the gauge equals 1 at the node phi = 0."""
    n = norm.node_count
    if n % 2:
        raise ValueError("normalization needs the phi = 0 node (even grid)")
    return PolarNorm(norm.values / norm.values[n // 2])


def step(tables, norm, rule="arithmetic", n=0):
    """One sweep: measure bounds, relax the gauge, renormalize.

    Returns the iteration record (indexed n for the caller) and the next
    gauge.
    """
    rstar = images_gauge(tables, norm)
    rho_minus, rho_plus = bounds(norm, rstar)
    gamma = average(rule, rho_minus, rho_plus)
    new_norm = normalize(relax(norm, rstar, gamma))
    return IterationRecord(n, rho_minus, rho_plus, gamma), new_norm


def barabanov_residual(tables, norm, rho):
    """Worst node-wise violation of the Barabanov identity at level rho.

    max_k |R*(phi_k)/R(phi_k) - rho|; zero exactly when the gauge
    satisfies max_i ||A_i x|| = rho ||x|| on every grid direction.
    """
    if not rho > 0.0:
        raise ValueError("rho must be positive")
    rstar = images_gauge(tables, norm)
    return float(np.max(np.abs(rstar / norm.values - rho)))


def active_switch_count(tables, norm):
    """Number of grid transitions where the dominating matrix changes.

    Walks the grid cyclically and counts indices where the argmax of
    gains[i, k] * R(angles[i, k]) differs from the argmax at the next
    node; ties go to the lower matrix index.  Needs at least two matrices.
    """
    if tables.matrix_count < 2:
        raise ValueError("switch count needs at least two matrices")
    safe_angles = np.where(np.isnan(tables.angles), 0.0, tables.angles)
    contrib = tables.gains * norm.eval_direction(safe_angles)
    contrib = np.where(tables.gains > 0.0, contrib, 0.0)
    winners = contrib.argmax(axis=0)
    return int(np.count_nonzero(winners != np.roll(winners, -1)))


def run(matrices, config=None):
    """Iterate until the bound gap closes or the sweep budget runs out.

    Parameters
    ----------
    matrices : array-like, shape (r, 2, 2)
        The matrix set.  Must be irreducible unless
        ``config.allow_reducible`` is set; a reducible set raises
        :class:`~jsrnorm.linalg.ReducibleSetError` naming the shared line.
    config : RunConfig, optional

    Returns
    -------
    RunResult
        Final bounds, their midpoint as the point estimate, the computed
        gauge, the per-sweep history, and the Barabanov residual of the
        gauge at the estimate.
    """
    matrices = as_matrix_set(matrices)
    cfg = config or RunConfig()
    cfg.validate()
    line = common_invariant_line(matrices)
    if line is not None:
        if not cfg.allow_reducible:
            raise ReducibleSetError(line)
        warnings.warn(
            "matrix set is reducible; the iteration may not converge",
            stacklevel=2,
        )
    tables = precompute(matrices, cfg.node_count)
    norm = PolarNorm.euclidean(cfg.node_count)
    history = []
    status = "max_iters_exceeded"
    for n in range(cfg.max_iterations):
        record, norm = step(tables, norm, cfg.averaging, n)
        history.append(record)
        if record.gap <= cfg.tol_abs:
            status = "converged"
            break
    rho_lower = history[-1].rho_minus
    rho_upper = history[-1].rho_plus
    rho_estimate = 0.5 * (rho_lower + rho_upper)
    return RunResult(
        status=status,
        rho_lower=rho_lower,
        rho_upper=rho_upper,
        rho_estimate=rho_estimate,
        norm=norm,
        history=history,
        residual=barabanov_residual(tables, norm, rho_estimate),
    )
