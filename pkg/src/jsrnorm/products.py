"""Brute-force bounds on the joint spectral radius via product enumeration.

For a set of r matrices and a product length n, the classical two-sided
estimates are

    lower = max over all r^n products P of  spectral_radius(P)^(1/n),
    upper = max over all r^n products P of  ||P||^(1/n),

with the Euclidean operator norm.  Both sandwich the joint spectral
radius for every n, which makes them a useful independent check on the
iterative construction.  The trace variant max |tr P|^(1/n) recovers the
same limit as n grows but is not a bound at any fixed n.
"""

import os
from dataclasses import dataclass

import numpy as np

from .linalg import (
    apply,
    as_matrix_set,
    euclidean_operator_norm,
    spectral_radius,
)

DEFAULT_PRODUCT_CAP = 2**20
PRODUCT_CAP_ENV = "JSR_PRODUCT_CAP"


class ProductCapExceededError(ValueError):
    def __init__(self, total, cap):
        self.total = total
        self.cap = cap
        super().__init__(
            f"enumeration of {total} products exceeds the cap of {cap}; "
            f"reduce the length or raise the cap ({PRODUCT_CAP_ENV})"
        )


@dataclass(frozen=True)
class BoundReport:
    """All three length-n estimates plus the enumeration size."""

    n: int
    lower: float
    upper: float
    trace: float
    products_evaluated: int


def product_cap():
    """Enumeration cap, overridable through the environment."""
    raw = os.environ.get(PRODUCT_CAP_ENV)
    return DEFAULT_PRODUCT_CAP if raw is None else int(raw)


def enumerate_products(matrices, n, cap=None):
    """All r^n products of n matrices from the set, as an (r^n, 2, 2) stack.

    Built level by level: each pass left-multiplies every current product
    by every matrix, so the total work is r^n matrix multiplies.
    """
    matrices = as_matrix_set(matrices)
    if n < 1:
        raise ValueError("product length must be at least 1")
    cap = product_cap() if cap is None else cap
    total = matrices.shape[0] ** n
    if total > cap:
        raise ProductCapExceededError(total, cap)
    prods = matrices
    for _ in range(n - 1):
        prods = np.matmul(matrices[:, None], prods[None, :]).reshape(-1, 2, 2)
    return prods


def lower_bound(matrices, n, cap=None):
    """max spectral_radius(P)^(1/n) over all length-n products P."""
    prods = enumerate_products(matrices, n, cap)
    return float(np.max(spectral_radius(prods)) ** (1.0 / n))


def upper_bound(matrices, n, cap=None):
    """max ||P||^(1/n) over all length-n products P (Euclidean operator norm)."""
    prods = enumerate_products(matrices, n, cap)
    return float(np.max(euclidean_operator_norm(prods)) ** (1.0 / n))


def trace_estimate(matrices, n, cap=None):
    """max |tr(P)|^(1/n) over all length-n products P.

    A limsup-type estimate of the joint spectral radius; unlike
    :func:`lower_bound` and :func:`upper_bound` it bounds nothing at a
    fixed n.
    """
    prods = enumerate_products(matrices, n, cap)
    traces = np.abs(prods[:, 0, 0] + prods[:, 1, 1])
    return float(np.max(traces) ** (1.0 / n))


def bound_report(matrices, n, cap=None):
    """Compute all three estimates over a single enumeration pass."""
    matrices = as_matrix_set(matrices)
    prods = enumerate_products(matrices, n, cap)
    traces = np.abs(prods[:, 0, 0] + prods[:, 1, 1])
    return BoundReport(
        n=n,
        lower=float(np.max(spectral_radius(prods)) ** (1.0 / n)),
        upper=float(np.max(euclidean_operator_norm(prods)) ** (1.0 / n)),
        trace=float(np.max(traces) ** (1.0 / n)),
        products_evaluated=prods.shape[0],
    )


def extremal_norm_residual(norm, matrices, rho):
    """Worst violation of extremality of a gauge at level rho.

    Evaluates max_i ||A_i x||/||x|| in the given gauge on every grid
    direction x and returns the excess over rho.  A result <= 0 (up to
    discretization slack) certifies that the gauge is extremal at grid
    resolution.  This path applies the matrices directly to the grid
    directions; it shares no tables with the iteration engine.
    """
    if not rho > 0.0:
        raise ValueError("rho must be positive")
    matrices = as_matrix_set(matrices)
    phi = norm.angles
    units = np.column_stack((np.cos(phi), np.sin(phi)))  # (N, 2)
    images = apply(matrices[:, None], units[None, :])  # (r, N, 2)
    worst = norm.eval(images).max(axis=0)  # (N,)
    return float(np.max(worst / norm.values) - rho)
