"""Piecewise-linear representation of a planar norm in polar form.

A norm in the plane is stored through its radial gauge: the value of the
norm on each unit-circle direction.  The gauge is sampled on a uniform
periodic grid of N angles phi_k = -pi + 2*pi*k/N and linearly interpolated
in between, so the represented unit ball is a convex-ish polygon with N
vertices at radii 1/R_k.
"""

import numpy as np

# Engine-produced gauges are centrally symmetric and convex up to
# floating-point/discretization noise; these are the monitoring levels.
SYMMETRY_TOL = 1e-9
CONVEXITY_TOL = 1e-6


def grid_angles(node_count):
    """The uniform angular grid -pi + 2*pi*k/N, k = 0..N-1."""
    return -np.pi + 2.0 * np.pi * np.arange(node_count) / node_count


class PolarNorm:
    """A planar norm given by gauge values on a uniform angular grid.

    Parameters
    ----------
    values : array-like, shape (N,)
        Positive finite gauge values R_k at the grid angles, N >= 8.

    The instance is immutable; operations return new objects.
    """

    def __init__(self, values):
        values = np.array(values, dtype=float)
        if values.ndim != 1 or values.size < 8:
            raise ValueError("gauge needs a 1-d array of at least 8 node values")
        if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
            raise ValueError("gauge values must be finite and positive")
        values.setflags(write=False)
        self.values = values

    @classmethod
    def euclidean(cls, node_count):
        """The constant gauge R == 1 (the Euclidean norm)."""
        return cls(np.ones(node_count))

    @property
    def node_count(self):
        return self.values.size

    @property
    def angles(self):
        return grid_angles(self.values.size)

    def eval_direction(self, phi):
        """Gauge value R(phi) by periodic linear interpolation.

        Accepts scalars or arrays; any finite angle is wrapped into the
        grid period.
        """
        phi = np.asarray(phi, dtype=float)
        n = self.values.size
        u = (phi + np.pi) * (n / (2.0 * np.pi))
        k = np.floor(u)
        frac = u - k
        k0 = k.astype(np.int64) % n
        k1 = (k0 + 1) % n
        out = self.values[k0] * (1.0 - frac) + self.values[k1] * frac
        return float(out) if out.ndim == 0 else out

    def eval(self, x):
        """Norm of a vector (or stack of vectors along the last axis)."""
        x = np.asarray(x, dtype=float)
        r = np.hypot(x[..., 0], x[..., 1])
        phi = np.arctan2(x[..., 1], x[..., 0])
        out = r * self.eval_direction(phi)
        return float(out) if np.ndim(out) == 0 else out

    def unit_ball(self):
        """Vertices of the unit sphere polyline, shape (N, 2).

        Vertex k sits at distance 1/R_k along the grid direction phi_k;
        the polyline closes periodically from the last vertex to the first.
        """
        phi = self.angles
        return np.column_stack((np.cos(phi), np.sin(phi))) / self.values[:, None]

    def __repr__(self):
        return f"PolarNorm(n={self.values.size})"


def eccentricity(p, q):
    """How far two same-grid gauges are from proportional: max ratio over min ratio.

    Equals 1 exactly when p is a positive multiple of q, and is symmetric
    in its arguments.
    """
    if p.node_count != q.node_count:
        raise ValueError(
            f"gauge grids differ: {p.node_count} vs {q.node_count} nodes"
        )
    ratio = p.values / q.values
    return float(ratio.max() / ratio.min())


def symmetry_defect(p):
    """Largest relative mismatch between antipodal gauge values.

    Zero for a centrally symmetric gauge; requires an even node count so
    that antipodes land on nodes.
    """
    n = p.node_count
    if n % 2:
        raise ValueError("symmetry defect needs an even node count")
    opposite = np.roll(p.values, -(n // 2))
    return float(np.max(np.abs(p.values - opposite) / p.values))


def convexity_defect(p):
    """Signed convexity measure of the unit-ball polyline.

    Minimum over vertices of the cross product of the incoming and
    outgoing edges, normalized by their lengths.  Nonnegative means the
    polyline turns consistently counterclockwise, i.e. is convex.
    """
    pts = p.unit_ball()
    edges = np.roll(pts, -1, axis=0) - pts
    incoming = np.roll(edges, 1, axis=0)
    cross = incoming[:, 0] * edges[:, 1] - incoming[:, 1] * edges[:, 0]
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    return float(np.min(cross / (np.roll(lengths, 1) * lengths)))
