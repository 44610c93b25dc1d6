"""Closed-form 2x2 linear algebra and matrix-set validation.

Everything here works on plain numpy arrays.  A single matrix is a (2, 2)
array; a matrix set is a (r, 2, 2) stack.  The scalar routines accept
stacked input (..., 2, 2) and reduce over the trailing two axes.
"""

import numpy as np

# Relative tolerance for the "line is mapped onto itself" test.  An
# invariant line is an open condition, so exact arithmetic buys nothing
# at this scale.
COLLINEARITY_TOL = 1e-10

# A matrix counts as a scalar multiple of the identity when the
# off-diagonal mass and the diagonal mismatch vanish at this level.
SCALAR_TOL = 1e-12


class ReducibleSetError(ValueError):
    """The matrices share a common invariant line.

    Attributes
    ----------
    line : ndarray, shape (2,)
        A unit vector spanning the shared invariant line.
    """

    def __init__(self, line):
        self.line = np.asarray(line, dtype=float)
        super().__init__(
            "matrix set is reducible: common invariant line spanned by "
            f"({self.line[0]:.6g}, {self.line[1]:.6g})"
        )


def as_matrix_set(matrices):
    """Validate and convert input to a (r, 2, 2) float64 stack.

    Accepts any nested sequence or array convertible to shape (r, 2, 2)
    with r >= 1; also promotes a single (2, 2) matrix to a singleton set.
    Raises ValueError on wrong shapes or non-finite entries, naming the
    offending matrix index.
    """
    arr = np.asarray(matrices, dtype=float)
    if arr.ndim == 2:
        arr = arr[np.newaxis]
    if arr.ndim != 3 or arr.shape[1:] != (2, 2):
        # Nested lists with ragged or non-2x2 entries land here; report
        # the first bad entry for list-like input.
        if isinstance(matrices, (list, tuple)):
            for i, m in enumerate(matrices):
                if np.asarray(m, dtype=float).shape != (2, 2):
                    raise ValueError(
                        f"matrix {i} has shape {np.asarray(m).shape}, expected (2, 2)"
                    )
        raise ValueError(f"expected shape (r, 2, 2), got {arr.shape}")
    if arr.shape[0] < 1:
        raise ValueError("matrix set must contain at least one matrix")
    if not np.all(np.isfinite(arr)):
        bad = np.where(~np.isfinite(arr).all(axis=(1, 2)))[0][0]
        raise ValueError(f"matrix {bad} contains non-finite entries")
    return arr


def apply(m, x):
    """Matrix-vector product; broadcasts over stacked matrices/vectors."""
    m = np.asarray(m, dtype=float)
    x = np.asarray(x, dtype=float)
    return np.einsum("...ij,...j->...i", m, x)


def spectral_radius(m):
    """Largest eigenvalue magnitude of a 2x2 matrix, in closed form.

    With t = trace and d = det: real eigenvalues give (|t| + sqrt(t^2-4d))/2,
    a complex pair gives sqrt(d).  Vectorized over (..., 2, 2) input.
    """
    m = np.asarray(m, dtype=float)
    t = m[..., 0, 0] + m[..., 1, 1]
    d = m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    disc = t * t - 4.0 * d
    real = disc >= 0.0
    out = np.where(
        real,
        0.5 * (np.abs(t) + np.sqrt(np.where(real, disc, 0.0))),
        np.sqrt(np.where(real, 1.0, d)),
    )
    return out if out.ndim else float(out)


def euclidean_operator_norm(m):
    """Largest singular value of a 2x2 matrix, in closed form.

    Computed from the eigenvalues of m^T m via its trace/discriminant;
    vectorized over (..., 2, 2) input.
    """
    m = np.asarray(m, dtype=float)
    a, b = m[..., 0, 0], m[..., 0, 1]
    c, d = m[..., 1, 0], m[..., 1, 1]
    g11 = a * a + c * c
    g22 = b * b + d * d
    g12 = a * b + c * d
    mean = 0.5 * (g11 + g22)
    # hypot keeps the discriminant nonnegative under rounding
    spread = np.hypot(0.5 * (g11 - g22), g12)
    out = np.sqrt(mean + spread)
    return out if out.ndim else float(out)


def _is_scalar_matrix(m):
    return (
        abs(m[0, 1]) + abs(m[1, 0]) + abs(m[0, 0] - m[1, 1])
        <= SCALAR_TOL * (1.0 + abs(m[0, 0]))
    )


def _real_eigenlines(m):
    """Unit direction vectors of the real eigenlines of a non-scalar 2x2 matrix.

    Returns a list of 0, 1 or 2 unit vectors: none for a complex pair,
    one for a repeated eigenvalue without a full eigenspace, two otherwise.
    """
    t = m[0, 0] + m[1, 1]
    d = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    disc = t * t - 4.0 * d
    scale = t * t + 4.0 * abs(d)
    if disc < -1e-14 * scale:
        return []
    disc = max(disc, 0.0)
    lam_hi = 0.5 * (t + np.sqrt(disc))
    lam_lo = 0.5 * (t - np.sqrt(disc))
    eigvals = [lam_hi] if disc <= 1e-14 * scale else [lam_hi, lam_lo]
    lines = []
    for lam in eigvals:
        # rows of (m - lam I) annihilate the eigenvector; take the more
        # robust of the two candidate kernels
        v1 = np.array([m[0, 1], lam - m[0, 0]])
        v2 = np.array([lam - m[1, 1], m[1, 0]])
        v = v1 if np.hypot(*v1) >= np.hypot(*v2) else v2
        n = np.hypot(*v)
        if n == 0.0:
            # both rows vanished: m is lam*I, excluded by the caller
            continue
        lines.append(v / n)
    return lines


def _line_is_invariant(m, v):
    w = apply(m, v)
    wn = np.hypot(*w)
    if wn == 0.0:
        return True
    return abs(v[0] * w[1] - v[1] * w[0]) <= COLLINEARITY_TOL * wn


def common_invariant_line(matrices):
    """Unit vector spanning a line invariant under every matrix, or None.

    Candidate lines are the real eigenlines of the first non-scalar matrix
    (a scalar multiple of the identity constrains nothing).  An all-scalar
    set leaves every line invariant; (1, 0) is returned for it.
    """
    matrices = as_matrix_set(matrices)
    pivot = None
    for m in matrices:
        if not _is_scalar_matrix(m):
            pivot = m
            break
    if pivot is None:
        return np.array([1.0, 0.0])
    for v in _real_eigenlines(pivot):
        if all(_line_is_invariant(m, v) for m in matrices):
            return v
    return None


def is_irreducible(matrices):
    """True iff the matrices share no common invariant line."""
    return common_invariant_line(matrices) is None
