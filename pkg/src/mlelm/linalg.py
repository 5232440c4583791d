"""Moore-Penrose pseudoinverse and minimum-norm least squares.

numpy supplies the SVD; truncation and reconstruction happen here so the
rank cutoff is explicit and overridable.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericError, ShapeError


def as_dense(a, name="matrix") -> np.ndarray:
    """Validate and return ``a`` as a finite 2-D float64 array."""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        i, j = np.argwhere(~np.isfinite(arr))[0]
        raise NumericError(f"{name} has non-finite entry {arr[i, j]} at ({i}, {j})")
    return arr


def default_tolerance(singular_values, shape) -> float:
    """``max(rows, cols) * sigma_max * eps``, the usual rank cutoff."""
    smax = float(singular_values[0]) if len(singular_values) else 0.0
    return max(shape) * smax * np.finfo(np.float64).eps


def pseudoinverse(a, rank_tolerance=None) -> np.ndarray:
    """Moore-Penrose pseudoinverse computed from a thin SVD.

    Parameters
    ----------
    a : array_like of shape (m, n)
        Nonempty finite matrix.
    rank_tolerance : float or None
        Singular values ``<= rank_tolerance`` are treated as zero.  ``None``
        (or ``"auto"``) selects :func:`default_tolerance`.

    Returns
    -------
    ndarray of shape (n, m)
    """
    a = as_dense(a, "A")
    if a.size == 0:
        raise ShapeError(f"cannot pseudo-invert an empty {a.shape} matrix")
    if rank_tolerance is not None and rank_tolerance != "auto":
        rank_tolerance = float(rank_tolerance)
        if not rank_tolerance >= 0.0:
            raise NumericError(f"rank tolerance must be nonnegative, got {rank_tolerance}")
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD of {a.shape} matrix did not converge: {exc}") from exc

    if rank_tolerance is None or rank_tolerance == "auto":
        rank_tolerance = default_tolerance(s, a.shape)
    keep = s > rank_tolerance
    # V diag(1/s) U^T over the retained singular triplets
    return (vt[keep].T / s[keep]) @ u[:, keep].T


def solve_output_weights(h, y, rank_tolerance=None) -> np.ndarray:
    """Minimum-norm least-squares solution ``H^+ Y``.

    Parameters
    ----------
    h : array_like of shape (N, N')
    y : array_like of shape (N, L)
    """
    h = as_dense(h, "H")
    y = as_dense(y, "Y")
    if h.shape[0] != y.shape[0]:
        raise ShapeError(f"H has {h.shape[0]} rows but Y has {y.shape[0]}")
    return pseudoinverse(h, rank_tolerance) @ y
