"""Gaussian kernel, Gram matrices and the median bandwidth heuristic."""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from ._validation import check_bandwidth, check_state, check_states
from .exceptions import AllPointsIdentical, DimensionMismatch

__all__ = [
    "GramMatrix",
    "gaussian_kernel",
    "gram_matrix",
    "kernel_row",
    "kernel_matrix",
    "median_heuristic_bandwidth",
]


@dataclass(frozen=True, eq=False)
class GramMatrix:
    entries: np.ndarray
    bandwidth: float

    @property
    def shape(self):
        return self.entries.shape

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def _sq_dists(A, B):
    # Coordinate-wise differences rather than |a|^2 + |b|^2 - 2ab: exact zero
    # on the diagonal and no negative round-off.
    out = np.zeros((A.shape[0], B.shape[0]))
    for k in range(A.shape[1]):
        diff = A[:, k][:, None] - B[:, k][None, :]
        out += diff * diff
    return out


def gaussian_kernel(a, b, s):
    """``exp(-|a - b|^2 / (2 s^2))`` for two states of equal dimension."""
    s = check_bandwidth(s)
    a = check_state(a, name="a")
    b = check_state(b, dim=a.shape[0], name="b")
    return float(np.exp(-_sq_dists(a[None, :], b[None, :])[0, 0] / (2.0 * s * s)))


def kernel_matrix(X, centers, s):
    """Cross-kernel matrix with ``out[j, i] = K(centers[i], X[j])``."""
    s = check_bandwidth(s)
    C = check_states(centers, name="centers")
    X = check_states(X, dim=C.shape[1])
    return np.exp(-_sq_dists(X, C) / (2.0 * s * s))


def kernel_row(x, centers, s):
    """Vector ``k`` with ``k[i] = K(centers[i], x)``."""
    C = check_states(centers, name="centers")
    x = check_state(x, dim=C.shape[1])
    return kernel_matrix(x[None, :], C, s)[0]


def gram_matrix(points, s):
    """Symmetric Gram matrix of ``points``.

    The upper triangle is computed and mirrored into the lower one, so the
    result is exactly symmetric with a unit diagonal.
    """
    s = check_bandwidth(s)
    P = check_states(points, name="points")
    G = np.exp(-_sq_dists(P, P) / (2.0 * s * s))
    lower = np.tril_indices(P.shape[0], -1)
    G[lower] = G.T[lower]
    np.fill_diagonal(G, 1.0)
    return GramMatrix(G, s)


def median_heuristic_bandwidth(points):
    """Lower median of all pairwise Euclidean distances.

    Parameters
    ----------
    points : array-like of shape (n, d)
        At least two points, not all identical.

    Returns
    -------
    float
        The ``(m - 1) // 2``-th smallest of the ``m = n (n - 1) / 2``
        distances.
    """
    P = check_states(points, name="points")
    if P.shape[0] < 2:
        raise DimensionMismatch("median heuristic needs at least 2 points")
    d = pdist(P)
    k = (d.size - 1) // 2
    med = float(np.partition(d, k)[k])
    if med == 0.0:
        raise AllPointsIdentical("median pairwise distance is zero")
    return med
