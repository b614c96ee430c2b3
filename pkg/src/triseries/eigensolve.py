"""Self-contained symmetric tridiagonal eigenvalue solver (Sturm bisection).

Only eigenvalues are needed: the finite-difference oracle wants the lowest
few, and the discrete orthogonality masses want all eigenvalues of a small
Jacobi matrix.  The Sturm count is evaluated for a whole vector of trial
points per sweep, which keeps the sequential-in-j recurrence cheap even for
meshes with tens of thousands of points.
"""

from __future__ import annotations

import numpy as np

_TINY = 1e-300


def sturm_counts(diag: np.ndarray, off_sq: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Number of eigenvalues strictly below each x in xs.

    Runs the shifted LDL^T pivot recurrence d_j = (a_j - x) - b_{j-1}^2/d_{j-1}
    and counts negative pivots; zero pivots are nudged to keep the count
    monotone.
    """
    xs = np.asarray(xs, dtype=float)
    n = diag.shape[0]
    d = diag[0] - xs
    d = np.where(np.abs(d) < _TINY, np.where(d < 0, -_TINY, _TINY), d)
    count = (d < 0).astype(np.int64)
    for j in range(1, n):
        d = diag[j] - xs - off_sq[j - 1] / d
        d = np.where(np.abs(d) < _TINY, np.where(d < 0, -_TINY, _TINY), d)
        count += d < 0
    return count


def lowest_eigenvalues(diag: np.ndarray, off: np.ndarray, k: int,
                       lo: float = None, hi: float = None,
                       coarse: int = 513, refine: int = 65,
                       sweeps: int = 6) -> np.ndarray:
    """Lowest k eigenvalues of the symmetric tridiagonal (diag, off).

    Bracket width after the sweeps is (hi-lo)/(coarse-1)/(refine-1)^(sweeps-1),
    i.e. ~1e-11 of the search range with the defaults.
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = diag.shape[0]
    if k < 1 or k > n:
        raise ValueError("need 1 <= k <= matrix size")
    off_sq = off * off
    radius = np.zeros(n)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    glo = float(np.min(diag - radius)) if lo is None else float(lo)
    ghi = float(np.max(diag + radius)) if hi is None else float(hi)
    if not glo < ghi:
        raise ValueError("empty search interval")
    # One coarse sweep to bracket each target index, then per-target refinement.
    xs = np.linspace(glo, ghi, coarse)
    counts = sturm_counts(diag, off_sq, xs)
    if counts[-1] < k:
        raise ValueError(f"only {counts[-1]} eigenvalues below hi={ghi}")
    lob = np.empty(k)
    hib = np.empty(k)
    for i in range(k):
        jt = int(np.searchsorted(counts, i + 1))  # first grid point with count > i
        lob[i] = xs[max(jt - 1, 0)]
        hib[i] = xs[min(jt, coarse - 1)]
    for _ in range(sweeps - 1):
        grids = np.concatenate([np.linspace(lob[i], hib[i], refine) for i in range(k)])
        counts = sturm_counts(diag, off_sq, grids)
        for i in range(k):
            block = counts[i * refine:(i + 1) * refine]
            xs_i = grids[i * refine:(i + 1) * refine]
            jt = int(np.searchsorted(block, i + 1))
            lob[i] = xs_i[max(jt - 1, 0)]
            hib[i] = xs_i[min(jt, refine - 1)]
    return 0.5 * (lob + hib)


def all_eigenvalues(diag: np.ndarray, off: np.ndarray, **kw) -> np.ndarray:
    """All eigenvalues of a (small) symmetric tridiagonal matrix, ascending."""
    return lowest_eigenvalues(diag, off, diag.shape[0], **kw)
