"""Independent eigenvalues by direct diagonalization in an oscillator basis.

This module never uses the self-consistent formulas to compute energies:
the full Hamiltonian is assembled from exact operator matrix elements in a
truncated oscillator basis of adjustable frequency and diagonalized.  Every
truncated eigenvalue is a variational upper bound that decreases
monotonically as the basis grows, so doubling the basis until the levels
stop moving gives controlled "exact" values to compare everything against.

The basis frequency only affects the convergence rate, not the limit; by
default it is warm-started from the level-0 effective frequency.  All our
Hamiltonians are even in f, so the basis splits into parity blocks, which
halves the bandwidth and cleanly separates near-degenerate well doublets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse

from .errors import OracleConvergenceError
from .model import OscillatorSpec
from .spectrum import level_solution

__all__ = [
    "OracleSpectrum",
    "hamiltonian_matrix",
    "lowest_eigenvalues",
    "exact_levels",
]


@dataclass(frozen=True)
class OracleSpectrum:
    """Converged eigenvalues with their last basis-doubling movement."""

    spec: OscillatorSpec
    basis_w: float
    dim: int
    eigenvalues: tuple
    convergence_estimate: tuple


def _position_power_diagonals(k: int, basis_w: float, dim: int):
    """Diagonals (offsets 0, 2, ..., k) of f^k, exact in the retained block."""
    pad = dim + k
    off = np.sqrt(np.arange(1, pad) / (2.0 * basis_w))
    f = scipy.sparse.diags([off, off], [1, -1], format="csr")
    f2 = f @ f
    if k == 2:
        fk = f2
    elif k == 4:
        fk = f2 @ f2
    elif k == 6:
        fk = (f2 @ f2) @ f2
    elif k == 8:
        f4 = f2 @ f2
        fk = f4 @ f4
    else:
        raise ValueError("unsupported even power %r" % (k,))
    return {o: np.asarray(fk.diagonal(o))[: dim - o] for o in range(0, k + 1, 2)}


def _hamiltonian_diagonals(spec: OscillatorSpec, basis_w: float, dim: int):
    """Upper diagonals of H = p²/2 + (g/2) f² + lam f^k in the frequency-basis_w basis."""
    n = np.arange(dim, dtype=float)
    fk = _position_power_diagonals(spec.k, basis_w, dim)
    f2 = _position_power_diagonals(2, basis_w, dim)
    ladder2 = np.sqrt((n[: dim - 2] + 1.0) * (n[: dim - 2] + 2.0))
    diags = {o: spec.lam * fk[o].copy() for o in fk}
    # kinetic part: <m|p²|m> = basis_w (m + 1/2); <m|p²|m+2> = -basis_w sqrt((m+1)(m+2))/2
    diags[0] += 0.5 * basis_w * (n + 0.5) + 0.5 * spec.g * f2[0]
    diags[2] += -0.25 * basis_w * ladder2 + 0.5 * spec.g * f2[2]
    return diags


def hamiltonian_matrix(spec: OscillatorSpec, basis_w: float, dim: int) -> np.ndarray:
    """Dense symmetric matrix of the full Hamiltonian (bandwidth = k)."""
    if dim < 4:
        raise ValueError("basis dimension must be at least 4, got %r" % (dim,))
    if not (basis_w > 0.0):
        raise ValueError("basis frequency must be positive, got %r" % (basis_w,))
    diags = _hamiltonian_diagonals(spec, basis_w, dim)
    h = np.zeros((dim, dim))
    for o, vals in diags.items():
        idx = np.arange(dim - o)
        h[idx, idx + o] = vals
        h[idx + o, idx] = vals
    return h


def lowest_eigenvalues(matrix, count: int):
    """The `count` smallest eigenvalues of a symmetric matrix, ascending.

    Uses an orthogonal-similarity symmetric eigensolver; rejects
    non-symmetric input rather than silently symmetrizing it.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix, got shape %r" % (m.shape,))
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    if not np.allclose(m, m.T, atol=1e-12 * max(1.0, scale), rtol=0.0):
        raise ValueError("matrix is not symmetric")
    vals = np.linalg.eigvalsh(m)
    return [float(v) for v in vals[:count]]


def _parity_block_eigenvalues(diags, dim: int, k: int):
    """All eigenvalues, computed per parity block in banded storage."""
    kb = k // 2
    merged = []
    for parity in (0, 1):
        m = (dim - parity + 1) // 2
        if m <= 0:
            continue
        band = np.zeros((kb + 1, m))
        for d in range(kb + 1):
            o = 2 * d
            cols = np.arange(d, m)
            band[kb - d, cols] = diags[o][parity + 2 * (cols - d)]
        merged.append(
            scipy.linalg.eig_banded(band, lower=False, eigvals_only=True, check_finite=False)
        )
    return np.sort(np.concatenate(merged))


def exact_levels(
    spec: OscillatorSpec,
    n_max: int,
    rel_tol: float = 1e-10,
    basis_w=None,
    dim_cap: int = 4096,
) -> OracleSpectrum:
    """Eigenvalues E_0..E_{n_max}, basis-doubled until stable to rel_tol.

    Starts from 4*(n_max+1) basis states and doubles until every retained
    level moves by less than rel_tol (relative, floored at unit scale)
    between consecutive sizes.  `dim_cap` bounds the parity-block size;
    hitting it raises OracleConvergenceError carrying the last spectrum.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative, got %r" % (n_max,))
    if rel_tol < 1e-12:
        raise ValueError("rel_tol below 1e-12 is not resolvable by this solver")
    if basis_w is None:
        basis_w = level_solution(spec, 0).w
    dim = 4 * (n_max + 1)
    prev = None
    est = None
    while True:
        levels = _parity_block_eigenvalues(
            _hamiltonian_diagonals(spec, basis_w, dim), dim, spec.k
        )[: n_max + 1]
        if prev is not None:
            est = np.abs(levels - prev)
            if np.all(est < rel_tol * np.maximum(1.0, np.abs(levels))):
                return OracleSpectrum(
                    spec=spec,
                    basis_w=float(basis_w),
                    dim=dim,
                    eigenvalues=tuple(float(v) for v in levels),
                    convergence_estimate=tuple(float(v) for v in est),
                )
        prev = levels
        if dim > dim_cap:  # dim/2 per parity block has hit the cap
            partial = OracleSpectrum(
                spec=spec,
                basis_w=float(basis_w),
                dim=dim,
                eigenvalues=tuple(float(v) for v in levels),
                convergence_estimate=tuple(float(v) for v in est) if est is not None else (),
            )
            raise OracleConvergenceError(
                "eigenvalues still moving at the %d-state cap (worst estimate %s)"
                % (dim, "%.3g" % float(np.max(est)) if est is not None else "unknown"),
                spectrum=partial,
            )
        dim *= 2
