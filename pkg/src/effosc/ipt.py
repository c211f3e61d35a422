"""Perturbative corrections about the per-level effective oscillator.

The residual interaction after the quadratic replacement,

    lam * H' = lam * (f**k - A f**2 + B f - C),

has vanishing average in the expansion level by construction, so its
Rayleigh-Schrodinger series starts at second order.  The unperturbed basis
is the eigenbasis of that level's effective oscillator (frequency w(n),
undisplaced), which makes every energy denominator w(n) * (n - m).

Matrix elements are exact: powers of the position operator are computed as
matrix powers of the tridiagonal ladder-sum matrix in a basis padded by k
states, so no truncation leaks into the retained block.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SSBUnsupported
from .model import OscillatorSpec
from .spectrum import level_solution

__all__ = [
    "IPTSeries",
    "TruncationWarning",
    "position_power_matrix",
    "perturbation_matrix",
    "rs_corrections",
    "ipt_energy",
    "second_order_sum",
    "third_order_sum",
]


class TruncationWarning(RuntimeWarning):
    """A correction changed when the basis was enlarged: basis too small."""


@dataclass(frozen=True)
class IPTSeries:
    """Per-level correction series.

    corrections holds (dE1, ..., dEK); partial_sums holds the K+1 running
    energies starting from the effective-oscillator E0.  dE1 is zero to
    rounding because the residual interaction averages to zero in the
    expansion level.
    """

    spec: OscillatorSpec
    n: int
    basis_dim: int
    corrections: tuple
    partial_sums: tuple


def position_power_matrix(k: int, w: float, dim: int) -> np.ndarray:
    """Matrix of f^k in the first `dim` oscillator states at frequency w.

    Built as the k-th matrix power of the tridiagonal position matrix in
    dimension dim + k, then truncated: the retained block then carries the
    exact operator elements (a k-step ladder path from states below `dim`
    never climbs past dim + k - 1).  Result is exactly symmetric.
    """
    if not (1 <= k <= 8):
        raise ValueError("power k must be between 1 and 8, got %r" % (k,))
    if dim < 1:
        raise ValueError("dimension must be at least 1, got %r" % (dim,))
    if not (w > 0.0):
        raise ValueError("frequency w must be positive, got %r" % (w,))
    pad = dim + k
    f = np.zeros((pad, pad))
    off = np.sqrt(np.arange(1, pad) / (2.0 * w))
    idx = np.arange(pad - 1)
    f[idx, idx + 1] = off
    f[idx + 1, idx] = off
    m = np.linalg.matrix_power(f, k)[:dim, :dim]
    return 0.5 * (m + m.T)


def perturbation_matrix(spec: OscillatorSpec, n: int, dim: int) -> np.ndarray:
    """Matrix of the residual interaction lam*H' in level n's oscillator basis.

    Only defined about an undisplaced solution; the (n, n) entry vanishes
    to rounding by the construction of C.
    """
    sol = level_solution(spec, n)
    if sol.s != 0.0:
        raise SSBUnsupported(
            "perturbative corrections are defined about an undisplaced solution; "
            "level %d of this spec selects a displaced one" % n
        )
    if dim <= n:
        raise ValueError("basis dimension %d cannot hold the expansion level %d" % (dim, n))
    w = sol.w
    v = position_power_matrix(spec.k, w, dim) - sol.A * position_power_matrix(2, w, dim)
    # B = 0 for an undisplaced solution, so no linear-in-f term survives
    v[np.diag_indices(dim)] -= sol.C
    return spec.lam * v


def _denominators(w: float, n: int, dim: int) -> np.ndarray:
    """Unperturbed energy gaps E0(n) - E0(m) = w (n - m); zero slot at m = n."""
    return w * (n - np.arange(dim, dtype=float))


def _rs_run(v: np.ndarray, w: float, n: int, max_order: int):
    dim = v.shape[0]
    gaps = _denominators(w, n, dim)
    inv = np.zeros(dim)
    nz = np.arange(dim) != n
    inv[nz] = 1.0 / gaps[nz]
    psi = [np.zeros(dim)]
    psi[0][n] = 1.0
    energies = []
    for order in range(1, max_order + 1):
        vc = v @ psi[order - 1]
        energies.append(vc[n])
        correction = vc.copy()
        for back in range(1, order):
            correction -= energies[back - 1] * psi[order - back]
        new = correction * inv
        new[n] = 0.0
        psi.append(new)
    return energies


def rs_corrections(spec: OscillatorSpec, n: int, max_order: int = 4, dim=None) -> IPTSeries:
    """Rayleigh-Schrodinger corrections dE1..dE`max_order` for level n.

    Default basis dimension n + 3k + 1 is exact through fourth order (the
    residual interaction couples |m> only to |m +- j|, j <= k).  The series
    is recomputed in a basis enlarged by k; any correction that moves by
    more than 1e-10 relative triggers a TruncationWarning.
    """
    if not (1 <= max_order <= 4):
        raise ValueError("correction order must be between 1 and 4, got %r" % (max_order,))
    if dim is None:
        dim = n + 3 * spec.k + 1
    sol = level_solution(spec, n)
    if sol.s != 0.0:
        raise SSBUnsupported(
            "perturbative corrections are defined about an undisplaced solution; "
            "level %d of this spec selects a displaced one" % n
        )
    v = perturbation_matrix(spec, n, dim)
    energies = _rs_run(v, sol.w, n, max_order)
    enriched = _rs_run(perturbation_matrix(spec, n, dim + spec.k), sol.w, n, max_order)
    scale0 = max(1.0, abs(sol.E0), max(abs(e) for e in energies))
    for small, large in zip(energies, enriched):
        diff = abs(large - small)
        if diff > 1e-10 * max(abs(small), abs(large)) and diff > 1e-13 * scale0:
            warnings.warn(
                "correction series changed when the basis grew from %d to %d; "
                "increase dim" % (dim, dim + spec.k),
                TruncationWarning,
                stacklevel=2,
            )
            break
    sums = [sol.E0]
    for e in energies:
        sums.append(sums[-1] + e)
    return IPTSeries(
        spec=spec, n=n, basis_dim=dim,
        corrections=tuple(energies), partial_sums=tuple(sums),
    )


def ipt_energy(spec: OscillatorSpec, n: int, order: int, dim=None) -> float:
    """Level energy through the given correction order (0 = effective oscillator)."""
    if not (0 <= order <= 4):
        raise ValueError("order must be between 0 and 4, got %r" % (order,))
    if order == 0:
        return level_solution(spec, n).E0
    return rs_corrections(spec, n, max_order=order, dim=dim).partial_sums[order]


def second_order_sum(spec: OscillatorSpec, n: int, dim=None) -> float:
    """Explicit second-order sum over intermediate states (recursion cross-check)."""
    if dim is None:
        dim = n + 3 * spec.k + 1
    sol = level_solution(spec, n)
    v = perturbation_matrix(spec, n, dim)
    gaps = _denominators(sol.w, n, dim)
    mask = np.arange(dim) != n
    return float(np.sum(v[n, mask] ** 2 / gaps[mask]))


def third_order_sum(spec: OscillatorSpec, n: int, dim=None) -> float:
    """Explicit third-order double sum (recursion cross-check).

    The diagonal elements of the residual interaction in OTHER levels'
    slots are nonzero (C is tuned to level n only) and enter here; the
    first-order term that would usually correct the double sum vanishes
    with the (n, n) element.
    """
    if dim is None:
        dim = n + 3 * spec.k + 1
    sol = level_solution(spec, n)
    v = perturbation_matrix(spec, n, dim)
    gaps = _denominators(sol.w, n, dim)
    mask = np.arange(dim) != n
    row = v[n, mask]
    inner = v[np.ix_(mask, mask)]
    ig = 1.0 / gaps[mask]
    return float((row * ig) @ inner @ (row * ig))
