"""Entanglement entropy of a Gaussian ground state of coupled oscillators.

The ground state of ``H = 1/2 (pi^T pi + phi^T K phi)`` is fully described by
``Omega = sqrt(K)``.  Tracing out a subset of oscillators leaves a reduced
state that factorises into independent thermal modes, each labelled by one
eigenvalue ``beta'_j`` of the normalised cross block.  The entropy is the sum
of the single-mode thermal entropies.

All functions are pure; matrices are symmetrised after every construction
step to keep round-off asymmetry from leaking into the eigensolvers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np
import scipy.linalg

from .errors import (
    NonPositiveCoupling,
    NonPositiveGamma,
    SingularExteriorBlock,
    SpectrumOutOfRange,
)

TOL_CLAMP = 1e-10
SERIES_CUTOFF = 1e-8
_BELOW_ONE = np.nextafter(1.0, 0.0)


def symmetrize(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


class ReducedBlocks(NamedTuple):
    """``gamma`` and ``beta`` of the kept oscillators (both n x n)."""

    gamma: np.ndarray
    beta: np.ndarray


@dataclass(frozen=True)
class EntropyResult:
    """Entanglement entropy with its per-mode breakdown.

    ``mode_entropies`` follow the ordering of the spectrum (descending
    ``beta'``).  ``metadata`` is free-form provenance.
    """

    value: float
    mode_entropies: np.ndarray = field(repr=False)
    metadata: dict[str, Any] = field(default_factory=dict)

    def __float__(self) -> float:
        return self.value


def omega_from_coupling(K: np.ndarray) -> np.ndarray:
    """Symmetric positive square root of the coupling matrix.

    Raises
    ------
    NonPositiveCoupling
        If an eigenvalue of ``K`` is at or below ``dim * eps * max|lambda|``.
    """
    K = symmetrize(np.asarray(K, dtype=float))
    w, U = np.linalg.eigh(K)
    tol = K.shape[0] * np.finfo(float).eps * max(np.abs(w).max(), 1.0)
    if w[0] <= tol:
        raise NonPositiveCoupling(
            f"smallest coupling eigenvalue {w[0]:.3e} <= tolerance {tol:.3e}"
        )
    return symmetrize((U * np.sqrt(w)) @ U.T)


def _as_mask(traced, dim: int) -> np.ndarray:
    traced = np.asarray(traced, dtype=bool).ravel()
    if traced.shape != (dim,):
        raise ValueError(f"mask has {traced.size} entries, matrix has dim {dim}")
    return traced


def reduce(omega: np.ndarray, traced) -> ReducedBlocks:
    """Integrate out the ``traced`` oscillators of the ground state.

    With ``Omega`` split into kept block ``C``, traced block ``A`` and cross
    block ``B``, returns ``beta = 1/2 B^T A^{-1} B`` and ``gamma = C - beta``.
    ``A^{-1} B`` comes from a Cholesky solve.
    """
    omega = np.asarray(omega, dtype=float)
    t = _as_mask(traced, omega.shape[0])
    if t.all() or not t.any():
        raise ValueError("partition must trace out some but not all oscillators")
    k = ~t
    A = omega[np.ix_(t, t)]
    B = omega[np.ix_(t, k)]
    C = omega[np.ix_(k, k)]
    try:
        cho = scipy.linalg.cho_factor(A, lower=True)
    except np.linalg.LinAlgError as exc:
        raise SingularExteriorBlock(str(exc)) from exc
    beta = symmetrize(0.5 * B.T @ scipy.linalg.cho_solve(cho, B))
    gamma = symmetrize(C - beta)
    return ReducedBlocks(gamma, beta)


def mode_spectrum(blocks: ReducedBlocks, tol_clamp: float = TOL_CLAMP) -> np.ndarray:
    """Eigenvalues ``beta'_j`` of ``gamma_D^{-1/2} V beta V^T gamma_D^{-1/2}``.

    Values within ``tol_clamp`` outside ``[0, 1)`` are clamped, anything
    further out raises :class:`SpectrumOutOfRange`.  Sorted descending.
    """
    gamma, beta = blocks
    g, V = np.linalg.eigh(gamma)
    tol = gamma.shape[0] * np.finfo(float).eps * max(np.abs(g).max(), 1.0)
    if g[0] <= tol:
        raise NonPositiveGamma(f"smallest gamma eigenvalue {g[0]:.3e}")
    # columns of V scaled by gamma_D^{-1/2}; the W rotation is never needed
    Vs = V / np.sqrt(g)
    bp = np.linalg.eigvalsh(symmetrize(Vs.T @ beta @ Vs))[::-1]
    if bp[0] > 1.0 + tol_clamp or bp[-1] < -tol_clamp:
        raise SpectrumOutOfRange(
            f"beta' spectrum [{bp[-1]:.3e}, {bp[0]:.3e}] outside [0, 1)"
        )
    return np.clip(bp, 0.0, _BELOW_ONE)


def mode_entropy(betaprime) -> np.ndarray:
    """Thermal entropy of each decoupled mode as a function of ``beta'``."""
    b = np.atleast_1d(np.asarray(betaprime, dtype=float))
    out = np.zeros_like(b)
    small = (b > 0) & (b < SERIES_CUTOFF)
    big = b >= SERIES_CUTOFF
    h = 0.5 * b[small]
    out[small] = -h * np.log(h) + h
    xi = b[big] / (1.0 + np.sqrt((1.0 - b[big]) * (1.0 + b[big])))
    out[big] = -np.log1p(-xi) - xi / (1.0 - xi) * np.log(xi)
    return out


def entropy_from_spectrum(betaprimes, metadata: dict | None = None) -> EntropyResult:
    bp = np.asarray(betaprimes, dtype=float)
    Sj = mode_entropy(bp)
    # fixed summation order keeps the total independent of how it was produced
    value = math.fsum(np.sort(Sj))
    return EntropyResult(value, Sj, dict(metadata or {}))


def entanglement_entropy(
    K: np.ndarray | None,
    traced,
    *,
    omega: np.ndarray | None = None,
    metadata: dict | None = None,
) -> EntropyResult:
    """Entropy of the oscillators left after tracing out ``traced``.

    Pass a precomputed ``omega`` to reuse one eigendecomposition across many
    partitions; ``K`` is then ignored and may be ``None``.
    """
    dim = (omega if omega is not None else K).shape[0]
    t = _as_mask(traced, dim)
    meta = {"n_traced": int(t.sum()), "dim": dim, "tol_clamp": TOL_CLAMP}
    meta.update(metadata or {})
    if t.all() or not t.any():
        return EntropyResult(0.0, np.zeros(0), meta)
    if omega is None:
        omega = omega_from_coupling(K)
    bp = mode_spectrum(reduce(omega, t))
    return entropy_from_spectrum(bp, meta)
