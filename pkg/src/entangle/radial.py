"""Partial-wave radial chains for spheres in flat space and the Einstein universe.

Each multipole ``l`` of the field gives an independent chain of ``N`` radial
oscillators with a tridiagonal coupling matrix.  Tracing out sites ``1..n``
hides a ball; the entropy is ``sum_l (2l + 1) S_l`` where the ``m``
degeneracy is exact because the chain depends on ``l`` only.

Flat space uses the half-integer radius scheme: sites at ``r = j a``,
gradient weights at ``r = (j + 1/2) a`` and the field fixed to zero at
``r = (N + 1) a``.

On the three-sphere of radius ``R0`` the rescaled field ``u = R0 sin(chi) phi``
has a canonical kinetic term and the same Hamiltonian as in flat space with
``r`` replaced by the areal radius ``s(r) = R0 sin(r / R0)``.  Sites sit at
``chi_j = j pi / (N + 1)``, so both poles fall on the (excluded) sites 0 and
``N + 1`` where ``s = 0``.  Near the pole ``s -> r`` and the chain turns into
the flat one entry by entry.  Minimal coupling leaves an exact zero mode at
``l = 0`` (the constant field); the curvature coupling ``xi R`` with the
conformal default ``xi = 1/6`` adds ``6 xi / R0^2`` to the diagonal, which
vanishes in the flat limit.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import zeta
from threadpoolctl import threadpool_limits

from .errors import InvalidMultipole, PoleSingularity, TailNotConvergent
from .gaussian import EntropyResult, entanglement_entropy, omega_from_coupling

FLAT = "flat"
EINSTEIN = "einstein"


def _check_l(l) -> int:
    if int(l) != l or l < 0:
        raise InvalidMultipole(f"multipole must be a non-negative integer, got {l!r}")
    return int(l)


def _tridiag(diag: np.ndarray, off: np.ndarray) -> np.ndarray:
    return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)


def build_flat_radial_coupling(N: int, l: int) -> np.ndarray:
    l = _check_l(l)
    if N < 2:
        raise ValueError("flat radial chain needs N >= 2")
    j = np.arange(1, N + 1, dtype=float)
    L2 = l * (l + 1)
    diag = (L2 + (j - 0.5) ** 2 + (j + 0.5) ** 2) / j**2
    # no bond to the origin
    diag[0] = L2 + 2.25
    off = -((j[:-1] + 0.5) ** 2) / (j[:-1] * j[1:])
    return _tridiag(diag, off)


def einstein_radius(N: int) -> float:
    """Curvature radius ``R0`` in lattice units: pole to pole is ``(N + 1) a``."""
    return (N + 1) / math.pi


def build_einstein_radial_coupling(N: int, l: int, curvature_coupling: float = 1 / 6) -> np.ndarray:
    l = _check_l(l)
    if N < 4:
        raise ValueError("Einstein radial chain needs N >= 4")
    R0 = einstein_radius(N)
    j = np.arange(1, N + 1, dtype=float)
    s = R0 * np.sin(j / R0)
    if np.any(s <= 1e-12 * R0):
        raise PoleSingularity("a radial site lies on a pole")
    mid2 = (R0 * np.sin((j[:-1] + 0.5) / R0)) ** 2
    diag = l * (l + 1) / s**2 + 6.0 * curvature_coupling / R0**2
    diag[:-1] += mid2 / s[:-1] ** 2
    diag[1:] += mid2 / s[1:] ** 2
    off = -mid2 / (s[:-1] * s[1:])
    return _tridiag(diag, off)


@dataclass(frozen=True)
class RadialModel:
    """Radial discretisation of a sphere; ``n`` sites ``1..n`` are traced."""

    kind: str
    n_sites: int
    curvature_coupling: float = 1 / 6

    def __post_init__(self):
        if self.kind not in (FLAT, EINSTEIN):
            raise ValueError(f"unknown radial model {self.kind!r}")
        if self.n_sites < (2 if self.kind == FLAT else 4):
            raise ValueError(f"too few radial sites: {self.n_sites}")

    def coupling(self, l: int) -> np.ndarray:
        if self.kind == FLAT:
            return build_flat_radial_coupling(self.n_sites, l)
        return build_einstein_radial_coupling(self.n_sites, l, self.curvature_coupling)

    @property
    def R0(self) -> float | None:
        return einstein_radius(self.n_sites) if self.kind == EINSTEIN else None

    def boundary_radius(self, n: int) -> float:
        """Geodesic radius of the boundary between sites ``n`` and ``n + 1``."""
        return n + 0.5

    def areal_radius(self, n: int) -> float:
        r = self.boundary_radius(n)
        if self.kind == FLAT:
            return r
        return self.R0 * math.sin(r / self.R0)

    def chi(self, n: int) -> float | None:
        return self.boundary_radius(n) / self.R0 if self.kind == EINSTEIN else None

    def area_over_4a2(self, n: int) -> float:
        """``A / (4 a^2)`` with ``A = 4 pi s^2``."""
        return math.pi * self.areal_radius(n) ** 2

    @property
    def max_area_over_4a2(self) -> float:
        if self.kind == FLAT:
            return math.inf
        return math.pi * self.R0**2


@dataclass(frozen=True)
class SumPolicy:
    """How far to sum multipoles and how to extrapolate the rest.

    ``l_cut = l_base + l_per_radius * ceil(s)`` with ``s`` the areal radius of
    the boundary.  The tail ``S_l ~ c l^-p`` is fitted in log-log space over
    the top ``tail_fraction`` of ``log l_cut``.
    """

    l_base: int = 40
    l_per_radius: int = 10
    tail_fraction: float = 0.1
    min_tail_points: int = 8

    def l_cut(self, model: RadialModel, n: int) -> int:
        s = model.areal_radius(n)
        return int(self.l_base + self.l_per_radius * math.ceil(s - 1e-9))

    def scaled(self, factor: int) -> "SumPolicy":
        return SumPolicy(self.l_base * factor, self.l_per_radius * factor,
                         self.tail_fraction, self.min_tail_points)


def _mask(N: int, n: int) -> np.ndarray:
    return np.arange(N) < n


def partial_wave_entropy(model: RadialModel, l: int, n: int) -> float:
    """Entropy ``S_l`` of one ``(l, m)`` sector with sites ``1..n`` traced."""
    res = entanglement_entropy(model.coupling(l), _mask(model.n_sites, n))
    return res.value


def _table_rows(model: RadialModel, tasks: list[tuple[int, list[int]]]) -> list[np.ndarray]:
    rows = []
    with threadpool_limits(1):
        for l, ns in tasks:
            om = omega_from_coupling(model.coupling(l))
            N = model.n_sites
            rows.append(np.array([
                entanglement_entropy(None, _mask(N, n), omega=om).value for n in ns
            ]))
    return rows


def default_jobs() -> int:
    env = os.environ.get("ENTANGLE_NUM_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def partial_wave_table(model: RadialModel, ns, l_cuts, jobs: int = 1) -> np.ndarray:
    """``S_l(n)`` for ``l = 0..max(l_cuts)``; entries beyond a column's cut are 0.

    One eigendecomposition per ``l`` serves every boundary ``n``.  ``jobs``
    only changes who computes each row, never the values.
    """
    ns = [int(n) for n in ns]
    l_cuts = [int(c) for c in l_cuts]
    lmax = max(l_cuts)
    tasks = [(l, [n for n, c in zip(ns, l_cuts) if c >= l]) for l in range(lmax + 1)]
    if jobs <= 1 or len(tasks) < 2:
        rows = _table_rows(model, tasks)
    else:
        chunks = [tasks[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_table_rows, [model] * jobs, chunks))
        rows = [None] * len(tasks)
        for i, part in enumerate(parts):
            rows[i::jobs] = part
    table = np.zeros((lmax + 1, len(ns)))
    col = {n: i for i, n in enumerate(ns)}
    for (l, nl), row in zip(tasks, rows):
        table[l, [col[n] for n in nl]] = row
    return table


def extrapolate_series(S_l: np.ndarray, l_cut: int, policy: SumPolicy) -> dict:
    """Degeneracy-weighted sum up to ``l_cut`` plus a fitted power-law tail.

    Raises
    ------
    TailNotConvergent
        If the fitted decay exponent ``p <= 2``; ``sum (2l+1) l^-p`` diverges.
    """
    S_l = np.asarray(S_l[: l_cut + 1], dtype=float)
    ls = np.arange(l_cut + 1)
    head = math.fsum((2 * ls + 1) * S_l)
    lo = min(max(1.0, l_cut ** (1.0 - policy.tail_fraction)), l_cut - policy.min_tail_points + 1)
    win = (ls >= lo) & (S_l > 0)
    if not np.any(S_l[ls >= lo] > 0):
        return dict(value=head, head=head, tail=0.0, p=math.inf, c=0.0, l_cut=l_cut,
                    tail_fraction=0.0)
    if win.sum() < 3:
        raise TailNotConvergent(f"only {int(win.sum())} usable points in the tail window")
    slope, icpt = np.polyfit(np.log(ls[win]), np.log(S_l[win]), 1)
    p, c = -float(slope), float(np.exp(icpt))
    if p <= 2.0:
        raise TailNotConvergent(f"fitted S_l ~ l^-{p:.3f}; need p > 2 (raise l_cut)")
    tail = c * (2.0 * zeta(p - 1.0, l_cut + 1) + zeta(p, l_cut + 1))
    value = head + tail
    return dict(value=value, head=head, tail=float(tail), p=p, c=c, l_cut=l_cut,
                tail_fraction=float(tail / value) if value > 0 else 0.0)


def _model_meta(model: RadialModel) -> dict:
    meta = asdict(model)
    if model.kind == FLAT:
        meta.pop("curvature_coupling")
    return meta


def sphere_sweep(model: RadialModel, ns, policy: SumPolicy | None = None,
                 jobs: int = 1) -> list[EntropyResult]:
    """Total entropy for each boundary index in ``ns``."""
    policy = policy or SumPolicy()
    ns = [int(n) for n in ns]
    for n in ns:
        if not 0 <= n <= model.n_sites:
            raise ValueError(f"boundary index {n} outside 0..{model.n_sites}")
    active = [n for n in ns if 0 < n < model.n_sites]
    cuts = [policy.l_cut(model, n) for n in active]
    table = partial_wave_table(model, active, cuts, jobs) if active else None
    col = {n: i for i, n in enumerate(active)}
    results = []
    for n in ns:
        meta = {"model": _model_meta(model), "n": n, "policy": asdict(policy)}
        if n not in col:
            results.append(EntropyResult(0.0, np.zeros(0), meta))
            continue
        lc = policy.l_cut(model, n)
        S_l = table[: lc + 1, col[n]]
        ext = extrapolate_series(S_l, lc, policy)
        meta.update({k: ext[k] for k in ("l_cut", "head", "tail", "p", "c", "tail_fraction")})
        weighted = (2 * np.arange(lc + 1) + 1) * S_l
        results.append(EntropyResult(float(ext["value"]), weighted, meta))
    return results


def sum_partial_waves(model: RadialModel, n: int, policy: SumPolicy | None = None,
                      jobs: int = 1) -> EntropyResult:
    return sphere_sweep(model, [n], policy, jobs)[0]


def ir_proximity_sweep(n: int, sizes, policy: SumPolicy | None = None,
                       jobs: int = 1) -> list[tuple[int, float]]:
    """Flat-space entropy of a fixed ball as the outer radius ``N`` shrinks."""
    out = []
    for N in sizes:
        N = int(N)
        if N < n:
            raise ValueError(f"outer size {N} smaller than the ball ({n})")
        res = sum_partial_waves(RadialModel(FLAT, N), n, policy, jobs) if N > n else None
        out.append((N, res.value if res is not None else 0.0))
    return out
