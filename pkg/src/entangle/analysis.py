"""Area-law fits and consistency reports over entropy sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import InsufficientPoints


@dataclass
class SweepRow:
    boundary: Any
    area_over_4a2: float
    entropy: float
    metadata: dict = field(default_factory=dict)


@dataclass
class SweepRecord:
    """Entropies of one model over a family of boundaries."""

    params: dict
    rows: list[SweepRow] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for r in self.rows:
            if r.area_over_4a2 <= 0:
                raise ValueError(f"non-positive area for boundary {r.boundary!r}")
            key = repr(r.boundary)
            if key in seen:
                raise ValueError(f"duplicate boundary {r.boundary!r}")
            seen.add(key)

    @property
    def areas(self) -> np.ndarray:
        return np.array([r.area_over_4a2 for r in self.rows])

    @property
    def entropies(self) -> np.ndarray:
        return np.array([r.entropy for r in self.rows])


@dataclass
class AreaLawFit:
    """OLS fit ``S = slope * A/(4a^2) + intercept`` over a window of points."""

    slope: float
    intercept: float
    origin_slope: float
    residual_rms: float
    n_points: int
    window: tuple[float, float]
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    residuals: np.ndarray = field(repr=False)

    @property
    def relative_residuals(self) -> np.ndarray:
        return self.residuals / self.y

    def as_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "origin_slope": self.origin_slope,
            "residual_rms": self.residual_rms,
            "n_points": self.n_points,
            "window": [w if math.isfinite(w) else None for w in self.window],
            "max_abs_relative_residual": float(np.max(np.abs(self.relative_residuals))),
        }


def fit_area_law(areas, entropies, min_area: float = 0.0,
                 max_area: float = math.inf) -> AreaLawFit:
    """Least-squares area law over points with ``min_area <= x <= max_area``.

    ``areas`` are ``A / (4 a^2)``.  Also reports the through-origin slope.
    """
    x = np.asarray(areas, dtype=float)
    y = np.asarray(entropies, dtype=float)
    keep = (x >= min_area) & (x <= max_area)
    x, y = x[keep], y[keep]
    if x.size < 3:
        raise InsufficientPoints(f"{x.size} points in window [{min_area}, {max_area}], need 3")
    X = np.column_stack([x, np.ones_like(x)])
    (slope, icpt), *_ = np.linalg.lstsq(X, y, rcond=None)
    origin = float(x @ y / (x @ x))
    res = y - (slope * x + icpt)
    return AreaLawFit(float(slope), float(icpt), origin,
                      float(np.sqrt(np.mean(res**2))), int(x.size),
                      (float(min_area), float(max_area)), x, y, res)


def fit_sweep(sweep: SweepRecord, min_area: float = 0.0, max_area: float = math.inf) -> AreaLawFit:
    return fit_area_law(sweep.areas, sweep.entropies, min_area, max_area)


@dataclass
class CrossSchemeReport:
    radii: list[float]
    ratios: list[float]
    tolerance: float = 0.15

    @property
    def insufficient_overlap(self) -> bool:
        return not self.radii

    @property
    def passed(self) -> bool:
        return (not self.insufficient_overlap
                and all(abs(r - 1.0) <= self.tolerance for r in self.ratios))


def cross_scheme_check(voxel: Sequence[tuple[float, float]],
                       spherical: Sequence[tuple[float, float]],
                       tolerance: float = 0.15) -> CrossSchemeReport:
    """Compare staircase-sphere and smooth-sphere entropies at shared radii.

    Both inputs are ``(radius, entropy)`` pairs.  Each ratio is
    ``S_voxel / S_spherical``; an area law with the respective surface
    measures predicts 1.
    """
    smooth = {round(float(r), 9): s for r, s in spherical}
    radii, ratios = [], []
    for r, s in voxel:
        key = round(float(r), 9)
        if key in smooth:
            radii.append(float(r))
            ratios.append(float(s) / float(smooth[key]))
    return CrossSchemeReport(radii, ratios, tolerance)


@dataclass
class SymmetryReport:
    n_sites: int
    pairs: int
    max_asymmetry: float
    worst_pair: tuple[int, int] | None
    threshold: float = 1e-6

    @property
    def passed(self) -> bool:
        return self.pairs > 0 and self.max_asymmetry < self.threshold

    def as_dict(self) -> dict:
        return {"n_sites": self.n_sites, "pairs": self.pairs,
                "max_relative_asymmetry": self.max_asymmetry,
                "worst_pair": list(self.worst_pair) if self.worst_pair else None,
                "threshold": self.threshold, "passed": self.passed}


def symmetry_report(n_sites: int, ns, entropies, threshold: float = 1e-6) -> SymmetryReport:
    """Compare ``S(n)`` with ``S(N - n)``: boundaries at ``chi`` and ``pi - chi``."""
    S = {int(n): float(s) for n, s in zip(ns, entropies)}
    worst, pair, count = 0.0, None, 0
    for n in sorted(S):
        m = n_sites - n
        if m < n or m not in S:
            continue
        count += 1
        denom = max(abs(S[n]), abs(S[m]))
        asym = abs(S[n] - S[m]) / denom if denom > 0 else 0.0
        if pair is None or asym > worst:
            worst, pair = asym, (n, m)
    return SymmetryReport(n_sites, count, worst, pair, threshold)
