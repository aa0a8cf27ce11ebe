"""Scalar field on a cubic grid with arbitrary voxel regions.

Sites carry integer coordinates ``(x, y, z)`` with ``0 <= x < x_tot`` etc.
and are flattened in C order.  The field vanishes just outside the array
(Dirichlet walls), which removes the massless zero mode.

Region file format
------------------
A region is stored as plain text::

    # optional comment lines
    dims X Y Z
    <X*Y data lines>

Data lines run over ``(x, y)`` in C order (``y`` fastest).  Each line holds
whitespace separated run lengths along ``z``, alternating outside / inside and
starting with an outside run (which may be ``0``).  Run lengths on a line sum
to ``Z``.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import LatticeTooLarge, RegionFormatError, RegionOutOfBounds
from .gaussian import EntropyResult, entanglement_entropy, omega_from_coupling

N_MAX = 5000


@dataclass(frozen=True)
class CubicLattice:
    dims: tuple[int, int, int]
    n_max: int = N_MAX

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 3 or min(dims) < 1:
            raise ValueError(f"dims must be three positive integers, got {self.dims}")
        object.__setattr__(self, "dims", dims)
        if self.n_sites > self.n_max:
            raise LatticeTooLarge(f"{self.n_sites} sites exceeds N_max={self.n_max}")

    @property
    def n_sites(self) -> int:
        return int(np.prod(self.dims))

    def coords(self) -> np.ndarray:
        """Integer site coordinates, shape ``dims + (3,)``."""
        return np.stack(np.indices(self.dims), axis=-1)


@dataclass(frozen=True)
class VoxelSurface:
    exposed_faces: int

    @property
    def area(self) -> float:
        return float(self.exposed_faces)

    @property
    def area_over_4a2(self) -> float:
        return self.exposed_faces / 4.0


def build_cubic_coupling(lat: CubicLattice, boundary: str = "dirichlet") -> np.ndarray:
    """Coupling matrix of the nearest-neighbour lattice Laplacian.

    ``boundary="dirichlet"`` keeps the full diagonal of 6 on every site (the
    missing neighbours are fixed at zero).  ``boundary="open"`` drops one per
    missing neighbour and yields the singular graph Laplacian.
    """
    if boundary not in ("dirichlet", "open"):
        raise ValueError(f"unknown boundary {boundary!r}")
    N = lat.n_sites
    idx = np.arange(N).reshape(lat.dims)
    K = np.zeros((N, N))
    for ax in range(3):
        n = lat.dims[ax]
        a = np.take(idx, range(n - 1), axis=ax).ravel()
        b = np.take(idx, range(1, n), axis=ax).ravel()
        K[a, b] = -1.0
        K[b, a] = -1.0
    if boundary == "dirichlet":
        np.fill_diagonal(K, 6.0)
    else:
        np.fill_diagonal(K, -K.sum(axis=1))
    return K


_omega_cache: dict[tuple[int, int, int], np.ndarray] = {}
_omega_lock = threading.Lock()


def cubic_omega(lat: CubicLattice) -> np.ndarray:
    """Cached ``sqrt(K)`` for a lattice; one eigendecomposition per ``dims``."""
    with _omega_lock:
        om = _omega_cache.get(lat.dims)
        if om is None:
            om = omega_from_coupling(build_cubic_coupling(lat))
            om.setflags(write=False)
            _omega_cache[lat.dims] = om
    return om


def clear_omega_cache() -> None:
    with _omega_lock:
        _omega_cache.clear()


def _check_mask(lat: CubicLattice, mask) -> np.ndarray:
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != lat.dims:
        raise ValueError(f"mask shape {mask.shape} does not match lattice {lat.dims}")
    return mask


def region_box(lat: CubicLattice, corner, size) -> np.ndarray:
    """Parallelepiped of ``size`` sites starting at ``corner``."""
    corner = np.asarray(corner, dtype=int)
    size = np.asarray(size, dtype=int)
    stop = corner + size
    if (corner < 0).any() or (size < 0).any() or (stop > lat.dims).any():
        raise RegionOutOfBounds(f"box {tuple(corner)}+{tuple(size)} outside {lat.dims}")
    mask = np.zeros(lat.dims, dtype=bool)
    mask[tuple(slice(c, s) for c, s in zip(corner, stop))] = True
    return mask


def centered_box(lat: CubicLattice, size) -> np.ndarray:
    size = np.broadcast_to(np.asarray(size, dtype=int), (3,))
    corner = (np.asarray(lat.dims) - size) // 2
    return region_box(lat, corner, size)


def region_shell(lat: CubicLattice, inner, outer) -> np.ndarray:
    """Hollow box: ``outer`` minus ``inner``, each given as ``(corner, size)``."""
    out = region_box(lat, *outer)
    inn = region_box(lat, *inner)
    if (inn & ~out).any():
        raise RegionOutOfBounds("inner box of a shell must lie inside the outer box")
    return out & ~inn


def region_voxel_sphere(lat: CubicLattice, center=None, R: float = 1.0) -> np.ndarray:
    """Sites whose centre lies in the closed ball ``|x - center| <= R``.

    ``center`` defaults to the lattice centre, which is a site for odd
    extents and a dual-lattice point for even ones.
    """
    if center is None:
        center = (np.asarray(lat.dims) - 1) / 2.0
    center = np.asarray(center, dtype=float)
    if (center - R < -0.5).any() or (center + R > np.asarray(lat.dims) - 0.5).any():
        raise RegionOutOfBounds(f"sphere R={R} at {tuple(center)} leaves {lat.dims}")
    d2 = ((lat.coords() - center) ** 2).sum(axis=-1)
    return d2 <= R * R + 1e-9


def exposed_face_area(mask, count_walls: bool = False) -> VoxelSurface:
    """Count unit faces separating inside from outside sites.

    Faces against the lattice wall are skipped unless ``count_walls``; with
    Dirichlet walls they do not separate two field degrees of freedom.
    """
    m = np.asarray(mask, dtype=bool)
    faces = 0
    for ax in range(m.ndim):
        faces += int(np.count_nonzero(np.diff(m, axis=ax)))
        if count_walls:
            faces += int(np.count_nonzero(np.take(m, 0, axis=ax)))
            faces += int(np.count_nonzero(np.take(m, -1, axis=ax)))
    return VoxelSurface(faces)


def cubic_region_entropy(lat: CubicLattice, mask) -> EntropyResult:
    mask = _check_mask(lat, mask)
    surf = exposed_face_area(mask)
    meta = {
        "model": "cubic",
        "dims": list(lat.dims),
        "n_inside": int(mask.sum()),
        "exposed_faces": surf.exposed_faces,
    }
    if mask.all() or not mask.any():
        return EntropyResult(0.0, np.zeros(0), meta)
    return entanglement_entropy(None, mask.ravel(), omega=cubic_omega(lat), metadata=meta)


# -- region files -------------------------------------------------------------

def encode_region(mask) -> str:
    m = np.asarray(mask, dtype=bool)
    if m.ndim != 3:
        raise ValueError("region masks are three dimensional")
    X, Y, Z = m.shape
    lines = [f"dims {X} {Y} {Z}"]
    for x in range(X):
        for y in range(Y):
            row = m[x, y]
            edges = np.flatnonzero(np.diff(row.astype(np.int8))) + 1
            bounds = np.concatenate(([0], edges, [Z]))
            runs = np.diff(bounds).tolist()
            if row[0]:
                runs.insert(0, 0)
            lines.append(" ".join(str(r) for r in runs))
    return "\n".join(lines) + "\n"


def decode_region(text: str) -> np.ndarray:
    rows = [
        ln.split("#", 1)[0].strip()
        for ln in text.splitlines()
    ]
    rows = [r for r in rows if r]
    if not rows or not rows[0].startswith("dims"):
        raise RegionFormatError("missing 'dims X Y Z' header")
    try:
        X, Y, Z = (int(v) for v in rows[0].split()[1:])
    except ValueError as exc:
        raise RegionFormatError(f"bad header {rows[0]!r}") from exc
    data = rows[1:]
    if len(data) != X * Y:
        raise RegionFormatError(f"expected {X * Y} data lines, found {len(data)}")
    mask = np.zeros((X, Y, Z), dtype=bool)
    for i, line in enumerate(data):
        try:
            runs = [int(v) for v in line.split()]
        except ValueError as exc:
            raise RegionFormatError(f"line {i + 2}: non-integer run") from exc
        if any(r < 0 for r in runs) or sum(runs) != Z:
            raise RegionFormatError(f"line {i + 2}: runs must be >= 0 and sum to {Z}")
        pos, inside = 0, False
        x, y = divmod(i, Y)
        for r in runs:
            if inside:
                mask[x, y, pos:pos + r] = True
            pos += r
            inside = not inside
    return mask


def write_region(path, mask) -> None:
    Path(path).write_text(encode_region(mask))


def read_region(path) -> np.ndarray:
    return decode_region(Path(path).read_text())
