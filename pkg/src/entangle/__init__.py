"""Entanglement entropy of a lattice scalar field in flat space and on the three-sphere."""

from .analysis import AreaLawFit, SweepRecord, SweepRow, cross_scheme_check, fit_area_law, symmetry_report
from .cubic import (
    CubicLattice,
    build_cubic_coupling,
    cubic_region_entropy,
    exposed_face_area,
    read_region,
    region_box,
    region_shell,
    region_voxel_sphere,
    write_region,
)
from .errors import *  # noqa: F401,F403
from .gaussian import (
    EntropyResult,
    entanglement_entropy,
    entropy_from_spectrum,
    mode_spectrum,
    omega_from_coupling,
    reduce,
)
from .radial import (
    EINSTEIN,
    FLAT,
    RadialModel,
    SumPolicy,
    build_einstein_radial_coupling,
    build_flat_radial_coupling,
    ir_proximity_sweep,
    partial_wave_entropy,
    sphere_sweep,
    sum_partial_waves,
)

__version__ = "0.1.0"
