import math

import numpy as np
import pytest

from entangle.errors import InvalidMultipole, TailNotConvergent
from entangle.gaussian import entanglement_entropy
from entangle.radial import (
    EINSTEIN,
    FLAT,
    RadialModel,
    SumPolicy,
    build_einstein_radial_coupling,
    build_flat_radial_coupling,
    extrapolate_series,
    ir_proximity_sweep,
    partial_wave_entropy,
    partial_wave_table,
    sphere_sweep,
    sum_partial_waves,
)
from oracles import symplectic_entropy


def sqrtm_2x2(M):
    # closed form for a 2x2 SPD matrix
    s = math.sqrt(np.linalg.det(M))
    t = math.sqrt(np.trace(M) + 2 * s)
    return (M + s * np.eye(2)) / t


# -- flat chain ---------------------------------------------------------------

def test_flat_coupling_entries():
    K = build_flat_radial_coupling(5, 2)
    assert np.array_equal(K, K.T)
    assert K[0, 0] == 2.25 + 6
    assert math.isclose(K[2, 2], (6 + 2.5**2 + 3.5**2) / 9)
    assert math.isclose(K[1, 2], -(2.5**2) / 6)
    assert np.count_nonzero(np.triu(K, 2)) == 0


@pytest.mark.parametrize("l", [0, 1, 5, 50])
def test_flat_coupling_positive_definite(l):
    assert np.linalg.eigvalsh(build_flat_radial_coupling(60, l))[0] > 0


@pytest.mark.parametrize("l", [-1, 1.5])
def test_invalid_multipole(l):
    with pytest.raises(InvalidMultipole):
        build_flat_radial_coupling(10, l)
    with pytest.raises(InvalidMultipole):
        build_einstein_radial_coupling(10, l)


def test_two_site_chain_against_scalar_oracle():
    K = build_flat_radial_coupling(2, 0)
    om = sqrtm_2x2(K)
    b = om[0, 1] ** 2 / (2 * om[0, 0] * om[1, 1] - om[0, 1] ** 2)
    xi = b / (1 + math.sqrt(1 - b * b))
    expected = -math.log(1 - xi) - xi / (1 - xi) * math.log(xi)
    model = RadialModel(FLAT, 2)
    assert abs(partial_wave_entropy(model, 0, 1) - expected) < 1e-12


def test_partial_waves_decay_at_large_l():
    model = RadialModel(FLAT, 30)
    S = [partial_wave_entropy(model, l, 10) for l in range(0, 200, 10)]
    knee = int(np.argmax(S))
    assert np.all(np.diff(S[knee:]) < 0)
    assert S[-1] < 1e-3 * S[knee]


def test_against_duplicate_implementation():
    model = RadialModel(FLAT, 60)
    ours = partial_wave_entropy(model, 0, 30)
    ref = symplectic_entropy(build_flat_radial_coupling(60, 0), np.arange(60) >= 30)
    assert abs(ours - ref) < 1e-9


@pytest.mark.parametrize("kind,N", [(FLAT, 40), (EINSTEIN, 40)])
def test_chain_complement(kind, N):
    model = RadialModel(kind, N)
    for l, n in [(0, 5), (3, 20), (10, 33)]:
        K = model.coupling(l)
        m = np.arange(N) < n
        a = entanglement_entropy(K, m).value
        b = entanglement_entropy(K, ~m).value
        assert abs(a - b) < 1e-8


def test_nothing_traced():
    assert partial_wave_entropy(RadialModel(FLAT, 10), 0, 0) == 0.0
    assert sum_partial_waves(RadialModel(FLAT, 10), 0).value == 0.0


def test_geometry():
    m = RadialModel(FLAT, 60)
    assert m.boundary_radius(10) == 10.5
    assert math.isclose(m.area_over_4a2(10), math.pi * 10.5**2)
    e = RadialModel(EINSTEIN, 99)
    assert math.isclose(e.R0, 100 / math.pi)
    assert math.isclose(e.chi(49) + e.chi(50), math.pi)
    assert math.isclose(e.area_over_4a2(49), e.area_over_4a2(50))
    areas = [e.area_over_4a2(n) for n in range(1, 99)]
    assert max(areas) <= e.max_area_over_4a2
    # 4 pi R0^2 sin^2 chi over 4
    assert math.isclose(e.area_over_4a2(20), math.pi * e.R0**2 * math.sin(e.chi(20)) ** 2)


# -- Einstein chain -----------------------------------------------------------

@pytest.mark.parametrize("l", [0, 1, 7])
def test_einstein_reflection_symmetry(l):
    K = build_einstein_radial_coupling(41, l)
    assert np.abs(K - K[::-1, ::-1]).max() < 1e-12 * np.abs(K).max()
    assert np.linalg.eigvalsh(K)[0] > 0


def test_minimal_coupling_has_zero_mode():
    K = build_einstein_radial_coupling(30, 0, curvature_coupling=0.0)
    assert abs(np.linalg.eigvalsh(K)[0]) < 1e-12


@pytest.mark.parametrize("l", [0, 2])
def test_flat_limit_of_einstein_chain(l):
    block = 6
    devs = []
    for N in (50, 100, 200):
        dE = build_einstein_radial_coupling(N, l)[:block, :block]
        dF = build_flat_radial_coupling(N, l)[:block, :block]
        devs.append(np.abs(dE - dF).max())
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] < 1e-3


def test_small_sphere_matches_flat_space():
    e = RadialModel(EINSTEIN, 99)
    f = RadialModel(FLAT, 99)
    for n in (2, 5):
        Se = sum_partial_waves(e, n).value
        Sf = sum_partial_waves(f, n).value
        assert abs(Se / Sf - 1) < 0.02


def test_sweep_is_symmetric_under_reflection():
    model = RadialModel(EINSTEIN, 30)
    res = sphere_sweep(model, range(1, 30))
    S = np.array([r.value for r in res])
    assert np.max(np.abs(S - S[::-1]) / S) < 1e-6


# -- partial-wave sums --------------------------------------------------------

def test_l_cut_policy():
    p = SumPolicy()
    assert p.l_cut(RadialModel(FLAT, 60), 10) == 40 + 10 * 11
    e = RadialModel(EINSTEIN, 99)
    assert p.l_cut(e, 10) == p.l_cut(e, 89)


def test_lcut_doubling_changes_little():
    model = RadialModel(FLAT, 60)
    base = sphere_sweep(model, [10, 30, 50])
    double = sphere_sweep(model, [10, 30, 50], SumPolicy().scaled(2))
    for a, b in zip(base, double):
        assert abs(a.value - b.value) / b.value < 0.005
        assert a.metadata["p"] > 2


def test_extrapolated_sum_against_long_truncation():
    model = RadialModel(FLAT, 60)
    n = 20
    table = partial_wave_table(model, [n], [3000])[:, 0]
    partial = np.cumsum((2 * np.arange(3001) + 1) * table)
    assert np.all(np.diff(partial) >= 0)
    S = sum_partial_waves(model, n).value
    # the brute-force sum still misses a slowly decaying tail
    assert partial[3000] < S
    assert (S - partial[3000]) / S < 0.005


def test_tail_not_convergent():
    model = RadialModel(FLAT, 60)
    with pytest.raises(TailNotConvergent):
        sum_partial_waves(model, 40, SumPolicy(l_base=20, l_per_radius=0))


def test_extrapolation_of_exact_power_law():
    l = np.arange(1, 401, dtype=float)
    S = np.concatenate([[0.0], 3.0 * l**-4.0])
    ext = extrapolate_series(S, 200, SumPolicy())
    assert math.isclose(ext["p"], 4.0, rel_tol=1e-10)
    exact = 3.0 * sum((2 * k + 1) * k**-4.0 for k in range(1, 200000))
    assert math.isclose(ext["value"], exact, rel_tol=1e-9)


def test_sum_metadata():
    res = sum_partial_waves(RadialModel(FLAT, 30), 8)
    meta = res.metadata
    assert meta["l_cut"] == 40 + 10 * 9
    assert 0 < meta["tail_fraction"] < 0.05
    assert math.isclose(res.value, meta["head"] + meta["tail"])
    assert math.isclose(meta["head"], math.fsum(res.mode_entropies))


def test_parallel_table_is_identical():
    model = RadialModel(EINSTEIN, 25)
    ns = list(range(1, 25))
    cuts = [SumPolicy().l_cut(model, n) for n in ns]
    serial = partial_wave_table(model, ns, cuts, jobs=1)
    parallel = partial_wave_table(model, ns, cuts, jobs=3)
    assert np.array_equal(serial, parallel)


# -- infrared proximity -------------------------------------------------------

def test_proximity_sweep_shape():
    out = ir_proximity_sweep(8, [30, 20, 12, 10, 9, 8])
    N, S = zip(*out)
    assert N == (30, 20, 12, 10, 9, 8)
    assert S[-1] == 0.0
    assert abs(S[1] / S[0] - 1) < 0.01
    assert S[3] > S[4] > S[5]
    with pytest.raises(ValueError):
        ir_proximity_sweep(8, [7])
