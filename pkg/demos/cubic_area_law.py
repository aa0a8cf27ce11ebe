"""
Entropy of boxes on a cubic lattice
===================================

A scalar field on a 10^3 grid with fixed (zero) values beyond the edges.
We trace out the field outside a centred cube and compare the entropy to the
number of exposed faces of that cube.
"""

from entangle import analysis, cubic

lat = cubic.CubicLattice((10, 10, 10))

areas, entropies = [], []
for side in range(2, 7):
    res = cubic.cubic_region_entropy(lat, cubic.centered_box(lat, side))
    faces = res.metadata["exposed_faces"]
    areas.append(faces / 4)
    entropies.append(res.value)
    print(f"side {side}: {faces:4d} faces   S = {res.value:8.4f}   S/faces = {res.value / faces:.4f}")

# The per-face entropy settles quickly, so S grows with the surface and not
# with the volume.
fit = analysis.fit_area_law(areas, entropies)
print(f"slope against A/(4a^2): {fit.slope:.4f}, intercept {fit.intercept:.3f}")

# The same machinery accepts any voxel region, for example a staircase ball.
lat = cubic.CubicLattice((12, 12, 12))
ball = cubic.region_voxel_sphere(lat, R=3.5)
res = cubic.cubic_region_entropy(lat, ball)
print(f"ball of {int(ball.sum())} sites: {res.metadata['exposed_faces']} faces, S = {res.value:.4f}")
print("sanity check, complement:", cubic.cubic_region_entropy(lat, ~ball).value)
