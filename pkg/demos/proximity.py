"""
Walls close to the region
=========================

The lattice also has an outer edge.  Here a sphere of 20 sites stays fixed
while the outer wall is moved in, one site at a time.
"""

from entangle import radial

n = 20
rows = radial.ir_proximity_sweep(n, list(range(40, n - 1, -1)))
S_far = rows[0][1]
for N, S in rows:
    print(f"wall at N = {N:2d} (gap {N - n:2d})   S = {S:8.3f}   change {S / S_far - 1:+.2%}")

# The entropy is insensitive to the wall until it comes within a few sites,
# then drops to zero when nothing is left outside the sphere.
