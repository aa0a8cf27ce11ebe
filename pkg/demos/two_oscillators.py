"""
Two coupled oscillators
=======================

The smallest possible system: two unit masses, each tied to the origin by a
spring of stiffness k0 and to each other by a spring of stiffness k1.
Tracing out one of them leaves the other in a mixed state.
"""

import numpy as np

from entangle import entanglement_entropy

k0 = 1.0
for k1 in [0.0, 0.1, 1.0, 10.0, 100.0]:
    K = np.array([[k0 + k1, -k1], [-k1, k0 + k1]])
    S = entanglement_entropy(K, [True, False]).value
    print(f"k1 = {k1:6.1f}   S = {S:.6f}")

# With no coupling the ground state is a product state and S vanishes.
# Stiffer coupling locks the two coordinates together and S grows like
# log(k1) without bound.
