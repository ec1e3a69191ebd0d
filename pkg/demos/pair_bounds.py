"""
Sum and product bounds for a few qubit observables
==================================================

Builds a qubit state from its Bloch vector, evaluates every bound for a set
of Pauli observables, and compares each bound to the actual sum of
variances.
"""

import math

import numpy as np

from varbounds import bounds, quantum

sx, sy, sz = (quantum.pauli(n) for n in ("sigma_x", "sigma_y", "sigma_z"))

# A state on the sqrt(3)/2 circle, a quarter turn in
state = quantum.state_from_bloch([0.0, math.sqrt(3) / 2, 0.0])
print("purity", state.purity)

# Two observables: the Gram-matrix bound sits above the plain pair bound
rep = bounds.sum_bounds(state, [sx, sz])
print("variance sum", rep.lhs)
for name, value in rep.bounds().items():
    print(f"  {name:<13}{value:.7f}")
print("largest Gram eigenvalue", rep.lambda_max)

# The Gram matrix itself; off-diagonal magnitude is the normalised covariance
gram = bounds.build_gram(state, [sx, sz])
print(np.round(gram.m_matrix, 6))

# Three observables on the maximally mixed state: the bound is tight
rep3 = bounds.sum_bounds(quantum.state_from_bloch([0, 0, 0]), [sx, sy, sz])
print("mixed state", rep3.lhs, rep3.thm1, rep3.chen_fei)

# Product form: sigma_z against {sigma_x, sigma_y}
s = quantum.state_from_bloch([0.5 * math.cos(math.pi / 4), 0.5 * math.sin(math.pi / 4), 0])
prod = bounds.product_bounds(s, [sz], [sx, sy])
print("product", prod.lhs, prod.thm2, prod.cor2, prod.c22)

# Robertson and Schrodinger bounds for one pair
print(bounds.pair_bounds(quantum.state_from_bloch([0, 0, 1]), sx, sy))
