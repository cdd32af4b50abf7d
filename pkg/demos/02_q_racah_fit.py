"""
Fitting the q-Racah form
========================

Eigenvalue sequences of Q-polynomial graphs of q-Racah type have the form
theta_i = w + u q^(2i-D) + v q^(D-2i). Here q is recovered from the ratios
(theta_{i-2} - theta_{i+1}) / (theta_{i-1} - theta_i), which equal
q^2 + 1 + q^-2 for every i.
"""

import numpy as np

from awgraph.errors import NotQRacah
from awgraph.qracah import fit_base_q, fit_qracah

# C_6 has theta = (2, 1, -1, -2) and q = exp(i pi / 6) lies on the unit circle
th = [2, 1, -1, -2]
fit = fit_qracah(th, th)[0]
print("C_6: q =", np.round(fit.q, 6), " u =", np.round(fit.u, 6), " v =", np.round(fit.v, 6))
print("     a =", np.round(fit.a, 6), "(a^2 = u/v = -1)")

# the Hadamard graph of order 8 gives a real q with q^2 = 1 + sqrt 2
th = [8, 2 * np.sqrt(2), 0, -2 * np.sqrt(2), -8]
fit = fit_qracah(th, th)[0]
print("hadamard(8): q^2 =", round(fit.q.real**2, 12), " 1 + sqrt 2 =", round(1 + np.sqrt(2), 12))

# every branch: q, -q, 1/q, -1/q all solve the same quadratic
print("all branches for C_6:", np.round(fit_base_q([2, 1, -1, -2]), 4))

# the hypercube is Q-polynomial but its ratio forces q^4 = 1, so it is rejected
try:
    fit_qracah([4, 2, 0, -2, -4], [4, 2, 0, -2, -4])
except NotQRacah as exc:
    print("hypercube(4):", type(exc).__name__, "-", exc)
