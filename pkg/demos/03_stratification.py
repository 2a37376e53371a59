"""Exact stratum labels for the diagonal torus.

Everything here is rational arithmetic: the state of a vector (the weights
it touches), the minimum-norm point of the state hull with its optimality
certificate, the resulting stratum label, the full label enumeration of a
family, and the membership test for a stratum.
"""

import numpy as np

from momentflow import (adjoint, adjoint_from_matrix, dual, enumerate_labels,
                        instability_measure, label_to_json, optimal_class,
                        standard, state_of, stratum_membership, project_to_sl)
from momentflow.hesselink import HesselinkLabel
from momentflow.minnorm import min_norm_point

# The state of a matrix under conjugation by the diagonal torus: the roots
# where it has nonzero entries.
spec = adjoint(3)
x = adjoint_from_matrix(np.array([[0.0, 1, 1], [0, 0, 1], [0, 0, 0]]))
state = state_of(spec, x)
print("state of the upper-triangular nilpotent:", state)

# The minimum-norm point of the state hull comes with an exact certificate:
# barycentric coefficients over its support and the KKT margin.
cert = min_norm_point(state)
print("min-norm point:", cert.eta, " q =", cert.q)
print("support:", cert.support)
print("coefficients:", cert.coefficients, " margin:", cert.optimality_margin)

# The label packages the Weyl-normalized minimizer; the measure of
# instability certifies that it destabilizes the vector.
label = optimal_class(spec, x)
print("\nlabel:", label_to_json(label))
print("instability measure against eta:", instability_measure(state, cert.eta))

# A normal matrix is torus-semistable: zero lies in its state hull.
print("identity matrix ->", label_to_json(optimal_class(spec, adjoint_from_matrix(np.eye(3)))))

# All candidate labels of the standard family and its dual.
print("\nstandard family labels (Weyl classes):")
for lab in enumerate_labels(standard(3)).labels:
    print("  ", [str(e) for e in lab.eta], " q =", lab.q)
print("dual family labels:")
for lab in enumerate_labels(dual(3)).labels:
    print("  ", [str(e) for e in lab.eta], " q =", lab.q)

# Stratum membership: grade the state by <chi, eta> - q.  E_12 sits in the
# stratum of (1, -1); its transpose does not (negative grading).
spec2 = adjoint(2)
label2 = HesselinkLabel.from_eta((1, -1))
for name, m in [("E_12", [[0.0, 1], [0, 0]]), ("E_21", [[0.0, 0], [1, 0]])]:
    rep = stratum_membership(spec2, adjoint_from_matrix(np.array(m)), label2)
    print(f"\n{name}: grading = {rep.grading}, in_V_ge0 = {rep.in_V_ge0}, "
          f"in_U_ge0 = {rep.in_U_ge0}")

# Labels restrict to SL_n by orthogonal projection onto trace zero.
print("\nprojection of e_1 to the SL_3 torus:", project_to_sl((1, 0, 0)))
