"""Moment maps of the classical GL_n families, step by step.

The moment map of a representation assigns to every nonzero vector v the
symmetric matrix m(v) with  <m(v), B> = <pi(B)v, v> / <v, v>  for all
symmetric B.  This script builds the Cartan data, evaluates m on each
built-in family, and checks the two structural facts everything else rests
on: agreement with the per-family closed forms, and equivariance under the
orthogonal group.
"""

import numpy as np

from momentflow import (adjoint, adjoint_from_matrix, apply_group,
                        build_context, closed_form_moment, criticality_residual,
                        lambda2, lambda2_embed, moment, rep_vector, standard)

np.set_printoptions(precision=6, suppress=True)

ctx = build_context(3, "GL")
print(f"GL_3 context: dim p = {ctx.dim_p}, dim k = {ctx.dim_k}")
print("first p-basis element (diagonal torus prefix):")
print(ctx.p_basis[0])

# Standard family: m(v) = v v^T / |v|^2, a rank-one projector, so the
# energy F = tr(m^2) is identically 1 -- a single stratum.
spec = standard(3)
v = rep_vector(spec, [1.0, 2.0, 2.0])
mv = moment(ctx, spec, v)
print("\nstandard family, v = (1, 2, 2):")
print(mv.matrix)
print("energy:", mv.energy)

# Adjoint family: m(x) = [x, x^T] / |x|^2 vanishes exactly on normal
# matrices; a nilpotent Jordan block is maximally far from normal.
spec = adjoint(3)
x = adjoint_from_matrix(np.array([[0.0, 1, 0], [0, 0, 1], [0, 0, 0]]))
mv = moment(ctx, spec, x)
print("\nadjoint family, regular nilpotent:")
print(mv.matrix)
print("spectrum:", mv.spectrum)
print("criticality residual:", criticality_residual(ctx, spec, x))

sym = adjoint_from_matrix(np.diag([3.0, 1.0, -2.0]))
print("normal matrix -> |m| =", np.abs(moment(ctx, spec, sym).matrix).max())

# Lambda^2 family through the skew-matrix picture.
spec = lambda2(3)
w = lambda2_embed([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
print("\nlambda2 family, e1 ^ e2:")
print(moment(ctx, spec, w).matrix)

# Closed forms are verification shortcuts for the basis expansion:
for spec, vec in [(standard(3), v), (adjoint(3), x), (lambda2(3), w)]:
    dev = np.abs(closed_form_moment(spec, vec).matrix - moment(ctx, spec, vec).matrix).max()
    print(f"closed form vs generic ({spec.family}): {dev:.2e}")

# K-equivariance: rotating the vector conjugates the moment value.
rng = np.random.default_rng(0)
k, _ = np.linalg.qr(rng.normal(size=(3, 3)))
lhs = k @ moment(ctx, adjoint(3), x).matrix @ k.T
rhs = moment(ctx, adjoint(3), apply_group(adjoint(3), k, x)).matrix
print("\nK-equivariance deviation:", np.abs(lhs - rhs).max())
