"""Moment map, energy, translated moment maps and the criticality residual.

The moment map of a vector v != 0 is the symmetric matrix m(v) determined by

    <m(v), B>  =  <pi(B) v, v> / <v, v>     for every B in p,

computed here by expanding over the orthonormal basis of p carried by a
CartanContext.  That expansion is the single source of truth; the per-family
closed forms below are verification shortcuts and are tested against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cartan import CartanContext
from .reps import (ADJOINT, BRACKETS, DUAL, LAMBDA2, STANDARD, TORUS_WEIGHTS,
                   RepSpec, RepVector, apply_group, apply_lie, brackets_tensor,
                   lambda2_to_matrix, rep_vector)

__all__ = [
    "MomentValue",
    "TranslatedMoment",
    "moment",
    "closed_form_moment",
    "energy",
    "translated_moment",
    "criticality_residual",
    "rep_action",
]

ZERO_NORM_FLOOR = 1e-300


@dataclass(frozen=True)
class MomentValue:
    """A moment map value: the matrix, its energy tr(m^2), and its spectrum
    (eigenvalues sorted non-increasing)."""

    matrix: np.ndarray
    energy: float
    spectrum: np.ndarray


@dataclass(frozen=True)
class TranslatedMoment:
    """Moment map after translating the background metric by h."""

    matrix: np.ndarray
    in_Ad_h_p: bool


class RepAction:
    """Coordinate matrices of pi over the p-basis of a context.

    ``pi_stack[k]`` is the dim x dim matrix of pi(B_k) acting on coordinates,
    so all moment-map quantities reduce to a couple of tensor contractions.
    """

    def __init__(self, ctx: CartanContext, spec: RepSpec):
        if ctx.n != spec.n:
            raise ValueError(f"context size {ctx.n} != representation size {spec.n}")
        d = spec.dim
        stack = np.zeros((ctx.dim_p, d, d))
        basis = np.eye(d)
        for k in range(ctx.dim_p):
            b = ctx.p_basis[k]
            for col in range(d):
                stack[k, :, col] = apply_lie(spec, b, rep_vector(spec, basis[col])).coords
        self.ctx = ctx
        self.spec = spec
        self.pi_stack = stack

    def moment_coefficients(self, coords: np.ndarray) -> np.ndarray:
        """Coefficients of m(v) over the p-basis."""
        nrm2 = float(coords @ coords)
        if nrm2 < ZERO_NORM_FLOOR:
            raise ValueError("moment map is undefined at the zero vector")
        return (self.pi_stack @ coords) @ coords / nrm2

    def gradient(self, coords: np.ndarray) -> np.ndarray:
        """pi(m(v)) v, the (sign-flipped) gradient-flow velocity."""
        nrm2 = float(coords @ coords)
        if nrm2 < ZERO_NORM_FLOOR:
            raise ValueError("moment map is undefined at the zero vector")
        w = self.pi_stack @ coords
        coeff = (w @ coords) / nrm2
        return coeff @ w

    def moment_and_gradient(self, coords: np.ndarray):
        nrm2 = float(coords @ coords)
        if nrm2 < ZERO_NORM_FLOOR:
            raise ValueError("moment map is undefined at the zero vector")
        w = self.pi_stack @ coords
        coeff = (w @ coords) / nrm2
        return coeff, coeff @ w


@lru_cache(maxsize=None)
def rep_action(ctx: CartanContext, spec: RepSpec) -> RepAction:
    # CartanContext hashes by identity (eq=False), so the cache is per
    # context instance; RepSpec is a value key.
    return RepAction(ctx, spec)


def _moment_value(ctx: CartanContext, coeff: np.ndarray) -> MomentValue:
    mat = np.tensordot(coeff, ctx.p_basis, axes=1)
    mat = 0.5 * (mat + mat.T)
    mat.flags.writeable = False
    return MomentValue(matrix=mat,
                       energy=float(coeff @ coeff),
                       spectrum=np.linalg.eigvalsh(mat)[::-1].copy())


def moment(ctx: CartanContext, spec: RepSpec, v: RepVector) -> MomentValue:
    """Moment map value of v, via the p-basis expansion."""
    coeff = rep_action(ctx, spec).moment_coefficients(v.coords)
    return _moment_value(ctx, coeff)


def energy(ctx: CartanContext, spec: RepSpec, v: RepVector) -> float:
    """Energy tr(m(v)^2); scale-invariant."""
    return moment(ctx, spec, v).energy


def closed_form_moment(spec: RepSpec, v: RepVector) -> MomentValue:
    """Per-family closed form of the moment map (GL context).

    Must agree with :func:`moment` to 1e-12; the generic expansion remains
    the defining computation.  Not available for TorusWeights.
    """
    fam = spec.family
    if fam == TORUS_WEIGHTS:
        raise ValueError("no closed form for a TorusWeights family")
    c = v.coords
    nrm2 = float(c @ c)
    if nrm2 < ZERO_NORM_FLOOR:
        raise ValueError("moment map is undefined at the zero vector")

    if fam == STANDARD:
        mat = np.outer(c, c) / nrm2
    elif fam == DUAL:
        mat = -np.outer(c, c) / nrm2
    elif fam == ADJOINT:
        x = c.reshape(spec.n, spec.n)
        mat = (x @ x.T - x.T @ x) / nrm2
    elif fam == LAMBDA2:
        a = lambda2_to_matrix(v)
        # isometric norm: ||A||^2 = -tr(A^2)/2, which equals <c, c>
        mat = -(a @ a) / nrm2
    else:  # BRACKETS
        t = brackets_tensor(v)
        # <m(mu) x, y> ||mu||^2 = sum_{i,j} <mu(e_i,e_j), x><mu(e_i,e_j), y>
        #                        - 2 sum_j <mu(x,e_j), mu(y,e_j)>,
        # sums over ordered pairs; ||mu||^2 in the same ordered convention.
        p = np.einsum("aij,bij->ab", t, t)
        lmat = np.einsum("laj,lij->ia", t, t)
        mat = (p - 2.0 * lmat) / float(np.einsum("lij,lij->", t, t))

    mat = 0.5 * (mat + mat.T)
    mat.flags.writeable = False
    return MomentValue(matrix=mat,
                       energy=float(np.tensordot(mat, mat, axes=([0, 1], [1, 0]))),
                       spectrum=np.linalg.eigvalsh(mat)[::-1].copy())


def translated_moment(ctx: CartanContext, spec: RepSpec, h, v: RepVector) -> TranslatedMoment:
    """Moment map for the h-translated metric: h m(rho(h)^{-1} v) h^{-1}.

    For orthogonal h this reduces to m(rho(h) v) conjugated back, which is
    the K-equivariance identity.
    """
    h = np.asarray(h, dtype=float)
    try:
        hinv = np.linalg.inv(h)
    except np.linalg.LinAlgError as exc:
        raise ValueError("singular translation element") from exc
    w = apply_group(spec, hinv, v)
    m = moment(ctx, spec, w).matrix
    out = h @ m @ hinv
    back = hinv @ out @ h
    scale = max(1.0, float(np.abs(back).max()))
    in_p = bool(np.abs(back - back.T).max() <= 1e-10 * scale)
    if ctx.group == "SL":
        in_p = in_p and abs(np.trace(back)) <= 1e-10 * scale
    return TranslatedMoment(matrix=out, in_Ad_h_p=in_p)


def criticality_residual(ctx: CartanContext, spec: RepSpec, v: RepVector) -> float:
    """||pi(m(v)) v - F(v) v|| / ||v||; zero exactly at fixed directions of
    the gradient flow."""
    act = rep_action(ctx, spec)
    coeff, grad = act.moment_and_gradient(v.coords)
    f = float(coeff @ coeff)
    return float(np.linalg.norm(grad - f * v.coords) / np.linalg.norm(v.coords))
