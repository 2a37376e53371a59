import numpy as np
import pytest

from momentflow import (adjoint, adjoint_from_matrix, apply_group, apply_lie,
                        brackets, build_context, closed_form_moment,
                        criticality_residual, dual, energy, lambda2,
                        lambda2_embed, moment, rep_vector, standard,
                        torus_weights, translated_moment)
from momentflow.bracket import bracket_preset

from conftest import matrix_families, random_orthogonal, random_vector


def _e(n, i, j):
    m = np.zeros((n, n))
    m[i, j] = 1.0
    return m


def _heisenberg_vector():
    return bracket_preset("heisenberg", 3).to_rep_vector()


def test_standard_basis_vector():
    ctx = build_context(3, "GL")
    v = rep_vector(standard(3), [1.0, 0.0, 0.0])
    mv = moment(ctx, standard(3), v)
    assert np.abs(mv.matrix - _e(3, 0, 0)).max() <= 1e-15
    assert abs(mv.energy - 1.0) <= 1e-15


def test_adjoint_normal_matrices_are_in_the_kernel(rng):
    ctx = build_context(3, "GL")
    spec = adjoint(3)
    mv = moment(ctx, spec, adjoint_from_matrix(np.diag([1.0, 2.0, -1.0])))
    assert np.abs(mv.matrix).max() <= 1e-15
    q = random_orthogonal(rng, 3)
    mv = moment(ctx, spec, adjoint_from_matrix(q @ np.diag([3.0, 1.0, 0.5]) @ q.T))
    assert np.abs(mv.matrix).max() <= 1e-13


def _pi_bracket_coefficient(mu, s):
    """Oracle for <m(mu), S>: the displayed expansion of pi(S), summed over
    ordered basis pairs, divided by the ordered-pair norm of mu."""
    n = 3
    e = np.eye(n)
    num = 0.0
    nrm2 = 0.0
    for i in range(n):
        for j in range(n):
            mij = mu.mu(e[i], e[j])
            pij = s @ mij - mu.mu(s @ e[i], e[j]) - mu.mu(e[i], s @ e[j])
            num += pij @ mij
            nrm2 += mij @ mij
    return num / nrm2


def test_heisenberg_moment_value():
    # oracle: the defining identity evaluated on E_11, E_22, E_33 by direct
    # expansion of pi(S)mu; the hand value is diag(-1, -1, 1), energy 3
    ctx = build_context(3, "GL")
    mu = bracket_preset("heisenberg", 3)
    expected = np.array([-1.0, -1.0, 1.0])
    for k in range(3):
        assert _pi_bracket_coefficient(mu, _e(3, k, k)) == expected[k]
    mv = moment(ctx, brackets(3), mu.to_rep_vector())
    assert np.abs(mv.matrix - np.diag(expected)).max() <= 1e-14
    assert abs(mv.energy - 3.0) <= 1e-13
    assert abs(energy(ctx, brackets(3), mu.to_rep_vector()) - 3.0) <= 1e-13


def test_closed_form_adjoint_nilpotent():
    mv = closed_form_moment(adjoint(2), adjoint_from_matrix(_e(2, 0, 1)))
    assert np.array_equal(mv.matrix, np.diag([1.0, -1.0]))
    assert mv.energy == 2.0
    assert np.array_equal(mv.spectrum, [1.0, -1.0])


def test_closed_form_lambda2_rotation():
    # oracle: generic moment via the defining identity
    ctx = build_context(2, "GL")
    v = lambda2_embed([1.0, 0.0], [0.0, 1.0])
    generic = moment(ctx, lambda2(2), v)
    assert np.abs(generic.matrix - np.eye(2)).max() <= 1e-14
    closed = closed_form_moment(lambda2(2), v)
    assert np.abs(closed.matrix - generic.matrix).max() <= 1e-14


def test_closed_form_dual():
    ctx = build_context(2, "GL")
    v = rep_vector(dual(2), [1.0, 0.0])
    generic = moment(ctx, dual(2), v)
    assert np.abs(generic.matrix + _e(2, 0, 0)).max() <= 1e-15
    assert np.abs(closed_form_moment(dual(2), v).matrix - generic.matrix).max() <= 1e-15


@pytest.mark.parametrize("n", [2, 3, 5])
def test_closed_forms_match_generic(rng, n):
    ctx = build_context(n, "GL")
    for spec in matrix_families(n):
        for _ in range(20):
            v = random_vector(rng, spec)
            generic = moment(ctx, spec, v)
            closed = closed_form_moment(spec, v)
            scale = max(1.0, np.abs(generic.matrix).max())
            assert np.abs(closed.matrix - generic.matrix).max() <= 1e-12 * scale


def test_defining_identity_against_apply_lie(rng):
    # oracle route: <pi(B_k)v, v>/<v, v> computed with apply_lie directly
    for n in (2, 4):
        ctx = build_context(n, "GL")
        for spec in matrix_families(n):
            for _ in range(5):
                v = random_vector(rng, spec)
                mv = moment(ctx, spec, v)
                nrm2 = v.coords @ v.coords
                for b in ctx.p_basis:
                    lhs = float(np.tensordot(mv.matrix, b, axes=2))
                    rhs = float(apply_lie(spec, b, v).coords @ v.coords) / nrm2
                    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_sl_context_gives_traceless_moment(rng):
    ctx = build_context(3, "SL")
    v = random_vector(rng, standard(3))
    mv = moment(ctx, standard(3), v)
    assert abs(np.trace(mv.matrix)) <= 1e-14


def test_scale_invariance(rng):
    ctx = build_context(3, "GL")
    for spec in matrix_families(3):
        v = random_vector(rng, spec)
        base = moment(ctx, spec, v).matrix
        for c in (-3.0, 0.01, 7.0):
            scaled = moment(ctx, spec, rep_vector(spec, c * v.coords)).matrix
            assert np.abs(scaled - base).max() <= 1e-13 * max(1.0, np.abs(base).max())


def test_inner_product_rescaling_is_exact(rng):
    # scaling all coordinates by a power of two rescales the V-inner product
    # uniformly and must not change the moment map at all
    ctx = build_context(3, "GL")
    for spec in matrix_families(3):
        v = random_vector(rng, spec)
        base = moment(ctx, spec, v).matrix
        scaled = moment(ctx, spec, rep_vector(spec, 4.0 * v.coords)).matrix
        assert np.array_equal(scaled, base)


def test_k_equivariance(rng):
    ctx = build_context(3, "GL")
    for spec in matrix_families(3):
        for _ in range(10):
            v = random_vector(rng, spec)
            k = random_orthogonal(rng, 3)
            lhs = k @ moment(ctx, spec, v).matrix @ k.T
            rhs = moment(ctx, spec, apply_group(spec, k, v)).matrix
            assert np.abs(lhs - rhs).max() <= 1e-10


def test_energy_matches_defining_identity_shortcut(rng):
    ctx = build_context(3, "GL")
    for spec in matrix_families(3):
        v = random_vector(rng, spec)
        mv = moment(ctx, spec, v)
        shortcut = float(apply_lie(spec, mv.matrix, v).coords @ v.coords) / (v.coords @ v.coords)
        assert abs(mv.energy - shortcut) <= 1e-12 * max(1.0, mv.energy)


def test_translated_moment_identity_element(rng):
    ctx = build_context(2, "GL")
    spec = standard(2)
    v = rep_vector(spec, [1.0, 2.0])
    rep = translated_moment(ctx, spec, np.eye(2), v)
    assert np.abs(rep.matrix - moment(ctx, spec, v).matrix).max() <= 1e-15
    assert rep.in_Ad_h_p


def test_translated_moment_orthogonal(rng):
    # oracle: the closed form v v^T / |v|^2 evaluated at rho(h) e_1
    ctx = build_context(3, "GL")
    spec = standard(3)
    h = random_orthogonal(rng, 3)
    ve1 = rep_vector(spec, [1.0, 0.0, 0.0])
    rep = translated_moment(ctx, spec, h, apply_group(spec, h, ve1))
    expected = h @ _e(3, 0, 0) @ h.T
    assert np.abs(rep.matrix - expected).max() <= 1e-12
    assert rep.in_Ad_h_p


def test_translated_moment_diagonal_eigenvector():
    ctx = build_context(2, "GL")
    spec = standard(2)
    rep = translated_moment(ctx, spec, np.diag([2.0, 1.0]), rep_vector(spec, [1.0, 0.0]))
    assert np.abs(rep.matrix - _e(2, 0, 0)).max() <= 1e-15


def test_k_equivariance_via_translated_moment(rng):
    # Ad_h(m(v)) = m(rho(h) v) for orthogonal h, phrased through the API
    ctx = build_context(3, "GL")
    for spec in matrix_families(3):
        v = random_vector(rng, spec)
        k = random_orthogonal(rng, 3)
        rep = translated_moment(ctx, spec, k, apply_group(spec, k, v))
        assert np.abs(rep.matrix - k @ moment(ctx, spec, v).matrix @ k.T).max() <= 1e-10


def test_translated_moment_depends_only_on_coset(rng):
    # replacing h by h k for orthogonal k changes nothing: the translated
    # data is a function of the coset hK
    ctx = build_context(3, "GL")
    from conftest import random_well_conditioned
    for spec in matrix_families(3):
        v = random_vector(rng, spec)
        h = random_well_conditioned(rng, 3)
        k = random_orthogonal(rng, 3)
        a = translated_moment(ctx, spec, h, v).matrix
        b = translated_moment(ctx, spec, h @ k, v).matrix
        assert np.abs(a - b).max() <= 1e-10 * max(1.0, np.abs(a).max())


def test_criticality_residual_values():
    ctx2 = build_context(2, "GL")
    assert criticality_residual(ctx2, standard(2), rep_vector(standard(2), [1.0, 0.0])) <= 1e-15
    assert criticality_residual(ctx2, adjoint(2), adjoint_from_matrix(_e(2, 0, 1))) <= 1e-15

    # oracle: direct evaluation of pi(m(v))v and F(v)v shows they differ
    spec = adjoint(2)
    v = adjoint_from_matrix(_e(2, 0, 1) + np.eye(2))
    ctx = ctx2
    mv = moment(ctx, spec, v)
    lhs = apply_lie(spec, mv.matrix, v).coords
    rhs = mv.energy * v.coords
    assert np.linalg.norm(lhs - rhs) > 1e-3
    assert criticality_residual(ctx, spec, v) > 1e-3


def test_zero_vector_rejected():
    ctx = build_context(2, "GL")
    z = rep_vector(standard(2), [0.0, 0.0])
    with pytest.raises(ValueError):
        moment(ctx, standard(2), z)
    with pytest.raises(ValueError):
        closed_form_moment(standard(2), z)
    with pytest.raises(ValueError):
        criticality_residual(ctx, standard(2), z)
    with pytest.raises(ValueError):
        translated_moment(ctx, standard(2), np.eye(2), z)


def test_closed_form_rejects_torus_family():
    spec = torus_weights([(1, 0), (0, 1)])
    with pytest.raises(ValueError):
        closed_form_moment(spec, rep_vector(spec, [1.0, 0.0]))


def test_translated_moment_rejects_singular():
    ctx = build_context(2, "GL")
    v = rep_vector(standard(2), [1.0, 0.0])
    with pytest.raises(ValueError):
        translated_moment(ctx, standard(2), np.zeros((2, 2)), v)


def test_moment_value_invariants(rng):
    ctx = build_context(4, "GL")
    for spec in matrix_families(4):
        v = random_vector(rng, spec)
        mv = moment(ctx, spec, v)
        assert np.abs(mv.matrix - mv.matrix.T).max() <= 1e-12
        assert abs(mv.energy - np.trace(mv.matrix @ mv.matrix)) <= 1e-12 * max(1.0, mv.energy)
        assert all(mv.spectrum[i] >= mv.spectrum[i + 1] for i in range(len(mv.spectrum) - 1))
