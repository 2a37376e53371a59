import numpy as np
import pytest
from scipy.linalg import expm

from momentflow import (adjoint, adjoint_from_matrix, apply_group, apply_lie,
                        brackets, build_context, dual, lambda2, lambda2_embed,
                        lambda2_to_matrix, rep_dim, rep_vector, standard,
                        torus_weights, vector_from_json, vector_to_json,
                        weight_components, weights_of)
from momentflow.bracket import bracket_preset

from conftest import matrix_families, random_orthogonal, random_vector, random_well_conditioned


def _e(n, i, j):
    m = np.zeros((n, n))
    m[i, j] = 1.0
    return m


def test_dimensions():
    assert rep_dim(adjoint(3)) == 9
    assert rep_dim(lambda2(4)) == 6
    assert rep_dim(brackets(3)) == 9
    assert rep_dim(standard(5)) == 5 == rep_dim(dual(5))
    assert rep_dim(torus_weights([(1, 0), (0, 1), (2, -1)])) == 3


def test_identity_acts_trivially(rng):
    for spec in matrix_families(3):
        v = random_vector(rng, spec)
        out = apply_group(spec, np.eye(3), v)
        assert np.abs(out.coords - v.coords).max() <= 1e-15


def test_adjoint_conjugation_example():
    spec = adjoint(2)
    v = adjoint_from_matrix(_e(2, 0, 1))
    out = apply_group(spec, np.diag([2.0, 1.0]), v)
    assert np.abs(out.coords - 2.0 * v.coords).max() <= 1e-15


def test_brackets_scaling_by_central_elements():
    # (rho(cI) mu)(x, y) = c mu(x/c, y/c) = mu(x, y) / c
    spec = brackets(3)
    mu = bracket_preset("heisenberg", 3).to_rep_vector()
    for c in (2.0, -0.5):
        out = apply_group(spec, c * np.eye(3), mu)
        assert np.abs(out.coords - mu.coords / c).max() <= 1e-14


def test_lie_action_simple_cases():
    v = rep_vector(standard(2), [1.0, 0.0])
    out = apply_lie(standard(2), _e(2, 0, 0), v)
    assert np.array_equal(out.coords, v.coords)

    spec = adjoint(2)
    x = adjoint_from_matrix(_e(2, 0, 1))
    out = apply_lie(spec, np.diag([1.0, -1.0]), x)
    assert np.abs(out.coords - 2.0 * x.coords).max() == 0.0


def test_brackets_lie_action_on_heisenberg():
    # oracle: pi(S)mu(x,y) = S mu(x,y) - mu(Sx,y) - mu(x,Sy) term by term;
    # for S = E_33 only the first term survives on (e1, e2) and gives e3 back
    spec = brackets(3)
    mu = bracket_preset("heisenberg", 3)
    v = mu.to_rep_vector()
    s = _e(3, 0, 0)
    lhs = s @ mu.mu([1, 0, 0], [0, 1, 0])
    lhs -= mu.mu(s @ np.array([1.0, 0, 0]), [0, 1, 0])
    lhs -= mu.mu([1, 0, 0], s @ np.array([0.0, 1, 0]))
    assert np.array_equal(lhs, -mu.mu([1, 0, 0], [0, 1, 0]))  # hand expansion for E_11

    out = apply_lie(spec, _e(3, 2, 2), v)
    assert np.abs(out.coords - v.coords).max() == 0.0


def test_weights_of_families():
    assert weights_of(standard(2)) == [(1, 0), (0, 1)]
    assert weights_of(dual(2)) == [(-1, 0), (0, -1)]
    w = weights_of(brackets(3))
    # coordinate layout: pairs (0,1), (0,2), (1,2), target index fastest
    assert w[2 * 3 + 0] == (1, -1, -1)   # c^1_23
    assert w[1 * 3 + 1] == (-1, 1, -1)   # c^2_13
    assert w[0 * 3 + 2] == (-1, -1, 1)   # c^3_12
    assert weights_of(lambda2(3)) == [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
    adj = weights_of(adjoint(2))
    assert adj == [(0, 0), (1, -1), (-1, 1), (0, 0)]


def test_weight_components():
    spec = adjoint(2)
    comp = weight_components(spec, adjoint_from_matrix(_e(2, 0, 1)))
    assert set(comp) == {(1, -1)}
    assert comp[(1, -1)].tolist() == [1.0]

    comp = weight_components(spec, adjoint_from_matrix(np.eye(2)))
    assert set(comp) == {(0, 0)}
    assert comp[(0, 0)].tolist() == [1.0, 1.0]

    comp = weight_components(standard(2), rep_vector(standard(2), [1.0, 1.0]))
    assert len(comp) == 2

    with pytest.raises(ValueError):
        weight_components(spec, adjoint_from_matrix(np.zeros((2, 2))))


def test_lambda2_embed():
    v = lambda2_embed([1.0, 0.0], [0.0, 1.0])
    assert np.array_equal(lambda2_to_matrix(v), _e(2, 0, 1) - _e(2, 1, 0))
    assert np.abs(lambda2_embed([1.0, 2.0], [1.0, 2.0]).coords).max() == 0.0
    assert np.array_equal(lambda2_embed([0.0, 1.0], [1.0, 0.0]).coords, -v.coords)


def test_lambda2_embed_bilinear(rng):
    x, y, z = rng.normal(size=(3, 4))
    lhs = lambda2_embed(x + 2.0 * z, y).coords
    rhs = lambda2_embed(x, y).coords + 2.0 * lambda2_embed(z, y).coords
    assert np.abs(lhs - rhs).max() <= 1e-12


@pytest.mark.parametrize("n", [2, 3])
def test_exponential_derivative_consistency(rng, n):
    h = 1e-5
    for spec in matrix_families(n):
        x = rng.normal(size=(n, n))
        v = random_vector(rng, spec)
        scale = max(1.0, v.norm)
        diff = (apply_group(spec, expm(h * x), v).coords - v.coords) / h
        lie = apply_lie(spec, x, v).coords
        assert np.abs(diff - lie).max() <= 1e-4 * scale


def test_group_homomorphism(rng):
    for spec in matrix_families(3):
        g = random_well_conditioned(rng, 3)
        h = random_well_conditioned(rng, 3)
        v = random_vector(rng, spec)
        lhs = apply_group(spec, g, apply_group(spec, h, v)).coords
        rhs = apply_group(spec, g @ h, v).coords
        assert np.abs(lhs - rhs).max() <= 1e-10 * max(1.0, np.abs(rhs).max())


def test_symmetry_split_under_inner_product(rng):
    # pi(B) symmetric for B in p, pi(X) skew for X in k, w.r.t. the dot product
    ctx = build_context(3, "GL")
    for spec in matrix_families(3):
        v = random_vector(rng, spec)
        w = random_vector(rng, spec)
        for b in ctx.p_basis:
            lhs = apply_lie(spec, b, v).coords @ w.coords
            rhs = v.coords @ apply_lie(spec, b, w).coords
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))
        for x in ctx.k_basis:
            lhs = apply_lie(spec, x, v).coords @ w.coords
            rhs = v.coords @ apply_lie(spec, x, w).coords
            assert abs(lhs + rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_diagonal_action_scales_by_weights_exactly(rng):
    # powers of two keep every float operation exact, so the comparison is
    # against the literal weight monomial, with zero tolerance
    diag = np.array([2.0, 1.0, -4.0])
    g = np.diag(diag)
    for spec in matrix_families(3):
        v = random_vector(rng, spec)
        out = apply_group(spec, g, v)
        ws = weights_of(spec)
        expected = np.array([v.coords[k] * np.prod(diag ** np.array(ws[k]))
                             for k in range(spec.dim)])
        assert np.array_equal(out.coords, expected)


def test_torus_weights_family(rng):
    spec = torus_weights([(1, 0), (0, 1), (1, 1)])
    v = rep_vector(spec, [1.0, 2.0, 3.0])
    out = apply_group(spec, np.diag([2.0, 4.0]), v)
    assert out.coords.tolist() == [2.0, 8.0, 24.0]
    out = apply_lie(spec, np.diag([1.0, -2.0]), v)
    assert out.coords.tolist() == [1.0, -4.0, -3.0]
    with pytest.raises(ValueError):
        apply_group(spec, np.array([[1.0, 1.0], [0.0, 1.0]]), v)
    with pytest.raises(ValueError):
        apply_lie(spec, np.array([[0.0, 1.0], [0.0, 0.0]]), v)
    with pytest.raises(ValueError):
        apply_group(spec, np.diag([1.0, 0.0]), v)


def test_singular_group_element_rejected(rng):
    for spec in matrix_families(2):
        v = random_vector(rng, spec)
        with pytest.raises(ValueError):
            apply_group(spec, np.array([[1.0, 1.0], [1.0, 1.0]]), v)


def test_ill_conditioned_warning(rng):
    spec = adjoint(2)
    v = random_vector(rng, spec)
    g = np.diag([1e9, 1e-9])
    with pytest.warns(UserWarning):
        apply_group(spec, g, v)


def test_k_action_is_orthogonal(rng):
    for spec in matrix_families(3):
        k = random_orthogonal(rng, 3)
        v = random_vector(rng, spec)
        out = apply_group(spec, k, v)
        assert abs(out.norm - v.norm) <= 1e-12 * max(1.0, v.norm)


def test_vector_json_round_trip(rng):
    for spec in matrix_families(3) + [torus_weights([(1, 0, 0), (0, -1, 2)])]:
        v = random_vector(rng, spec)
        doc = vector_to_json(v)
        back = vector_from_json(doc)
        assert back.spec == v.spec
        assert np.array_equal(back.coords, v.coords)


def test_rep_vector_length_checked():
    with pytest.raises(ValueError):
        rep_vector(adjoint(2), [1.0, 2.0, 3.0])
