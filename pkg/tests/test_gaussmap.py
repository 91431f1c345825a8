import numpy as np
import pytest

from loggauss import (
    SingularPointError,
    VarietySystem,
    classify_point,
    gauss_matrix,
    generalized_gauss,
    hypersurface_gauss,
    null_space,
    parse_poly,
    real_intersection_dim,
    schubert_cell_dimension,
    schubert_index,
    subspace_distance,
    torus_translate,
)

LINE = VarietySystem(2, (parse_poly("z1+z2-1", 2),), 1)
HYPERBOLA = VarietySystem(2, (parse_poly("z1*z2-1", 2),), 1)
SPACE_LINE = VarietySystem(3, (parse_poly("z1+z2-1", 3), parse_poly("z1-z3", 3)), 1)


def test_gauss_matrix_line():
    assert np.allclose(gauss_matrix(LINE, [0.5, 0.5]), [[0.5, 0.5]])


def test_gauss_matrix_hyperbola():
    assert np.allclose(gauss_matrix(HYPERBOLA, [2, 0.5]), [[1, 1]])


def test_gauss_matrix_codim2():
    G = gauss_matrix(SPACE_LINE, [0.5, 0.5, 0.5])
    assert np.allclose(G, [[0.5, 0.5, 0], [0.5, 0, -0.5]])


def test_hypersurface_gauss_constant_on_hyperbola():
    reps = [
        hypersurface_gauss(HYPERBOLA.generators[0], z)
        for z in ([2, 0.5], [0.5, 2], [1j, -1j])
    ]
    for rep in reps[1:]:
        assert np.allclose(rep, reps[0])
    assert np.allclose(reps[0], [1, 1] / np.sqrt(2))


def test_hypersurface_gauss_line_real_point():
    rep = hypersurface_gauss(LINE.generators[0], [0.5, 0.5])
    assert np.allclose(rep, [1, 1] / np.sqrt(2))


def test_hypersurface_gauss_nonreal_class():
    z = np.array([0.5 + 0.5j, 0.5 - 0.5j])
    rep = hypersurface_gauss(LINE.generators[0], z)
    # Im(z1 * conj z2) = 0.5, so no representative is real
    assert np.max(np.abs(rep.imag)) > 0.1


def test_hypersurface_gauss_singular():
    f = parse_poly("z1^2-2*z1+z2^2-2*z2+2", 2)  # both partials vanish at (1, 1)
    with pytest.raises(SingularPointError):
        hypersurface_gauss(f, [1, 1])


def test_generalized_gauss_line():
    E = generalized_gauss(LINE, [0.5, 0.5])
    assert E.basis.shape == (1, 2)
    assert subspace_distance(E.basis, np.array([[1.0, 1.0]])) < 1e-12


def test_generalized_gauss_codim2():
    E = generalized_gauss(SPACE_LINE, [0.5, 0.5, 0.5])
    assert E.basis.shape == (2, 3)
    target = np.array([[1.0, 1.0, 0.0], [1.0, 0.0, -1.0]])
    assert subspace_distance(E.basis, target) < 1e-12


def test_generalized_gauss_duplicate_generators():
    V2 = VarietySystem(2, (HYPERBOLA.generators[0], HYPERBOLA.generators[0]), 1)
    E1 = generalized_gauss(HYPERBOLA, [2, 0.5])
    E2 = generalized_gauss(V2, [2, 0.5])
    assert subspace_distance(E1.basis, E2.basis) < 1e-8


def test_generalized_gauss_rescaled_generators():
    from loggauss.laurent import scalar_combination, LaurentPoly

    f = LINE.generators[0]
    zero = LaurentPoly(2, {})
    scaled = scalar_combination(2.5 - 1j, f, 0, zero)
    V2 = VarietySystem(2, (scaled,), 1)
    z = np.array([0.3 + 0.2j, 0.7 - 0.2j])
    assert subspace_distance(
        generalized_gauss(LINE, z).basis, generalized_gauss(V2, z).basis
    ) < 1e-8


def test_schubert_index_examples():
    E = generalized_gauss(LINE, [0.5, 0.5])
    assert schubert_index(E) == 1
    assert real_intersection_dim(np.array([[1.0, 1j]])) == 0
    assert real_intersection_dim(np.array([[1, 0, 1j], [0, 1, 0]])) == 1


def test_schubert_cell_dimension():
    assert schubert_cell_dimension(1, 2, 1) == 1
    assert schubert_cell_dimension(0, 3, 1) == 6
    assert schubert_cell_dimension(2, 4, 2) == 4
    with pytest.raises(ValueError):
        schubert_cell_dimension(2, 3, 1)


def test_classify_hyperbola_always_critical():
    cls = classify_point(HYPERBOLA, [2, 0.5])
    assert (cls.m, cls.generic_m, cls.j, cls.critical) == (1, 0, 1, True)


def test_classify_line_nonreal():
    cls = classify_point(LINE, [0.5 + 0.5j, 0.5 - 0.5j])
    assert cls.m == 0 and not cls.critical


def test_classify_codim2_real_point():
    cls = classify_point(SPACE_LINE, [0.5, 0.5, 0.5])
    assert (cls.m, cls.generic_m, cls.j, cls.critical) == (2, 1, 1, True)


def test_classify_rejects_off_variety_point():
    with pytest.raises(SingularPointError, match="residual"):
        classify_point(LINE, [1.0, 1.0])


def test_degenerate_k_rejected():
    with pytest.raises(ValueError):
        VarietySystem(2, (parse_poly("z1+z2-1", 2),), 2)
    with pytest.raises(ValueError):
        VarietySystem(2, (parse_poly("z1+z2-1", 2),), 0)


def test_dimension_duality_on_samples():
    rng = np.random.default_rng(21)
    for V in (LINE, HYPERBOLA, SPACE_LINE):
        n, k = V.n, V.k
        for _ in range(10):
            z = _sample(V, rng)
            G = gauss_matrix(V, z)
            K = null_space(G)
            m_K = real_intersection_dim(K)
            m_E = schubert_index(generalized_gauss(V, z))
            assert m_E == m_K + (n - 2 * k)


def _sample(V, rng):
    from loggauss import newton_refine

    while True:
        z0 = rng.uniform(0.3, 3.0, V.n) * np.exp(1j * rng.uniform(-np.pi, np.pi, V.n))
        try:
            return newton_refine(V, z0).z
        except Exception:
            continue


def test_lemma_equivalence_on_samples():
    rng = np.random.default_rng(22)
    for V in (LINE, HYPERBOLA, SPACE_LINE):
        s_required = max(1, 2 * V.k - V.n + 1)
        for _ in range(10):
            z = _sample(V, rng)
            K = null_space(gauss_matrix(V, z))
            m_K = real_intersection_dim(K)
            cls = classify_point(V, z)
            assert cls.critical == (m_K >= s_required)
            assert cls.s_required == s_required


def test_classify_torus_translation_invariant():
    rng = np.random.default_rng(23)
    c = rng.uniform(0.5, 2.0, 2) * np.exp(1j * rng.uniform(-np.pi, np.pi, 2))
    for V in (LINE, HYPERBOLA):
        translated = VarietySystem(2, tuple(torus_translate(f, c) for f in V.generators), 1)
        for _ in range(5):
            z = _sample(V, rng)
            a = classify_point(V, z)
            b = classify_point(translated, z / c)
            assert (a.m, a.j, a.critical) == (b.m, b.j, b.critical)


def test_hypersurface_specialization():
    # l = 1: critical iff the projective Gauss image has a real representative
    rng = np.random.default_rng(24)
    for _ in range(20):
        z = _sample(LINE, rng)
        rep = hypersurface_gauss(LINE.generators[0], z)
        has_real_rep = real_intersection_dim(rep[None, :]) >= 1
        assert classify_point(LINE, z).critical == has_real_rep
