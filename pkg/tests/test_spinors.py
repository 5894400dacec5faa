import numpy as np
import pytest

from spindex import spinors
from spindex.spinors import (CliffordModule, MINUS_ODD, PLUS_ODD, UNIQUE_EVEN,
                             chirality_operator, clifford_action,
                             clifford_matrix, decompose_module, direct_sum,
                             flip_grading, forget_grading, gamma_matrices,
                             graded_to_ungraded, odd_irreps, restrict_module,
                             spinor_module, ungraded_to_graded, volume_image)


@pytest.mark.parametrize("k", [2, 4, 6])
def test_generator_relations_exact(k):
    gens = gamma_matrices(k)
    eye = np.eye(1 << (k // 2))
    for i, gi in enumerate(gens):
        for j, gj in enumerate(gens):
            target = -2 * eye if i == j else 0 * eye
            assert np.array_equal(gi @ gj + gj @ gi, target)


def test_dimension_two_module():
    gens = gamma_matrices(2)
    assert all(g.shape == (2, 2) for g in gens)
    assert np.array_equal(gens[0] @ gens[1], -(gens[1] @ gens[0]))
    # surjectivity: the four blade images are linearly independent
    blades = [np.eye(2), gens[0], gens[1], gens[0] @ gens[1]]
    flat = np.array([b.flatten() for b in blades])
    assert np.linalg.matrix_rank(flat) == 4


def test_dimension_four_module():
    assert spinor_module(4).dim == 4


@pytest.mark.parametrize("k", [2, 4, 6])
def test_blade_images_traceless(k):
    gens = gamma_matrices(k)
    for mask in range(1, 1 << k):
        img = np.eye(1 << (k // 2), dtype=complex)
        for i in range(k):
            if mask >> i & 1:
                img = img @ gens[i]
        assert np.trace(img) == 0


def test_chirality_operator():
    m2 = spinor_module(2)
    om = chirality_operator(m2)
    evals = np.linalg.eigvalsh(om)
    assert np.allclose(np.sort(evals), [-1.0, 1.0])
    m4 = spinor_module(4)
    om4 = chirality_operator(m4)
    assert np.array_equal(om4 @ om4, np.eye(4))
    assert np.trace(om4) == 0
    for g in m4.generators:
        assert np.array_equal(om4 @ g, -(g @ om4))
    w = np.linalg.eigvalsh(om4)
    assert int(np.sum(w > 0)) == 2 and int(np.sum(w < 0)) == 2


def test_clifford_action():
    m = spinor_module(2)
    rng = np.random.default_rng(0)
    s = rng.normal(size=2) + 1j * rng.normal(size=2)
    assert np.allclose(clifford_action([1, 0], m, clifford_action([1, 0], m, s)), -s)
    assert np.allclose(clifford_action([0, 0], m, s), 0)
    v = np.array([0.6, 0.8])
    cs = clifford_action(v, m, s / np.linalg.norm(s))
    assert np.isclose(np.linalg.norm(cs), 1.0)   # |cl(v)s| = |v||s|, |v| = 1
    cm = clifford_matrix(v, m)
    assert np.allclose(cm @ cm, -np.eye(2))      # cl(v)^2 = -|v|^2
    # action swaps the grading eigenspaces
    plus = np.array([1.0, 0.0])
    out = clifford_action(v, m, plus)
    assert np.allclose(m.grading @ out, -out)


def test_clifford_action_dimension_errors():
    m = spinor_module(2)
    with pytest.raises(ValueError):
        clifford_action([1.0], m, np.zeros(2))
    with pytest.raises(ValueError):
        clifford_action([1.0, 0.0], m, np.zeros(3))


def test_restrict_module():
    r = restrict_module(spinor_module(2))
    assert r.clifford_dim == 1 and r.dim == 2
    w = np.linalg.eigvalsh(r.grading)
    assert int(np.sum(w > 0)) == 1 and int(np.sum(w < 0)) == 1
    m4 = spinor_module(4)
    twice = restrict_module(restrict_module(m4))
    assert twice.clifford_dim == 2
    assert all(np.array_equal(a, b)
               for a, b in zip(twice.generators, m4.generators[:2]))
    dec = decompose_module(restrict_module(forget_grading(m4)))
    assert dec.multiplicities == {PLUS_ODD: 1, MINUS_ODD: 1}


@pytest.mark.parametrize("k", [1, 3, 5])
def test_odd_irreps_labels(k):
    plus, minus = odd_irreps(k)
    plus.validate()
    minus.validate()
    norm = 1j ** ((k + 1) // 2)
    assert np.allclose(volume_image(plus), norm * np.eye(plus.dim))
    assert np.allclose(volume_image(minus), -norm * np.eye(minus.dim))


def test_decompose_even():
    m4 = forget_grading(spinor_module(4))
    assert decompose_module(m4).multiplicities == {UNIQUE_EVEN: 1}
    assert decompose_module(direct_sum(m4, m4)).multiplicity(UNIQUE_EVEN) == 2


def test_decompose_odd_first_factor():
    plus, minus = odd_irreps(3)
    assert decompose_module(plus).multiplicities == {PLUS_ODD: 1, MINUS_ODD: 0}
    assert decompose_module(minus).multiplicities == {PLUS_ODD: 0, MINUS_ODD: 1}
    both = direct_sum(plus, minus)
    assert decompose_module(both).multiplicities == {PLUS_ODD: 1, MINUS_ODD: 1}


def test_decompose_invariant_under_conjugation():
    rng = np.random.default_rng(5)
    plus, minus = odd_irreps(3)
    module = direct_sum(direct_sum(plus, plus), minus)
    p = rng.normal(size=(module.dim, module.dim)) \
        + 0.1j * rng.normal(size=(module.dim, module.dim)) + 3 * np.eye(module.dim)
    conj = spinors.conjugate_module(module, p)
    assert decompose_module(conj, tol=1e-8) == decompose_module(module)


def test_graded_decompose_invariant_under_conjugation():
    rng = np.random.default_rng(6)
    module = direct_sum(spinor_module(2), flip_grading(spinor_module(2)))
    p = rng.normal(size=(4, 4)) + 0.1j * rng.normal(size=(4, 4)) + 3 * np.eye(4)
    conj = spinors.conjugate_module(module, p)
    assert decompose_module(conj, graded=True, tol=1e-8) \
        == decompose_module(module, graded=True)


def test_decompose_rejects_broken_relations():
    bad = CliffordModule(2, (np.eye(2, dtype=complex), 1j * np.eye(2)), None)
    with pytest.raises(spinors.ModuleError):
        decompose_module(bad)


def test_graded_ungraded_equivalence():
    m2 = spinor_module(2)
    u = graded_to_ungraded(m2)
    assert u.clifford_dim == 1 and u.dim == 1
    m4 = spinor_module(4)
    back = ungraded_to_graded(graded_to_ungraded(m4))
    back.validate(tol=1e-12)
    assert decompose_module(back, tol=1e-9) == decompose_module(m4)
    # zero module round trip
    zero = CliffordModule(2, tuple(np.zeros((0, 0), dtype=complex) for _ in range(2)),
                          np.zeros((0, 0), dtype=complex))
    z = graded_to_ungraded(zero)
    assert z.dim == 0
    assert ungraded_to_graded(z).dim == 0


def test_two_gradings_inequivalent_graded_equivalent_ungraded():
    s = spinor_module(2)
    flipped = flip_grading(s)
    assert decompose_module(s, graded=True) != decompose_module(flipped, graded=True)
    assert decompose_module(forget_grading(s)) == decompose_module(forget_grading(flipped))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_spinor_module_dimensions(k):
    m = spinor_module(k)
    m.validate()
    assert m.dim == 1 << ((k + 1) // 2)
    w = np.linalg.eigvalsh((m.grading + m.grading.conj().T) / 2)
    assert int(np.sum(w > 0)) == m.dim // 2


def test_module_json_round_trip():
    m = spinor_module(3)
    data = m.to_json()
    back = CliffordModule.from_json(data)
    assert back.clifford_dim == 3
    assert all(np.array_equal(a, b) for a, b in zip(back.generators, m.generators))
    assert np.array_equal(back.grading, m.grading)
    assert data["generators"][0][0][0].endswith("i")
