import math
from fractions import Fraction

import numpy as np
import pytest

from spindex.clifford import GaussianRational, Multivector, QuadraticForm
from spindex.spin_groups import (NotScalarNormError, SpinElement,
                                 _conjugation_matrix, covering_map,
                                 is_in_spin, lift_rotation,
                                 rational_unit_vector, random_spin_element,
                                 spin_norm, spinc_canonicalize,
                                 twisted_conjugation)

F4 = QuadraticForm.euclidean(4)


def blade(*idx):
    return Multivector.blade(F4, idx)


def test_twisted_conjugation_identity():
    v = Multivector.vector(F4, [1, 2, 3, 4])
    assert twisted_conjugation(Multivector.scalar(F4, 1), v) == v


def test_twisted_conjugation_by_vector_is_reflection():
    # exact blade-product chain: x v alpha(x)^-1 with x = e1 negates e1 and
    # fixes the orthogonal directions
    e1, e2 = blade(1), blade(2)
    assert twisted_conjugation(e1, e1) == -e1
    assert twisted_conjugation(e1, e2) == e2
    # q-norm of the image is preserved
    v = Multivector.vector(F4, [3, 4, 0, 0])
    image = twisted_conjugation(e1, v)
    assert image * image == v * v


def test_twisted_conjugation_not_invertible():
    form = QuadraticForm(2, (-1, -1))
    zero_divisor = Multivector(form, {0: GaussianRational(1),
                                      1: GaussianRational(1)})
    with pytest.raises(ZeroDivisionError):
        twisted_conjugation(zero_divisor, Multivector.basis_vector(form, 1))


def test_spin_norm_values():
    assert spin_norm(Multivector.scalar(F4, 1)) == 1
    v = Multivector.vector(F4, [1, 2, 0, 0])
    assert spin_norm(v) == 5
    w = Multivector.vector(F4, [0, 1, 1, 1])
    assert spin_norm(v * w) == GaussianRational(15)   # q(v) q(w)


def test_spin_norm_multiplicative_on_products():
    rng = np.random.default_rng(2)
    for _ in range(10):
        total = Multivector.scalar(F4, 1)
        expected = GaussianRational(1)
        for _ in range(int(rng.integers(1, 7))):
            coords = [Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
                      for _ in range(4)]
            v = Multivector.vector(F4, coords)
            if v.is_zero():
                continue
            total = total * v
            expected = expected * GaussianRational(F4.value(coords))
        assert spin_norm(total) == expected


def test_spin_norm_rejects_non_group_elements():
    x = Multivector.scalar(F4, 1) + blade(1, 2, 3)
    with pytest.raises(NotScalarNormError):
        spin_norm(x)


def test_is_in_spin_certificates():
    assert is_in_spin(blade(1, 2)).ok
    cert_odd = is_in_spin(blade(1))
    assert not cert_odd.ok and "odd" in cert_odd.reason
    cert_norm = is_in_spin(2 * blade(1, 2))
    assert not cert_norm.ok and "norm" in cert_norm.reason


def test_spin_elements_are_even():
    rng = np.random.default_rng(4)
    for _ in range(5):
        u = random_spin_element(rng, F4, pairs=2)
        _, odd = u.value.grade_decompose()
        assert odd.is_zero()


def test_covering_map_examples():
    assert covering_map(SpinElement(Multivector.scalar(F4, 1))).to_numpy().tolist() \
        == np.eye(4).tolist()
    u = SpinElement(blade(1, 2))
    rot = covering_map(u)
    assert rot.to_numpy().tolist() == np.diag([-1.0, -1.0, 1.0, 1.0]).tolist()
    assert covering_map(-u).entries == rot.entries


def test_covering_map_quarter_turn():
    u = lift_rotation(1, 2, math.pi / 2, F4)
    m = covering_map(u).to_numpy()
    expected = np.eye(4)
    expected[0, 0] = expected[1, 1] = 0.0
    expected[1, 0], expected[0, 1] = 1.0, -1.0
    assert np.max(np.abs(m - expected)) < 1e-12


def test_lift_rotation_two_sheets():
    one = Multivector.scalar(F4, 1)
    assert lift_rotation(1, 2, 0.0, F4).value == one
    full = lift_rotation(1, 2, 2 * math.pi, F4)
    assert full.value.isclose(-one)
    assert covering_map(full).isclose(covering_map(SpinElement(one)))
    assert lift_rotation(1, 2, math.pi, F4).value.isclose(blade(1, 2))
    theta = 1.37
    assert lift_rotation(1, 2, theta + 2 * math.pi, F4).value.isclose(
        -lift_rotation(1, 2, theta, F4).value)


def test_lift_rotation_orientation_convention():
    theta = 0.7
    m = covering_map(lift_rotation(1, 2, theta, F4)).to_numpy()
    assert abs(m[0, 0] - math.cos(theta)) < 1e-12
    assert abs(m[1, 0] - math.sin(theta)) < 1e-12


def test_covering_map_is_homomorphism_exact():
    rng = np.random.default_rng(8)
    for dim in (3, 4, 5):
        form = QuadraticForm.euclidean(dim)
        a = random_spin_element(rng, form, pairs=1)
        b = random_spin_element(rng, form, pairs=2)
        ra, rb = covering_map(a), covering_map(b)
        product = tuple(tuple(sum(ra.entries[i][k] * rb.entries[k][j]
                                  for k in range(dim)) for j in range(dim))
                        for i in range(dim))
        assert covering_map(a * b).entries == product


def test_kernel_is_exactly_plus_minus_one():
    rng = np.random.default_rng(9)
    f3 = QuadraticForm.euclidean(3)
    elements = [random_spin_element(rng, f3, pairs=p) for p in (1, 2, 3, 1, 2)]
    for i, u in enumerate(elements):
        assert _conjugation_matrix(-u.value).entries == covering_map(u).entries
        for j, w in enumerate(elements):
            if covering_map(u).entries == covering_map(w).entries and i != j:
                assert w.value in (u.value, -u.value)


def test_rotation_matrix_exactness():
    rng = np.random.default_rng(10)
    f5 = QuadraticForm.euclidean(5)
    for _ in range(10):
        u = random_spin_element(rng, f5, pairs=2)
        rot = covering_map(u)
        assert rot.is_exact()
        assert rot.is_special_orthogonal(f5)
        assert rot.determinant() == 1


def test_rational_unit_vectors():
    rng = np.random.default_rng(11)
    for dim in (1, 2, 3, 4, 5):
        v = rational_unit_vector(rng, dim)
        assert sum(x * x for x in v) == 1
        assert all(isinstance(x, Fraction) for x in v)


def test_spinc_canonicalization():
    u = SpinElement(blade(1, 2))
    z = GaussianRational(0, 1)
    assert spinc_canonicalize(u, z) == spinc_canonicalize(-u, -z)
    one = SpinElement(Multivector.scalar(F4, 1))
    sc = spinc_canonicalize(one, GaussianRational(1))
    assert sc.phase == GaussianRational(1)
    flipped = spinc_canonicalize(one, GaussianRational(-1))
    assert flipped.phase == GaussianRational(1)
    assert flipped.spin.value == -Multivector.scalar(F4, 1)


def test_spinc_multiplication_well_defined():
    u = SpinElement(blade(1, 2))
    z = GaussianRational(0, 1)
    a = spinc_canonicalize(u, z)
    b = spinc_canonicalize(-u, -z)
    prod = a * b
    assert prod == a * a
    assert prod.spin.value == Multivector.scalar(F4, 1)
    assert prod.phase == GaussianRational(1)
    # Pythagorean phase stays exact
    p = GaussianRational(Fraction(3, 5), Fraction(4, 5))
    sc = spinc_canonicalize(u, p)
    assert isinstance(sc.phase, GaussianRational)


def test_spinc_rejects_non_unit_phase():
    u = SpinElement(blade(1, 2))
    with pytest.raises(ValueError):
        spinc_canonicalize(u, GaussianRational(2))


def test_spinc_product_independent_of_representatives():
    u = SpinElement(blade(1, 2))
    w = SpinElement(blade(2, 3))
    z1 = GaussianRational(Fraction(3, 5), Fraction(4, 5))
    z2 = GaussianRational(Fraction(5, 13), Fraction(-12, 13))
    reference = spinc_canonicalize(u, z1) * spinc_canonicalize(w, z2)
    for su, sw in [(1, -1), (-1, 1), (-1, -1)]:
        a = spinc_canonicalize(SpinElement(su * u.value), su * z1)
        b = spinc_canonicalize(SpinElement(sw * w.value), sw * z2)
        assert a * b == reference


def test_rotation_matrix_json():
    u = SpinElement(blade(1, 2))
    data = covering_map(u).to_json()
    assert data["dim"] == 4
    assert data["rows"][0][0] == "-1"


def test_spin_element_json_round_trip():
    u = SpinElement(blade(1, 2))
    assert SpinElement.from_json(u.to_json()).value == u.value
