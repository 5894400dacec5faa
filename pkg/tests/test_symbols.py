import itertools

import numpy as np
import pytest

from spindex import spinors, symbols
from spindex.symbols import (OperatorSpec, SymbolClass,
                             abs_class, abs_group, dalembertian_operator,
                             dirac_operator, exterior_clifford_matrix,
                             is_elliptic, laplacian_operator,
                             principal_symbol, thom_class_complex,
                             winding_number)


def test_laplacian_symbol():
    sym = principal_symbol(laplacian_operator(3))
    xi = (0.4, -1.1, 2.0)
    assert np.allclose(sym.evaluate(xi), sum(x * x for x in xi) * np.eye(1))


def test_dalembertian_symbol_sign():
    sym = principal_symbol(dalembertian_operator(2))
    tau, s1, s2 = 0.9, 0.3, -0.5
    value = sym.evaluate((tau, s1, s2))[0, 0]
    assert np.isclose(value, -(tau ** 2 - s1 ** 2 - s2 ** 2))


def test_dirac_symbol_is_clifford_multiplication():
    sym = principal_symbol(dirac_operator(2))
    gammas = spinors.gamma_matrices(2)
    xi = (0.8, -0.6)
    expected = 1j * (xi[0] * gammas[0] + xi[1] * gammas[1])
    assert np.allclose(sym.evaluate(xi), expected)
    squared = sym.evaluate(xi) @ sym.evaluate(xi)
    assert np.allclose(squared, np.eye(2))   # |xi| = 1


def test_principal_symbol_drops_lower_order():
    op = OperatorSpec(1, 2, (((2,), np.array([[1.0]])),
                             ((1,), np.array([[5.0]])),
                             ((0,), np.array([[7.0]]))))
    sym = principal_symbol(op)
    assert list(sym.terms) == [(2,)]


def test_operator_spec_validation():
    with pytest.raises(ValueError):
        OperatorSpec(2, 1, ())
    with pytest.raises(ValueError):
        OperatorSpec(2, 1, (((1,), np.eye(2)),))
    with pytest.raises(ValueError):
        OperatorSpec(1, 1, (((2,), np.eye(2)),))


def test_symbol_homogeneity():
    rng = np.random.default_rng(0)
    sym = principal_symbol(dalembertian_operator(2))
    for _ in range(10):
        xi = rng.normal(size=3)
        t = float(rng.normal())
        assert np.allclose(sym.evaluate(t * xi), t ** 2 * sym.evaluate(xi))
    dir_sym = principal_symbol(dirac_operator(2))
    xi = rng.normal(size=2)
    assert np.allclose(dir_sym.evaluate(2.5 * xi), 2.5 * dir_sym.evaluate(xi))


def test_ellipticity_three_canonical_cases():
    assert is_elliptic(principal_symbol(laplacian_operator(2))).elliptic
    report = is_elliptic(principal_symbol(dalembertian_operator(1)))
    assert not report.elliptic
    assert report.witness_exact is not None
    tau, x = report.witness_exact
    assert tau * tau == x * x   # on the light cone
    assert is_elliptic(principal_symbol(dirac_operator(2))).elliptic


def test_ellipticity_witness_higher_dimension():
    report = is_elliptic(principal_symbol(dalembertian_operator(3)))
    assert not report.elliptic
    tau, *space = report.witness_exact
    assert tau * tau == sum(x * x for x in space)


# -- difference-bundle classes ---------------------------------------------------

def test_abs_class_of_spinor_module():
    sc = abs_class(spinors.spinor_module(2))
    assert (sc.rank_plus, sc.rank_minus) == (1, 1)
    m = sc.clutching((1.0, 0.0))
    assert m.shape == (1, 1) and abs(m[0, 0]) == 1.0


def test_abs_class_empty_module():
    zero = spinors.CliffordModule(
        2, tuple(np.zeros((0, 0), dtype=complex) for _ in range(2)),
        np.zeros((0, 0), dtype=complex))
    sc = abs_class(zero)
    assert sc.rank_plus == 0
    assert winding_number(sc) == 0


def test_abs_class_direct_sum_block_structure():
    s2 = spinors.spinor_module(2)
    sc = abs_class(spinors.direct_sum(s2, s2))
    m = sc.clutching((0.6, 0.8))
    assert m.shape == (2, 2)
    svals = np.linalg.svd(m, compute_uv=False)
    assert np.allclose(svals, 1.0)


def test_clutching_norm_matches_vector_norm():
    sc = abs_class(spinors.spinor_module(4))
    rng = np.random.default_rng(1)
    for _ in range(5):
        v = rng.normal(size=4)
        svals = np.linalg.svd(sc.clutching(v), compute_uv=False)
        assert np.allclose(svals, np.linalg.norm(v))


def test_winding_numbers():
    s2 = spinors.spinor_module(2)
    w = winding_number(abs_class(s2))
    assert w in (1, -1)
    assert winding_number(abs_class(spinors.flip_grading(s2))) == -w
    assert winding_number(abs_class(spinors.direct_sum(s2, s2))) == 2 * w
    constant = SymbolClass(2, 1, 1, lambda v: np.eye(1, dtype=complex))
    assert winding_number(constant) == 0


def test_winding_requires_circle():
    with pytest.raises(ValueError):
        winding_number(abs_class(spinors.spinor_module(4)))


def test_winding_additivity_random_mixtures():
    s2 = spinors.spinor_module(2)
    f2 = spinors.flip_grading(s2)
    w = winding_number(abs_class(s2))
    for mp, mm in itertools.product(range(3), repeat=2):
        if mp + mm == 0:
            continue
        pieces = [s2] * mp + [f2] * mm
        module = pieces[0]
        for piece in pieces[1:]:
            module = spinors.direct_sum(module, piece)
        assert winding_number(abs_class(module)) == (mp - mm) * w


def test_symbol_class_rejects_singular_clutching():
    with pytest.raises(ValueError):
        SymbolClass(2, 1, 1, lambda v: np.array([[v[0]]], dtype=complex))


# -- periodicity --------------------------------------------------------------

@pytest.mark.parametrize("k", range(0, 7))
def test_abs_group_parity(k):
    group = abs_group(k)
    assert group.group == ("Z" if k % 2 == 0 else "0")
    if group.group == "Z":
        assert group.generator is not None
    else:
        assert group.generator is None


def test_abs_group_generator_k4():
    group = abs_group(4)
    assert group.generator.dim == spinors.spinor_module(4).dim
    dec = spinors.decompose_module(group.generator, graded=True)
    assert sorted(dec.multiplicities.values()) == [0, 1]


def test_extension_criterion_matches_bookkeeping():
    """Winding vanishes exactly for classes restricted from one dimension up
    (graded modules of dimension <= 8)."""
    s2 = spinors.spinor_module(2)
    f2 = spinors.flip_grading(s2)
    for mp, mm in itertools.product(range(3), repeat=2):
        if not 0 < (mp + mm) * 2 <= 8:
            continue
        pieces = [s2] * mp + [f2] * mm
        module = pieces[0]
        for piece in pieces[1:]:
            module = spinors.direct_sum(module, piece)
        w = winding_number(abs_class(module))
        # restrictions from dimension 3 are exactly the balanced classes
        assert (w == 0) == (mp == mm)
    restricted = spinors.restrict_module(spinors.spinor_module(3))
    assert winding_number(abs_class(restricted)) == 0


# -- the exterior-algebra model ---------------------------------------------------

def test_thom_class_rank_one():
    sc = thom_class_complex(1)
    v = (0.3, 0.4)
    m = sc.clutching(v)
    assert m.shape == (1, 1)
    assert np.isclose(m[0, 0], complex(0.3, 0.4))   # multiplication by v
    assert winding_number(sc) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exterior_clifford_squares_to_minus_norm(n):
    rng = np.random.default_rng(n)
    for _ in range(4):
        v = rng.normal(size=2 * n)
        cl = exterior_clifford_matrix(v, n)
        assert np.allclose(cl @ cl, -float(v @ v) * np.eye(1 << n))


def test_thom_matches_spinor_class_up_to_sign():
    w_thom = winding_number(thom_class_complex(1))
    w_abs = winding_number(abs_class(spinors.spinor_module(2)))
    assert abs(w_thom) == abs(w_abs) == 1
