import io

import numpy as np
import pytest

from spindex import symbols
from spindex import torus_index as ti
from spindex.torus_index import (AmbiguousKernelError, FluxBundleSpec,
                                 NonConvergenceError, build_torus_dirac,
                                 constant_family, disjoint_union_index,
                                 gauge_transform, index, kernel_dimension,
                                 shift_family, spectral_flow,
                                 symbol_of_lattice_operator)


def test_spec_validation():
    with pytest.raises(ValueError):
        FluxBundleSpec(3, 0)
    with pytest.raises(ValueError):
        FluxBundleSpec(8, 17)          # |d| > N^2/4
    with pytest.raises(ValueError):
        FluxBundleSpec(8, 0, wilson_mass=2.5)
    with pytest.raises(ValueError):
        FluxBundleSpec(8, 0, wilson_r=0.0)


def test_matrix_size_and_plaquettes():
    op = build_torus_dirac(FluxBundleSpec(8, 3))
    assert op.matrix.shape == (128, 128)
    phases = op.plaquette_phases()
    assert np.allclose(phases, phases[0, 0])
    assert np.isclose(phases[0, 0] ** 64, 1.0)      # total flux integral
    assert np.isclose(np.abs(phases[0, 0]), 1.0)
    assert np.isclose(np.angle(phases[0, 0]) * 64, 2 * np.pi * 3, atol=1e-12)


@pytest.mark.parametrize("n,d", [(8, 0), (8, 2), (10, -1)])
def test_graded_odd_hermitian(n, d):
    op = build_torus_dirac(FluxBundleSpec(n, d))
    m = op.matrix.toarray()
    assert np.allclose(m, m.conj().T)
    g = op.grading
    assert np.allclose(g[:, None] * m + m * g[None, :], 0.0)
    v = n * n
    dplus_naive = m[v:, :v]
    dminus_naive = m[:v, v:]
    assert np.allclose(dminus_naive, dplus_naive.conj().T)


def test_symmetric_spectrum_and_zero_index_flat():
    op = build_torus_dirac(FluxBundleSpec(8, 0))
    evals = np.linalg.eigvalsh(op.matrix.toarray())
    assert np.allclose(np.sort(evals), np.sort(-evals))
    result = index(op)
    assert result.index == 0
    assert result.dim_ker_plus == result.dim_ker_minus == 1


def test_kernel_dimension_basics():
    assert kernel_dimension(np.diag([0.0, 1.0, 2.0])).dimension == 1
    rng = np.random.default_rng(0)
    a = rng.normal(size=(25, 25)) + 5 * np.eye(25)
    assert kernel_dimension(a).dimension == 0


def test_kernel_dimension_rectangular_counts_shape_deficit():
    a = np.array([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
    assert kernel_dimension(a).dimension == 1
    assert kernel_dimension(a.T).dimension == 0


def test_kernel_dimension_ambiguity():
    with pytest.raises(AmbiguousKernelError):
        kernel_dimension(np.diag([1.0, 4e-8, 1e-9]))


def test_dplus_block_kernel_flux_one():
    op = build_torus_dirac(FluxBundleSpec(12, 1))
    dplus, dminus = op.chiral_blocks()
    assert dplus.shape == (144, 145)
    assert np.allclose(dminus, dplus.conj().T)
    assert kernel_dimension(dplus).dimension == 1
    assert kernel_dimension(dminus).dimension == 0


@pytest.mark.parametrize("n,d", [(12, 0), (12, 1), (12, -2), (10, 2)])
def test_index_equals_flux(n, d):
    result = index(build_torus_dirac(FluxBundleSpec(n, d)))
    assert result.index == d
    assert result.index == result.dim_ker_plus - result.dim_ker_minus
    assert result.spectral_gap > 0.1
    data = result.to_json()
    assert data["N"] == n and data["d"] == d and data["index"] == d


def test_index_kernel_sides():
    plus = index(build_torus_dirac(FluxBundleSpec(10, 2)))
    assert (plus.dim_ker_plus, plus.dim_ker_minus) == (2, 0)
    minus = index(build_torus_dirac(FluxBundleSpec(10, -2)))
    assert (minus.dim_ker_plus, minus.dim_ker_minus) == (0, 2)


def test_index_additive_over_disjoint_union():
    a = build_torus_dirac(FluxBundleSpec(8, 2))
    b = build_torus_dirac(FluxBundleSpec(8, -1))
    assert disjoint_union_index(a, b) == 1
    c = build_torus_dirac(FluxBundleSpec(8, 3))
    assert disjoint_union_index(a, c) == 5


def test_gauge_invariance_single_trial():
    rng = np.random.default_rng(3)
    op = build_torus_dirac(FluxBundleSpec(10, 2))
    phases = rng.uniform(0, 2 * np.pi, size=(10, 10))
    moved = gauge_transform(op, phases)
    s0 = np.linalg.svd(op.matrix.toarray(), compute_uv=False)
    s1 = np.linalg.svd(moved.matrix.toarray(), compute_uv=False)
    assert np.max(np.abs(s0 - s1)) < 1e-10
    assert np.allclose(moved.plaquette_phases(), op.plaquette_phases())
    assert index(moved).index == 2


def test_lattice_stability_small_sweep():
    for n in (12, 14):
        assert index(build_torus_dirac(FluxBundleSpec(n, 2))).index == 2


def test_index_robust_to_wilson_parameters():
    for mass, r in [(0.8, 1.0), (1.2, 0.9), (0.5, 1.5)]:
        spec = FluxBundleSpec(10, 2, wilson_r=r, wilson_mass=mass)
        assert index(build_torus_dirac(spec)).index == 2


def test_index_result_json_schema():
    data = index(build_torus_dirac(FluxBundleSpec(8, 1))).to_json()
    assert set(data) == {"N", "d", "dim_ker_plus", "dim_ker_minus", "index", "gap"}


def test_symbol_of_lattice_operator():
    sym = symbol_of_lattice_operator(FluxBundleSpec(8, 1))
    assert symbols.is_elliptic(sym).elliptic
    xi = (0.6, -0.8)
    m = sym.evaluate(xi)
    assert np.allclose(m @ m, np.eye(2))        # |xi| = 1
    from spindex import spinors
    gammas = spinors.gamma_matrices(2)
    assert np.allclose(m, 1j * (xi[0] * gammas[0] + xi[1] * gammas[1]))


def test_export_triplets():
    op = build_torus_dirac(FluxBundleSpec(8, 0))
    buf = io.StringIO()
    op.export_triplets(buf)
    lines = buf.getvalue().strip().splitlines()
    assert len(lines) == op.matrix.nnz
    row, col, re, im = lines[0].split()
    int(row), int(col), float(re), float(im)


# -- spectral flow -----------------------------------------------------------------

def test_shift_family_flows():
    eps = 1e-3
    assert spectral_flow(shift_family(eps, 1 + eps)) == 1
    assert spectral_flow(shift_family(eps, 2 + eps)) == 2
    assert spectral_flow(shift_family(1 + eps, eps)) == -1


def test_constant_family_flows_zero():
    rng = np.random.default_rng(5)
    h = rng.normal(size=(10, 10))
    fam = constant_family(h + h.T + 11 * np.eye(10))
    assert spectral_flow(fam) == 0


def test_endpoint_zero_eigenvalue_rejected():
    with pytest.raises(NonConvergenceError):
        spectral_flow(shift_family(0.0, 1.0))


def test_family_requires_hermitian():
    fam = ti.FamilySpec(0.1, 1.1, lambda t: np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        spectral_flow(fam)


def test_flow_reversal_negates():
    eps = 1e-3
    forward = spectral_flow(shift_family(eps, 3 + eps))
    backward = spectral_flow(shift_family(3 + eps, eps))
    assert forward == -backward == 3
