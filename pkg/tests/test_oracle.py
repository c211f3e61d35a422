import math

import numpy as np
import pytest

from effosc.errors import OracleConvergenceError
from effosc.model import OscillatorSpec
from effosc.oracle import exact_levels, hamiltonian_matrix, lowest_eigenvalues
from effosc.spectrum import level_solution


def test_lowest_eigenvalues_trivial_matrices():
    assert list(lowest_eigenvalues(np.eye(3), 2)) == [1.0, 1.0]
    assert list(lowest_eigenvalues(np.diag([3.0, 1.0, 2.0]), 3)) == [1.0, 2.0, 3.0]
    got = lowest_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]]), 2)
    assert got[0] == pytest.approx(-1.0, abs=1e-14)
    assert got[1] == pytest.approx(1.0, abs=1e-14)


def test_hamiltonian_matrix_ground_diagonal():
    # <0|H|0> in the unit-frequency basis: 1/4 + g/4 + 3 lam/4
    m = hamiltonian_matrix(OscillatorSpec(4, 1.0, 0.1), 1.0, 6)
    assert m[0, 0] == pytest.approx(0.575, rel=1e-13)
    m2 = hamiltonian_matrix(OscillatorSpec(4, -1.0, 0.1), 1.0, 6)
    assert m2[0, 0] == pytest.approx(0.25 - 0.25 + 0.075, rel=1e-12)


def test_hamiltonian_matrix_structure():
    for spec in (OscillatorSpec(4, 1.0, 0.5), OscillatorSpec(6, -3.0, 0.5), OscillatorSpec(8, 1.0, 0.2)):
        m = hamiltonian_matrix(spec, 1.4, 18)
        assert np.array_equal(m, m.T)
        for i in range(18):
            for j in range(18):
                if abs(i - j) > spec.k:
                    assert m[i, j] == 0.0
                if (i - j) % 2 == 1:
                    assert m[i, j] == 0.0  # even interaction preserves parity


def test_parity_blocks_match_dense_diagonalization():
    # the production path splits even/odd sectors; cross-check against a
    # dense solve of the same truncated matrix
    for spec, basis_w in [
        (OscillatorSpec(4, 1.0, 1.0), 1.5),
        (OscillatorSpec(6, -3.0, 0.5), 2.0),
        (OscillatorSpec(8, 1.0, 0.3), 1.8),
    ]:
        # loose rel_tol: the comparison is block-vs-dense at the same
        # truncation, so convergence of the truncation itself is immaterial
        res = exact_levels(spec, 5, basis_w=basis_w, rel_tol=1e-6)
        dense = np.linalg.eigvalsh(hamiltonian_matrix(spec, basis_w, res.dim))
        for got, want in zip(res.eigenvalues, dense):
            assert got == pytest.approx(want, abs=1e-9 * max(1.0, abs(want))), spec


def test_ground_state_variational_bound():
    # the optimized Gaussian expectation is a rigorous upper bound on E_0
    for spec in (
        OscillatorSpec(4, 1.0, 0.1),
        OscillatorSpec(4, 1.0, 100.0),
        OscillatorSpec(4, -1.0, 0.05),
        OscillatorSpec(6, 1.0, 0.5),
        OscillatorSpec(6, -3.0, 0.5),
        OscillatorSpec(8, 1.0, 1.0),
    ):
        e_lo = level_solution(spec, 0).E0
        e_exact = exact_levels(spec, 0).eigenvalues[0]
        assert e_lo >= e_exact - 1e-10, spec


def test_basis_frequency_independence():
    spec = OscillatorSpec(4, 1.0, 1.0)
    a = exact_levels(spec, 6)  # default basis_w from the level-0 solution
    b = exact_levels(spec, 6, basis_w=1.0)
    c = exact_levels(spec, 6, basis_w=3.0)
    for i in range(7):
        scale = max(1.0, abs(a.eigenvalues[i]))
        assert abs(a.eigenvalues[i] - b.eigenvalues[i]) < 1e-8 * scale
        assert abs(a.eigenvalues[i] - c.eigenvalues[i]) < 1e-8 * scale


def test_truncation_is_monotone_from_above():
    # Rayleigh-Ritz: enlarging the basis can only lower each level
    spec = OscillatorSpec(4, 1.0, 10.0)
    small = np.linalg.eigvalsh(hamiltonian_matrix(spec, 2.0, 24))[:5]
    large = np.linalg.eigvalsh(hamiltonian_matrix(spec, 2.0, 48))[:5]
    assert np.all(small >= large - 1e-12)


def test_frozen_exact_levels():
    ev = exact_levels(OscillatorSpec(4, 1.0, 0.1), 40).eigenvalues
    want = {0: 0.55914633, 1: 1.76950264, 2: 3.13862431, 4: 6.22030090, 10: 17.35190764, 40: 95.56016999}
    for n, e in want.items():
        assert ev[n] == pytest.approx(e, abs=5e-8), n
    ev1 = exact_levels(OscillatorSpec(4, 1.0, 1.0), 10).eigenvalues
    assert ev1[0] == pytest.approx(0.80377065, abs=5e-8)
    assert ev1[10] == pytest.approx(32.93326304, abs=5e-8)


def test_convergence_metadata():
    res = exact_levels(OscillatorSpec(4, 1.0, 0.1), 3, rel_tol=1e-10)
    assert res.dim >= 16
    assert len(res.eigenvalues) == 4
    assert len(res.convergence_estimate) == 4
    for e, est in zip(res.eigenvalues, res.convergence_estimate):
        assert est < 1e-10 * max(1.0, abs(e))


def test_input_validation():
    spec = OscillatorSpec(4, 1.0, 0.1)
    with pytest.raises(ValueError):
        exact_levels(spec, -1)
    with pytest.raises(ValueError):
        exact_levels(spec, 0, rel_tol=1e-13)


def test_dimension_cap_raises_with_partial_spectrum():
    with pytest.raises(OracleConvergenceError) as err:
        exact_levels(OscillatorSpec(4, 1.0, 100.0), 40, dim_cap=32)
    part = err.value.spectrum
    if part is not None:
        assert len(part.eigenvalues) == 41
