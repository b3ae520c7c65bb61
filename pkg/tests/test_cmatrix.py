"""Tests for the dense complex linear algebra kernel."""

import numpy as np
import pytest

import helpers
from epkit import cmatrix
from epkit.ep_core import traceless_part
from epkit.errors import (
    DegeneracyError,
    NoSolutionError,
    ParameterError,
    ParseError,
    ShapeError,
)
from epkit.models import dimer_trimer_system, pt_dimer, pt_trimer, single_entry_coupling


def dimer_nilpotent(g):
    return traceless_part(pt_dimer(1.0, g))[1]


def trimer_nilpotent(g):
    return traceless_part(pt_trimer(1.0, g))[1]


# ---------------------------------------------------------------------------
# matmul / adjoint

def test_matmul_identity():
    eye = np.eye(2, dtype=complex)
    assert np.array_equal(cmatrix.matmul(eye, eye), eye)


def test_matmul_dimer_nilpotent_squares_to_zero():
    n = dimer_nilpotent(1.5)
    assert cmatrix.frobenius_norm(cmatrix.matmul(n, n)) <= 1e-14


def test_matmul_shift_matrices():
    up = np.array([[0, 1], [0, 0]], dtype=complex)
    down = np.array([[0, 0], [1, 0]], dtype=complex)
    assert np.array_equal(cmatrix.matmul(up, down), np.array([[1, 0], [0, 0]], dtype=complex))


def test_matmul_shape_mismatch():
    with pytest.raises(ShapeError):
        cmatrix.matmul(np.eye(2), np.eye(3))


def test_matmul_rejects_non_finite():
    bad = np.array([[np.nan, 0], [0, 1]])
    with pytest.raises(ParameterError):
        cmatrix.matmul(bad, np.eye(2))


def test_adjoint_scalar():
    assert np.array_equal(cmatrix.adjoint([[1j]]), np.array([[-1j]]))


def test_adjoint_real_symmetric_fixed_point():
    m = np.array([[1.0, 2.0], [2.0, 5.0]], dtype=complex)
    assert np.array_equal(cmatrix.adjoint(m), m)


def test_adjoint_dimer_swaps_gain_loss():
    h = pt_dimer(1.0, 1.5)
    expected = h.copy()
    expected[0, 0], expected[1, 1] = h[1, 1], h[0, 0]
    assert np.allclose(cmatrix.adjoint(h), expected, atol=0)


# ---------------------------------------------------------------------------
# norms, rank

def test_frobenius_zero():
    assert cmatrix.frobenius_norm(np.zeros((3, 3))) == 0.0


def test_frobenius_dimer_nilpotent():
    assert cmatrix.frobenius_norm(dimer_nilpotent(1.5)) == pytest.approx(3.0, rel=1e-14)


def test_frobenius_unit_entries():
    assert cmatrix.frobenius_norm([[1.0, 1j], [0.0, 0.0]]) == pytest.approx(np.sqrt(2), rel=1e-14)


def test_spectral_identity():
    assert cmatrix.spectral_norm(np.eye(4)) == pytest.approx(1.0, rel=1e-12)


def test_spectral_single_entry_coupling():
    assert cmatrix.spectral_norm(single_entry_coupling(1.0, 3, 2)) == pytest.approx(1.0, rel=1e-12)


def test_spectral_bounded_by_frobenius():
    rng = helpers.philox(101)
    for _ in range(50):
        a = helpers.complex_uniform(rng, (5, 5))
        spec = cmatrix.spectral_norm(a)
        frob = cmatrix.frobenius_norm(a)
        assert frob / np.sqrt(5) - 1e-10 <= spec <= frob + 1e-10


def test_rank_zero_matrix():
    assert cmatrix.rank(np.zeros((3, 4))) == 0


def test_rank_of_top_nilpotent_power_is_one():
    system = dimer_trimer_system(1.0, 1.5, 1.3, 1.0)
    _, n = traceless_part(system.h)
    assert cmatrix.rank(np.linalg.matrix_power(n, 4)) == 1


def test_rank_identity():
    assert cmatrix.rank(np.eye(4)) == 4


def test_rank_rejects_bad_rtol():
    with pytest.raises(ParameterError):
        cmatrix.rank(np.eye(2), rtol=0.0)


# ---------------------------------------------------------------------------
# kernel vectors and minimum-norm solves

def test_kernel_vector_shift_block():
    v = cmatrix.kernel_vector(np.array([[0, 1], [0, 0]], dtype=complex))
    assert np.allclose(v, [1.0, 0.0], atol=1e-15)


def test_kernel_vector_dimer():
    v = cmatrix.kernel_vector(dimer_nilpotent(1.5))
    assert np.allclose(v, np.array([1.0, -1j]) / np.sqrt(2), atol=1e-14)


def test_kernel_vector_trimer():
    v = cmatrix.kernel_vector(trimer_nilpotent(1.3))
    # proportional to (1, -i sqrt(2), -1), rephased so the largest entry is real
    assert np.allclose(v, np.array([1j, np.sqrt(2), -1j]) / 2.0, atol=1e-14)
    reference = np.array([1.0, -1j * np.sqrt(2), -1.0]) / 2.0
    assert abs(abs(np.vdot(reference, v)) - 1.0) < 1e-14


def test_kernel_vector_phase_and_norm():
    rng = helpers.philox(77)
    for dim in (2, 4, 6):
        n = helpers.transformed_jordan_block(rng, dim)
        v = cmatrix.kernel_vector(n)
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-13)
        pivot = int(np.argmax(np.abs(v)))
        assert v[pivot].real > 0 and abs(v[pivot].imag) <= 1e-13 * abs(v[pivot])


def test_kernel_vector_degenerate():
    with pytest.raises(DegeneracyError):
        cmatrix.kernel_vector(np.zeros((2, 2)))
    with pytest.raises(DegeneracyError):
        cmatrix.kernel_vector(np.eye(3))


def test_min_norm_solve_shift_block():
    a = np.array([[0, 1], [0, 0]], dtype=complex)
    x = cmatrix.min_norm_solve(a, np.array([1.0, 0.0]))
    assert np.allclose(x, [0.0, 1.0], atol=1e-14)


def test_min_norm_solve_identity():
    b = np.array([1.0 + 2j, -0.5])
    assert np.allclose(cmatrix.min_norm_solve(np.eye(2), b), b, atol=1e-15)


def test_min_norm_solve_dimer_chain_step():
    n = dimer_nilpotent(1.5)
    b = cmatrix.kernel_vector(n)
    x = cmatrix.min_norm_solve(n, b)
    assert np.linalg.norm(n @ x - b) <= 1e-12


def test_min_norm_solve_inconsistent():
    a = np.array([[0, 1], [0, 0]], dtype=complex)
    with pytest.raises(NoSolutionError):
        cmatrix.min_norm_solve(a, np.array([0.0, 1.0]))


def test_min_norm_solution_orthogonal_to_kernel():
    rng = helpers.philox(55)
    for _ in range(25):
        a = helpers.random_fixed_rank(rng, 5, 5, 3)
        _, _, vh = np.linalg.svd(a)
        null_basis = vh[3:].conj().T
        x = cmatrix.min_norm_solve(a, a @ helpers.complex_uniform(rng, 5))
        assert np.max(np.abs(null_basis.conj().T @ x)) <= 1e-10


# ---------------------------------------------------------------------------
# eigenvalues

def test_eigenvalues_diagonal():
    vals = cmatrix.eigenvalues(np.diag([1.0 + 2j, 3.0]))
    assert np.allclose(vals, [1.0 + 2j, 3.0], atol=1e-14)


def test_eigenvalues_dimer_coalesce():
    vals = cmatrix.eigenvalues(pt_dimer(1.0, 1.5))
    assert np.max(np.abs(vals - 1.0)) < 1e-6


def test_eigenvalues_square_root_pair():
    vals = cmatrix.eigenvalues(np.array([[0.0, 1.0], [1e-4, 0.0]]))
    assert np.allclose(vals, [-0.01, 0.01], atol=1e-12)


def test_eigenvalues_requires_square():
    with pytest.raises(ShapeError):
        cmatrix.eigenvalues(np.ones((2, 3)))


def test_eigenvalue_ordering_deterministic():
    rng = helpers.philox(3)
    a = helpers.complex_uniform(rng, (6, 6))
    vals = cmatrix.eigenvalues(a)
    assert np.array_equal(vals, cmatrix.eigenvalues(a))
    keys = [(v.real, v.imag) for v in vals]
    assert keys == sorted(keys)


def test_eigenvalue_sum_matches_trace():
    rng = helpers.philox(11)
    for _ in range(30):
        a = helpers.complex_uniform(rng, (5, 5))
        assert abs(cmatrix.eigenvalues(a).sum() - np.trace(a)) <= 1e-10 * max(abs(np.trace(a)), 1.0)


def test_adjoint_eigenvalues_conjugate():
    rng = helpers.philox(13)
    a = helpers.complex_uniform(rng, (5, 5))
    direct = np.sort_complex(cmatrix.eigenvalues(a))
    conjugated = np.sort_complex(np.conj(cmatrix.eigenvalues(cmatrix.adjoint(a))))
    assert np.allclose(direct, conjugated, atol=1e-10)


# ---------------------------------------------------------------------------
# norm inequalities

def test_norm_inequalities_mixed_ranks():
    rng = helpers.philox(17)
    for _ in range(60):
        r = int(rng.integers(1, 5))
        rows = int(rng.integers(r, 8))
        cols = int(rng.integers(r, 8))
        a = helpers.random_fixed_rank(rng, rows, cols, r)
        spec = cmatrix.spectral_norm(a)
        frob = cmatrix.frobenius_norm(a)
        assert spec <= frob + 1e-10
        assert frob <= np.sqrt(cmatrix.rank(a)) * spec + 1e-10


def test_rank_one_norm_equality():
    rng = helpers.philox(19)
    for _ in range(30):
        a = helpers.random_fixed_rank(rng, 4, 6, 1)
        spec = cmatrix.spectral_norm(a)
        frob = cmatrix.frobenius_norm(a)
        assert abs(spec - frob) <= 1e-10 * frob


def test_spectral_norm_submultiplicative():
    rng = helpers.philox(23)
    for _ in range(30):
        a = helpers.complex_uniform(rng, (4, 5))
        b = helpers.complex_uniform(rng, (5, 3))
        assert cmatrix.spectral_norm(a @ b) <= cmatrix.spectral_norm(a) * cmatrix.spectral_norm(b) + 1e-10


# ---------------------------------------------------------------------------
# JSON wire format

def test_matrix_json_roundtrip():
    rng = helpers.philox(29)
    a = helpers.complex_uniform(rng, (3, 2))
    assert np.array_equal(cmatrix.matrix_from_json(cmatrix.matrix_to_json(a)), a)


def test_matrix_json_rejects_length_mismatch():
    with pytest.raises(ParseError):
        cmatrix.matrix_from_json({"rows": 2, "cols": 2, "entries": [[0.0, 0.0]] * 3})


@pytest.mark.parametrize(
    "entry",
    [[float("nan"), 0.0], [0.0, float("inf")], ["0", 0.0], [0.0], [0.0, 0.0, 0.0]],
)
def test_matrix_json_rejects_bad_entries(entry):
    with pytest.raises(ParseError):
        cmatrix.matrix_from_json({"rows": 1, "cols": 1, "entries": [entry]})


def test_matrix_json_rejects_missing_keys():
    with pytest.raises(ParseError):
        cmatrix.matrix_from_json({"rows": 1, "entries": [[0.0, 0.0]]})
    with pytest.raises(ParseError):
        cmatrix.matrix_from_json({"rows": 0, "cols": 1, "entries": []})


def test_vector_json_roundtrip():
    v = np.array([1.0 + 2j, -3j])
    assert np.array_equal(cmatrix.vector_from_json(cmatrix.vector_to_json(v)), v)
