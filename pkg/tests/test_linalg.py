"""Matrix core: characteristic polynomials, minors, Newton conversions."""
import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import miep
from miep.errors import DimensionMismatchError, InvalidInputError, SingularMatrixError

from conftest import cgauss, rel_err

bounded_complex = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)
spectra = st.lists(bounded_complex, min_size=1, max_size=8)


def brute_sigma(eigs):
    """Elementary symmetric functions by subset enumeration (oracle)."""
    n = len(eigs)
    out = []
    for k in range(1, n + 1):
        out.append(sum(np.prod([eigs[i] for i in s]) for s in itertools.combinations(range(n), k)))
    return np.array(out, dtype=complex)


def brute_powsums(eigs):
    n = len(eigs)
    return np.array([sum(e**k for e in eigs) for k in range(1, n + 1)], dtype=complex)


def test_charpoly_zero_matrix():
    assert np.allclose(miep.charpoly(np.zeros((2, 2))), [0, 0])


def test_charpoly_identity3():
    assert np.allclose(miep.charpoly(np.eye(3)), [-3, 3, -1])


def test_charpoly_swap_matches_cofactor_oracle():
    # 2x2 cofactor expansion oracle: det(lambda I - M) = lambda^2 - tr lambda + det
    m = np.array([[0, 1], [1, 0]], dtype=complex)
    oracle = np.array([-np.trace(m), np.linalg.det(m)])
    assert np.allclose(oracle, [0, -1])
    assert np.allclose(miep.charpoly(m), oracle, atol=1e-12)


def test_charpoly_routes_agree():
    rng = np.random.default_rng(11)
    for n in range(1, 7):
        for _ in range(5):
            m = cgauss(rng, (n, n))
            b_newton = miep.charpoly(m)
            b_det = miep.charpoly_det(m)
            # third route: explicit sigma with alternating signs
            p = np.array([np.trace(np.linalg.matrix_power(m, i)) for i in range(1, n + 1)])
            b_sigma = np.array([(-1) ** i for i in range(1, n + 1)]) * miep.powsums_to_sigma(p)
            assert rel_err(b_newton, b_det) < 1e-9
            assert rel_err(b_newton, b_sigma) < 1e-9


def test_charpoly_matches_eigensolver_path():
    rng = np.random.default_rng(5)
    for n in range(1, 6):
        for _ in range(5):
            m = cgauss(rng, (n, n))
            b_eig = np.poly(np.linalg.eigvals(m))[1:]
            assert rel_err(miep.charpoly(m), b_eig) < 1e-8


def test_principal_minor_examples():
    m = np.array([[1, 1], [1, 2]], dtype=complex)
    assert miep.principal_minor(m, [0]) == pytest.approx(1)
    assert miep.principal_minor(m, [0, 1]) == pytest.approx(1)  # 1*2 - 1*1
    assert miep.principal_minor(m, []) == 1


def test_principal_minor_full_set_is_det():
    rng = np.random.default_rng(3)
    m = cgauss(rng, (4, 4))
    assert miep.principal_minor(m, range(4)) == miep.det(m)


def test_principal_minor_rejects_bad_subsets():
    m = np.eye(2)
    with pytest.raises(InvalidInputError):
        miep.principal_minor(m, [2])
    with pytest.raises(InvalidInputError):
        miep.principal_minor(m, [0, 0])


def test_newton_conversion_examples():
    assert np.allclose(miep.sigma_to_powsums([3, 3, 1]), [3, 3, 3])
    assert np.allclose(miep.sigma_to_powsums([5, 6]), [5, 13])  # eigenvalues 2, 3
    assert np.allclose(miep.powsums_to_sigma([5, 13]), [5, 6])


@given(spectra)
def test_newton_roundtrip(vals):
    v = np.array(vals, dtype=complex)
    back = miep.powsums_to_sigma(miep.sigma_to_powsums(v))
    assert np.linalg.norm(back - v) <= 1e-10 * (1.0 + np.linalg.norm(v))


@given(spectra)
def test_conversions_match_bruteforce(eigs):
    sigma = brute_sigma(eigs)
    powsums = brute_powsums(eigs)
    scale = 1.0 + np.linalg.norm(powsums)
    assert np.linalg.norm(miep.sigma_to_powsums(sigma) - powsums) <= 1e-9 * scale
    assert np.linalg.norm(miep.powsums_to_sigma(powsums) - sigma) <= 1e-9 * (
        1.0 + np.linalg.norm(sigma)
    )


def test_powsums_to_charpoly_signs():
    # b_i = (-1)^i sigma_i on a known spectrum {1, 2}
    p = miep.sigma_to_powsums([3, 2])
    assert np.allclose(miep.powsums_to_charpoly(p), [-3, 2])


def test_symfuncs_pairing():
    sf = miep.SymFuncs.from_sigma([5, 6])
    assert np.allclose(sf.powsums, [5, 13])
    sf2 = miep.SymFuncs.from_powsums([5, 13])
    assert np.allclose(sf2.sigma, [5, 6])
    with pytest.raises(InvalidInputError):
        miep.SymFuncs(sigma=np.array([5.0, 6.0]), powsums=np.array([5.0, 99.0]))


def test_det_trace_basics():
    assert miep.det(np.eye(4)) == pytest.approx(1)
    assert miep.trace(np.diag([1.0, 2.0, 3.0])) == pytest.approx(6)


@given(st.integers(0, 10_000), st.integers(2, 5))
def test_det_multiplicative(seed, n):
    rng = np.random.default_rng(seed)
    a, b = cgauss(rng, (n, n)), cgauss(rng, (n, n))
    lhs = miep.det(miep.matmul(a, b))
    rhs = miep.det(a) * miep.det(b)
    assert abs(lhs - rhs) <= 1e-9 * (1.0 + abs(rhs))


def test_matmul_shape_check():
    with pytest.raises(DimensionMismatchError):
        miep.matmul(np.eye(2), np.eye(3))


def test_numerical_rank():
    assert miep.numerical_rank(np.array([[1.0, 0.0], [0.0, 0.0]]), 1e-9) == 1
    assert miep.numerical_rank(np.zeros((3, 3))) == 0
    assert miep.numerical_rank(np.eye(5)) == 5


def test_inverse_and_solve_reject_singular():
    singular = np.array([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(SingularMatrixError):
        miep.inverse(singular)
    with pytest.raises(SingularMatrixError):
        miep.solve_linear(singular, [1.0, 0.0])
    rng = np.random.default_rng(9)
    a = cgauss(rng, (4, 4))
    x = miep.solve_linear(a, np.ones(4))
    assert np.allclose(a @ x, np.ones(4))
    assert np.allclose(a @ miep.inverse(a), np.eye(4), atol=1e-10)


def test_rejects_nonfinite_and_nonsquare():
    with pytest.raises(InvalidInputError):
        miep.charpoly(np.array([[np.nan, 0], [0, 1]]))
    with pytest.raises(InvalidInputError):
        miep.det(np.ones((2, 3)))
