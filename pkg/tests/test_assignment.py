"""Assignment/power-sum maps, exact Jacobians, and the compactified form."""
import itertools

import numpy as np
import pytest

import miep
from miep.errors import InvalidInputError

from conftest import cgauss, rel_err

FD_STEP = 1e-6


def random_ctx(rng, n, d):
    fam = miep.AffineFamily(
        base=cgauss(rng, (n, n)), basis=tuple(cgauss(rng, (n, n)) for _ in range(d))
    )
    return miep.AssignmentContext(M=cgauss(rng, (n, n)), family=fam)


def central_difference(fun, x, h=FD_STEP):
    """Finite-difference Jacobian oracle (holomorphic maps, real step)."""
    cols = []
    for j in range(len(x)):
        e = np.zeros(len(x))
        e[j] = h
        cols.append((fun(x + e) - fun(x - e)) / (2 * h))
    return np.stack(cols, axis=1)


def test_assignment_map_examples():
    fam = miep.diagonal_family(2)
    ctx = miep.AssignmentContext(M=np.eye(2, dtype=complex), family=fam)
    assert np.allclose(miep.assignment_map(ctx, [1, 2]), [-3, 2])  # eigenvalues 1, 2
    ctx2 = miep.AssignmentContext(M=np.array([[1, 1], [1, 2]], dtype=complex), family=fam)
    # hand oracle: MZ at Z=I has trace 3, det 1
    assert np.allclose(miep.assignment_map(ctx2, [1, 1]), [-3, 1])
    ctx0 = miep.AssignmentContext(M=np.zeros((2, 2)), family=fam)
    assert np.allclose(miep.assignment_map(ctx0, [5, 7]), [0, 0])


def test_powersum_map_examples():
    fam = miep.diagonal_family(2)
    ctx = miep.AssignmentContext(M=np.eye(2, dtype=complex), family=fam)
    assert np.allclose(miep.powersum_map(ctx, [1, 2]), [3, 5])
    ctx0 = miep.AssignmentContext(M=np.zeros((2, 2)), family=fam)
    assert np.allclose(miep.powersum_map(ctx0, [1, 1]), [0, 0])


def test_newton_consistency_between_maps():
    rng = np.random.default_rng(21)
    for _ in range(10):
        ctx = random_ctx(rng, 3, 4)
        x = cgauss(rng, 4)
        via_powsums = miep.powsums_to_charpoly(miep.powersum_map(ctx, x))
        direct = miep.assignment_map(ctx, x)
        assert rel_err(via_powsums, direct) < 1e-10


def test_scalar_jacobian():
    fam = miep.AffineFamily(base=np.zeros((1, 1)), basis=(np.eye(1, dtype=complex),))
    ctx = miep.AssignmentContext(M=np.array([[2.5]], dtype=complex), family=fam)
    assert np.allclose(miep.powersum_jacobian(ctx, [0.3]), [[2.5]])
    assert np.allclose(miep.assignment_jacobian(ctx, [0.3]), [[-2.5]])  # b1 = -p1


def test_jacobians_match_finite_differences():
    rng = np.random.default_rng(33)
    for n, d in [(1, 1), (2, 2), (3, 3), (3, 5), (5, 8)]:
        ctx = random_ctx(rng, n, d)
        x = cgauss(rng, d)
        jp = miep.powersum_jacobian(ctx, x)
        jp_fd = central_difference(lambda y: miep.powersum_map(ctx, y), x)
        assert rel_err(jp_fd, jp) < 1e-5
        ja = miep.assignment_jacobian(ctx, x)
        ja_fd = central_difference(lambda y: miep.assignment_map(ctx, y), x)
        assert rel_err(ja_fd, ja) < 1e-5


def test_zero_matrix_gives_zero_jacobian():
    fam = miep.diagonal_family(3)
    ctx = miep.AssignmentContext(M=np.zeros((3, 3)), family=fam)
    assert not np.any(miep.powersum_jacobian(ctx, [1, 2, 3]))


def test_jacobian_ranks_agree():
    rng = np.random.default_rng(8)
    fam = miep.diagonal_family(3)
    for _ in range(20):
        ctx = miep.AssignmentContext(M=cgauss(rng, (3, 3)), family=fam)
        x = cgauss(rng, 3)
        r_pow = miep.numerical_rank(miep.powersum_jacobian(ctx, x))
        r_asn = miep.numerical_rank(miep.assignment_jacobian(ctx, x))
        assert r_pow == r_asn


def test_compactified_at_trivial_points():
    m = cgauss(np.random.default_rng(2), (3, 3))
    pt = miep.PluckerPoint(Z1=np.eye(3, dtype=complex), Z2=np.zeros((3, 3)))
    val = miep.compactified_map(m, pt)
    assert not val.degenerate
    normalized = val.coeffs / val.coeffs[0]
    assert np.allclose(normalized, [1, 0, 0, 0], atol=1e-12)  # lambda^3


def test_block_identity():
    rng = np.random.default_rng(14)
    for n in range(1, 5):
        for _ in range(5):
            m, z = cgauss(rng, (n, n)), cgauss(rng, (n, n))
            val = miep.compactified_map(m, miep.interior_point(z))
            assert rel_err(val.affine(), miep.charpoly(m @ z)) < 1e-9


def test_compactified_homogeneity():
    # row operations scale every coefficient by det(G)
    rng = np.random.default_rng(7)
    n = 3
    m = cgauss(rng, (n, n))
    z1, z2 = cgauss(rng, (n, n)), cgauss(rng, (n, n))
    g = cgauss(rng, (n, n))
    a = miep.compactified_map(m, miep.PluckerPoint(Z1=z1, Z2=z2)).coeffs
    b = miep.compactified_map(m, miep.PluckerPoint(Z1=g @ z1, Z2=g @ z2)).coeffs
    assert rel_err(b, np.linalg.det(g) * a) < 1e-9


def test_plucker_coords_examples():
    one = np.array([[1.0]], dtype=complex)
    z = np.array([[2.5 + 1j]], dtype=complex)
    assert np.allclose(miep.plucker_coords(one, z), [1, 2.5 + 1j])
    coords = miep.plucker_coords(np.eye(2, dtype=complex), np.zeros((2, 2)))
    assert np.allclose(coords, [1, 0, 0, 0, 0, 0])


def test_plucker_of_interior_point():
    rng = np.random.default_rng(16)
    z = cgauss(rng, (3, 3))
    coords = miep.plucker_coords(np.eye(3, dtype=complex), z)
    assert coords[0] == pytest.approx(1)
    assert coords[-1] == pytest.approx(complex(np.linalg.det(z)))


def test_plucker_rejects_rank_deficient():
    with pytest.raises(InvalidInputError):
        miep.plucker_coords(np.zeros((2, 2)), np.zeros((2, 2)))


def test_cofactor_expansion_reproduces_compactified_map():
    rng = np.random.default_rng(19)
    for n in (1, 2, 3):
        m = cgauss(rng, (n, n))
        cof = miep.cofactor_polys(m)
        for _ in range(20):
            pt = miep.PluckerPoint(Z1=cgauss(rng, (n, n)), Z2=cgauss(rng, (n, n)))
            direct = miep.compactified_map(m, pt).coeffs
            assert rel_err(pt.coords @ cof, direct) < 1e-9


def test_diagonal_boundary_formula():
    # psi_bar = +/- M_I lambda^{|J|} at the boundary point of an index subset
    rng = np.random.default_rng(23)
    n = 3
    m = cgauss(rng, (n, n))
    for k in range(n + 1):
        for subset in itertools.combinations(range(n), k):
            val = miep.compactified_map(m, miep.diagonal_boundary_point(n, subset))
            minor = miep.principal_minor(m, subset)
            coeffs = val.coeffs
            lead = coeffs[k]  # power |J| = n - k sits at index k
            assert min(abs(lead - minor), abs(lead + minor)) < 1e-10
            rest = np.delete(coeffs, k)
            assert np.all(np.abs(rest) < 1e-10)


def test_degenerate_outcome_is_tagged():
    # vanishing principal minor makes the boundary value the zero polynomial
    m = np.array([[0, 1], [1, 0]], dtype=complex)
    val = miep.compactified_map(m, miep.diagonal_boundary_point(2, [0]))
    assert val.degenerate
    with pytest.raises(InvalidInputError):
        val.affine()
