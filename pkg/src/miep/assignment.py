"""Assignment and power-sum maps of a fixed coefficient matrix over a family.

For a coefficient matrix M and family point Z(x):

* ``assignment_map`` returns (b1, ..., bn) with
  det(lambda I - M Z(x)) = lambda^n + b1 lambda^{n-1} + ... + bn;
* ``powersum_map`` returns (tr(MZ), tr((MZ)^2), ..., tr((MZ)^n));
* the two are related through Newton's identities, and their Jacobians with
  respect to x are exact (no finite differencing).

The compactified form evaluates det [[Z1, Z2], [M, lambda I]] on row spaces
[Z1 Z2], which extends the assignment map to boundary points where Z1 is
singular. Its value is a projective coefficient vector (b0, ..., bn); the
zero polynomial is reported as a tagged degenerate outcome, not an error.

Plucker coordinates enumerate the size-n column subsets of [Z1 Z2] in
lexicographic order. The matching determinant cofactors carry the
Laplace-expansion sign for the top n rows, so that
sum_i coords[i] * cofactor[i](lambda) reproduces the compactified map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError
from .family import AffineFamily
from .linalg import (
    RANK_TOL,
    as_square_matrix,
    as_vector,
    numerical_rank,
    poly_from_samples,
    powsums_to_charpoly,
    powsums_to_charpoly_jacobian,
)

DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class AssignmentContext:
    """A coefficient matrix paired with the family it multiplies."""

    M: np.ndarray
    family: AffineFamily

    def __post_init__(self):
        m = as_square_matrix(self.M)
        if m.shape[0] != self.family.n:
            raise DimensionMismatchError(
                f"matrix order {m.shape[0]} does not match family order {self.family.n}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "M", m)

    @property
    def n(self) -> int:
        return self.family.n


def powersum_map(ctx: AssignmentContext, x) -> np.ndarray:
    """(p1, ..., pn) with p_i = tr((M Z(x))^i)."""
    z = ctx.family.evaluate(x).Z
    a = ctx.M @ z
    n = ctx.n
    p = np.zeros(n, dtype=complex)
    power = np.eye(n, dtype=complex)
    for i in range(n):
        power = power @ a
        p[i] = np.trace(power)
    return p


def assignment_map(ctx: AssignmentContext, x) -> np.ndarray:
    """Coefficients (b1, ..., bn) of det(lambda I - M Z(x))."""
    return powsums_to_charpoly(powersum_map(ctx, x))


def powersum_jacobian(ctx: AssignmentContext, x) -> np.ndarray:
    """Exact n x d Jacobian of ``powersum_map`` at x.

    Column j is (i * tr((MZ)^{i-1} M B_j))_{i=1..n}, the derivative of the
    power sums along the tangent direction B_j.
    """
    fam = ctx.family
    z = fam.evaluate(x).Z
    a = ctx.M @ z
    n, d = ctx.n, fam.d
    powers = [np.eye(n, dtype=complex)]
    for _ in range(n - 1):
        powers.append(powers[-1] @ a)
    jac = np.zeros((n, d), dtype=complex)
    for j, b in enumerate(fam.basis):
        c = ctx.M @ b
        for i in range(1, n + 1):
            jac[i - 1, j] = i * np.einsum("ij,ji->", powers[i - 1], c)
    return jac


def assignment_jacobian(ctx: AssignmentContext, x) -> np.ndarray:
    """Exact n x d Jacobian of ``assignment_map`` at x.

    Chain rule: the Newton-identity conversion Jacobian (lower triangular,
    diagonal -1/k) composed with the power-sum Jacobian, so both share rank.
    """
    p = powersum_map(ctx, x)
    return powsums_to_charpoly_jacobian(p) @ powersum_jacobian(ctx, x)


def plucker_coords(Z1, Z2, rank_tol: float = RANK_TOL) -> np.ndarray:
    """All C(2n, n) maximal minors of [Z1 Z2], lexicographic column subsets."""
    z1 = as_square_matrix(Z1)
    z2 = as_square_matrix(Z2)
    if z1.shape != z2.shape:
        raise DimensionMismatchError("Z1 and Z2 must have equal order")
    stacked = np.hstack([z1, z2])
    n = z1.shape[0]
    if numerical_rank(stacked, rank_tol) < n:
        raise InvalidInputError("[Z1 Z2] must have full row rank")
    coords = [
        np.linalg.det(stacked[:, cols]) for cols in combinations(range(2 * n), n)
    ]
    return np.array(coords, dtype=complex)


@dataclass(frozen=True)
class PluckerPoint:
    """A point of the Grassmannian given as rowsp[Z1 Z2] with full row rank."""

    Z1: np.ndarray
    Z2: np.ndarray
    coords: np.ndarray = field(init=False)

    def __post_init__(self):
        z1 = as_square_matrix(self.Z1)
        z2 = as_square_matrix(self.Z2)
        coords = plucker_coords(z1, z2)
        z1.setflags(write=False)
        z2.setflags(write=False)
        coords.setflags(write=False)
        object.__setattr__(self, "Z1", z1)
        object.__setattr__(self, "Z2", z2)
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return self.Z1.shape[0]


def interior_point(Z) -> PluckerPoint:
    """The point rowsp[I Z] representing an ordinary family member."""
    z = as_square_matrix(Z)
    return PluckerPoint(Z1=np.eye(z.shape[0], dtype=complex), Z2=z)


def diagonal_boundary_point(n: int, subset) -> PluckerPoint:
    """Boundary point of the diagonal family's closure for an index subset.

    Rows in ``subset`` carry homogeneous coordinates (0, 1); the rest carry
    (1, 0), i.e. the diagonal entries sent to infinity are exactly
    ``subset``.
    """
    idx = set(int(i) for i in subset)
    if idx and (min(idx) < 0 or max(idx) >= n):
        raise InvalidInputError(f"subset {sorted(idx)} out of range for order {n}")
    z1 = np.diag([0.0 if i in idx else 1.0 for i in range(n)]).astype(complex)
    z2 = np.diag([1.0 if i in idx else 0.0 for i in range(n)]).astype(complex)
    return PluckerPoint(Z1=z1, Z2=z2)


@dataclass(frozen=True)
class ProjectivePoly:
    """Projective coefficient vector (b0, ..., bn), highest power first.

    ``degenerate`` marks the zero polynomial, the locus where the
    compactified map is undefined as a projective point.
    """

    coeffs: np.ndarray
    degenerate: bool

    @property
    def n(self) -> int:
        return self.coeffs.size - 1

    def affine(self, tol: float = 1e-9) -> np.ndarray:
        """(b1, ..., bn) normalized to leading coefficient 1."""
        scale = np.max(np.abs(self.coeffs))
        if self.degenerate or abs(self.coeffs[0]) <= tol * scale:
            raise InvalidInputError("leading coefficient vanishes; point is at the boundary")
        return self.coeffs[1:] / self.coeffs[0]


def _lambda_nodes(n: int) -> np.ndarray:
    return np.arange(n + 1, dtype=float) - n / 2.0


def compactified_map(
    M, point: PluckerPoint, degenerate_tol: float = DEGENERATE_TOL
) -> ProjectivePoly:
    """Evaluate det [[Z1, Z2], [M, lambda I]] as a projective polynomial.

    The determinant has degree at most n in lambda; it is recovered by
    evaluation at n+1 integer-spaced nodes and interpolation. A coefficient
    vector below ``degenerate_tol`` relative to the block magnitudes is
    tagged degenerate (the rational map is undefined there).
    """
    m = as_square_matrix(M)
    n = point.n
    if m.shape[0] != n:
        raise DimensionMismatchError("matrix order does not match the Plucker point")
    top = np.hstack([point.Z1, point.Z2])
    eye = np.eye(n, dtype=complex)
    nodes = _lambda_nodes(n)
    vals = np.empty(n + 1, dtype=complex)
    for k, lam in enumerate(nodes):
        bottom = np.hstack([m, lam * eye])
        vals[k] = np.linalg.det(np.vstack([top, bottom]))
    coeffs = poly_from_samples(nodes, vals, n + 1)
    scale = max(1.0, np.linalg.norm(top)) ** n * max(1.0, np.linalg.norm(m) + 1.0) ** n
    degenerate = bool(np.max(np.abs(coeffs)) <= degenerate_tol * scale)
    return ProjectivePoly(coeffs=coeffs, degenerate=degenerate)


def cofactor_polys(M) -> np.ndarray:
    """Cofactor polynomials matching ``plucker_coords`` term by term.

    Row i holds the n+1 coefficients (highest power first) of the cofactor
    of the i-th maximal minor in det [[Z1, Z2], [M, lambda I]], so that
    coords @ cofactor_polys(M) equals the compactified map's coefficients.
    Each cofactor is a signed complementary minor of [M lambda I],
    interpolated in lambda.
    """
    m = as_square_matrix(M)
    n = m.shape[0]
    eye = np.eye(n, dtype=complex)
    nodes = _lambda_nodes(n)
    bottoms = [np.hstack([m, lam * eye]) for lam in nodes]
    subsets = list(combinations(range(2 * n), n))
    base_parity = n * (n + 1) // 2 + n
    out = np.zeros((len(subsets), n + 1), dtype=complex)
    for i, cols in enumerate(subsets):
        comp = tuple(c for c in range(2 * n) if c not in cols)
        sign = (-1) ** (base_parity + sum(cols))
        vals = np.array(
            [sign * np.linalg.det(b[:, comp]) for b in bottoms], dtype=complex
        )
        out[i] = poly_from_samples(nodes, vals, n + 1)
    return out
