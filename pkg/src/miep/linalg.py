"""Dense complex linear algebra and symmetric-function conversions.

Conventions used throughout the package:

* matrices are square numpy arrays of complex dtype with finite entries;
* a monic polynomial lambda^n + b1 lambda^{n-1} + ... + bn is identified
  with its coefficient vector ``(b1, ..., bn)``;
* index subsets (principal minors) are zero-based.

``charpoly`` follows the power-sum route (traces of matrix powers converted
through Newton's identities); ``charpoly_det`` is an independent
determinant-evaluation route kept for cross-checking.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError, SingularMatrixError

# Relative singular-value cutoff for rank decisions.
RANK_TOL = 1e-9
# inverse/solve_linear refuse matrices beyond this condition estimate.
COND_CAP = 1e12


def as_square_matrix(a) -> np.ndarray:
    """Validate ``a`` as a finite square complex matrix and return a copy."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidInputError(f"expected a nonempty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("matrix entries must be finite")
    return m


def as_vector(a, length: int | None = None) -> np.ndarray:
    """Validate ``a`` as a finite complex vector, optionally of fixed length."""
    v = np.array(a, dtype=complex).ravel()
    if length is not None and v.size != length:
        raise DimensionMismatchError(f"expected a vector of length {length}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("vector entries must be finite")
    return v


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussian samples (unit variance per complex entry)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def det(m) -> complex:
    """Determinant via LU with partial pivoting."""
    return complex(np.linalg.det(as_square_matrix(m)))


def trace(m) -> complex:
    return complex(np.trace(as_square_matrix(m)))


def matmul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def _check_cond(m: np.ndarray, max_cond: float) -> None:
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] == 0.0 or s[0] / s[-1] > max_cond:
        raise SingularMatrixError(
            f"matrix is singular or ill-conditioned (cond > {max_cond:g})"
        )


def inverse(m, max_cond: float = COND_CAP) -> np.ndarray:
    m = as_square_matrix(m)
    _check_cond(m, max_cond)
    return np.linalg.inv(m)


def solve_linear(a, b, max_cond: float = COND_CAP) -> np.ndarray:
    a = as_square_matrix(a)
    b = as_vector(b, length=a.shape[0])
    _check_cond(a, max_cond)
    return np.linalg.solve(a, b)


def numerical_rank(a, tol: float = RANK_TOL) -> int:
    """Number of singular values above ``tol`` times the largest one."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def principal_minor(m, subset) -> complex:
    """Determinant of the submatrix on the rows and columns in ``subset``.

    Zero-based indices; the empty subset returns 1 (empty product).
    """
    m = as_square_matrix(m)
    idx = sorted(int(i) for i in subset)
    if len(set(idx)) != len(idx):
        raise InvalidInputError("principal-minor subset has repeated indices")
    if idx and (idx[0] < 0 or idx[-1] >= m.shape[0]):
        raise InvalidInputError(f"subset {idx} out of range for order {m.shape[0]}")
    if not idx:
        return 1.0 + 0.0j
    return complex(np.linalg.det(m[np.ix_(idx, idx)]))


def powsums_to_sigma(powsums) -> np.ndarray:
    """Elementary symmetric functions from power sums (Newton recurrence)."""
    p = as_vector(powsums)
    n = p.size
    s = np.zeros(n + 1, dtype=complex)
    s[0] = 1.0
    for k in range(1, n + 1):
        acc = sum((-1) ** i * s[i] * p[k - i - 1] for i in range(k))
        s[k] = (-1) ** (k - 1) * acc / k
    return s[1:]


def sigma_to_powsums(sigma) -> np.ndarray:
    """Power sums from elementary symmetric functions (inverse recurrence)."""
    sig = as_vector(sigma)
    n = sig.size
    s = np.concatenate(([1.0 + 0j], sig))
    p = np.zeros(n, dtype=complex)
    for k in range(1, n + 1):
        acc = sum((-1) ** i * s[i] * p[k - i - 1] for i in range(1, k))
        p[k - 1] = (-1) ** (k - 1) * k * s[k] - acc
    return p


def powsums_to_charpoly(powsums) -> np.ndarray:
    """Monic-polynomial coefficients (b1, ..., bn) from power sums.

    Uses b_k = -(1/k) * sum_{j=0}^{k-1} b_j p_{k-j} with b_0 = 1, which is
    the Newton recurrence with the sign convention b_i = (-1)^i sigma_i.
    """
    p = as_vector(powsums)
    n = p.size
    b = np.zeros(n + 1, dtype=complex)
    b[0] = 1.0
    for k in range(1, n + 1):
        b[k] = -sum(b[j] * p[k - j - 1] for j in range(k)) / k
    return b[1:]


def powsums_to_charpoly_jacobian(powsums) -> np.ndarray:
    """Exact Jacobian d(b1..bn)/d(p1..pn) of ``powsums_to_charpoly``.

    Lower triangular with diagonal -1/k, so it is always invertible.
    """
    p = as_vector(powsums)
    n = p.size
    b = np.concatenate(([1.0 + 0j], powsums_to_charpoly(p)))
    jac = np.zeros((n, n), dtype=complex)
    for k in range(1, n + 1):
        for m in range(1, k + 1):
            acc = b[k - m]
            for j in range(m, k):
                acc += jac[j - 1, m - 1] * p[k - j - 1]
            jac[k - 1, m - 1] = -acc / k
    return jac


def charpoly(m) -> np.ndarray:
    """Coefficients (b1, ..., bn) of det(lambda I - M).

    Power-sum route: p_i = tr(M^i) by repeated multiplication, then Newton
    conversion.
    """
    m = as_square_matrix(m)
    n = m.shape[0]
    p = np.zeros(n, dtype=complex)
    power = np.eye(n, dtype=complex)
    for i in range(n):
        power = power @ m
        p[i] = np.trace(power)
    return powsums_to_charpoly(p)


def poly_from_samples(nodes, values, ncoeffs: int) -> np.ndarray:
    """Coefficients (highest power first) of the degree ncoeffs-1 polynomial
    through the sample points. Exactly determined when len(nodes) == ncoeffs."""
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values, dtype=complex)
    vand = np.vander(nodes, ncoeffs).astype(complex)
    if nodes.size == ncoeffs:
        return np.linalg.solve(vand, values)
    return np.linalg.lstsq(vand, values, rcond=None)[0]


def charpoly_det(m) -> np.ndarray:
    """Coefficients of det(lambda I - M) by determinant evaluation.

    Evaluates the characteristic determinant at n integer-spaced nodes and
    interpolates; independent of the power-sum route.
    """
    m = as_square_matrix(m)
    n = m.shape[0]
    nodes = np.arange(n, dtype=float) - (n - 1) / 2.0
    eye = np.eye(n, dtype=complex)
    vals = np.array(
        [np.linalg.det(x * eye - m) - x**n for x in nodes], dtype=complex
    )
    return poly_from_samples(nodes, vals, n)


@dataclass(frozen=True)
class SymFuncs:
    """Paired elementary symmetric functions and power sums of one spectrum.

    The two vectors must be consistent under Newton's identities; the
    constructor round-trips sigma and rejects pairs further apart than a
    loose relative tolerance.
    """

    sigma: np.ndarray
    powsums: np.ndarray

    def __post_init__(self):
        sig = as_vector(self.sigma)
        p = as_vector(self.powsums)
        if sig.size != p.size or sig.size == 0:
            raise DimensionMismatchError("sigma and powsums must have equal positive length")
        object.__setattr__(self, "sigma", sig)
        object.__setattr__(self, "powsums", p)
        expected = sigma_to_powsums(sig)
        scale = 1.0 + float(np.linalg.norm(expected))
        if np.linalg.norm(expected - p) > 1e-6 * scale:
            raise InvalidInputError("sigma and powsums are not Newton-consistent")

    @property
    def n(self) -> int:
        return self.sigma.size

    @classmethod
    def from_sigma(cls, sigma) -> "SymFuncs":
        sig = as_vector(sigma)
        return cls(sigma=sig, powsums=sigma_to_powsums(sig))

    @classmethod
    def from_powsums(cls, powsums) -> "SymFuncs":
        p = as_vector(powsums)
        return cls(sigma=powsums_to_sigma(p), powsums=p)
