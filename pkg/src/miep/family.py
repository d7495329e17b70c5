"""Affine-linear parametrized matrix families Z(x) = B0 + sum_i x_i B_i.

The basis matrices double as exact tangent data: the family is smooth of
dimension d everywhere when the basis is linearly independent, so smoothness
checks reduce to nonsingularity of the evaluated member.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    DependentBasisError,
    DimensionMismatchError,
    InvalidInputError,
    SmoothPointNotFoundError,
)
from .linalg import as_square_matrix, as_vector, complex_gaussian, numerical_rank

DET_TOL = 1e-9
SMOOTH_POINT_BUDGET = 64


@dataclass(frozen=True)
class FamilyPoint:
    """A parameter vector together with the evaluated family member."""

    x: np.ndarray
    Z: np.ndarray


@dataclass(frozen=True)
class AffineFamily:
    """Parametrization x -> base + sum_i x_i basis[i] of a matrix family.

    ``kind`` is "diagonal" for the distinguished family of diagonal matrices
    (zero base, unit diagonal basis, d = n) and "general" otherwise. Basis
    independence is verified by :meth:`dimension`.
    """

    base: np.ndarray
    basis: tuple
    kind: str = "general"

    def __post_init__(self):
        base = as_square_matrix(self.base)
        mats = tuple(as_square_matrix(b) for b in self.basis)
        if not mats:
            raise InvalidInputError("family needs at least one basis matrix")
        n = base.shape[0]
        if any(b.shape[0] != n for b in mats):
            raise DimensionMismatchError("basis matrices must match the base order")
        if self.kind not in ("general", "diagonal"):
            raise InvalidInputError(f"unknown family kind {self.kind!r}")
        if self.kind == "diagonal":
            if len(mats) != n or np.any(base != 0):
                raise InvalidInputError("diagonal family requires zero base and d = n")
            for i, b in enumerate(mats):
                expected = np.zeros((n, n), dtype=complex)
                expected[i, i] = 1.0
                if np.any(b != expected):
                    raise InvalidInputError("diagonal family basis must be unit diagonal matrices")
        for m in (base, *mats):
            m.setflags(write=False)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "basis", mats)

    @property
    def n(self) -> int:
        return self.base.shape[0]

    @property
    def d(self) -> int:
        return len(self.basis)

    def evaluate(self, x) -> FamilyPoint:
        """Evaluate Z(x) = base + sum_i x_i basis[i]."""
        x = as_vector(x, length=self.d)
        z = self.base.astype(complex, copy=True)
        for xi, b in zip(x, self.basis):
            z += xi * b
        return FamilyPoint(x=x, Z=z)

    def dimension(self, tol: float = 1e-9) -> int:
        """Return d after verifying the basis is linearly independent."""
        stacked = np.stack([b.ravel() for b in self.basis])
        if numerical_rank(stacked, tol) < self.d:
            raise DependentBasisError("family basis matrices are linearly dependent")
        return self.d


def diagonal_family(n: int) -> AffineFamily:
    """The family of all diagonal matrices of order n."""
    if n < 1:
        raise InvalidInputError("order must be positive")
    basis = []
    for i in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1.0
        basis.append(e)
    return AffineFamily(base=np.zeros((n, n), dtype=complex), basis=tuple(basis), kind="diagonal")


@dataclass(frozen=True)
class NonconstancyResult:
    """Outcome of the randomized determinant-nonconstancy test.

    ``nonconstant = True`` comes with a witness pair of parameter vectors
    whose determinants differ; ``False`` is probabilistic evidence only
    (the determinant is a polynomial in x, so agreement at random complex
    points implies constancy with probability 1).
    """

    nonconstant: bool
    x: Optional[np.ndarray]
    x_alt: Optional[np.ndarray]
    gap: float


def det_is_nonconstant(
    family: AffineFamily,
    trials: int = 8,
    seed: int = 0,
    tol: float = DET_TOL,
) -> NonconstancyResult:
    """Randomized one-sided test for det Z(x) being nonconstant on the family."""
    if trials < 2:
        raise InvalidInputError("need at least two trials")
    rng = np.random.default_rng(seed)
    xs = [complex_gaussian(rng, family.d) for _ in range(trials)]
    dets = [np.linalg.det(family.evaluate(x).Z) for x in xs]
    scale = 1.0 + max(abs(v) for v in dets)
    best_gap, best = 0.0, (None, None)
    for i in range(trials):
        for j in range(i + 1, trials):
            gap = abs(dets[i] - dets[j])
            if gap > best_gap:
                best_gap, best = gap, (xs[i], xs[j])
    if best_gap > tol * scale:
        return NonconstancyResult(True, best[0], best[1], best_gap)
    return NonconstancyResult(False, None, None, best_gap)


def smooth_point(
    family: AffineFamily,
    seed: int = 0,
    tol: float = DET_TOL,
    budget: int = SMOOTH_POINT_BUDGET,
) -> FamilyPoint:
    """Sample a family member with |det| above ``tol`` to serve as a base point."""
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        pt = family.evaluate(complex_gaussian(rng, family.d))
        if abs(np.linalg.det(pt.Z)) > tol:
            return pt
    raise SmoothPointNotFoundError(
        f"no nonsingular member found in {budget} samples (det may vanish identically)"
    )
