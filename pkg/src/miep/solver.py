"""Multi-start damped Newton solution of assignment_map(x) = target.

Determinism contract: identical (context, target, config) produce identical
solution sets regardless of the thread count. Starts are generated as one
seeded stream (structured permutation starts first for diagonal families,
then complex Gaussian samples), evaluated in chunks, and merged strictly in
start order, so a larger start budget only extends the stream.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional

import numpy as np

from .assignment import AssignmentContext, assignment_jacobian, assignment_map
from .errors import (
    CapExceededError,
    DegenerateMatrixError,
    InvalidInputError,
    SingularMatrixError,
)
from .family import diagonal_family
from .linalg import as_square_matrix, as_vector, complex_gaussian, principal_minor, solve_linear

MULTIPLE_ROOT_COND = 1e8
STRUCTURED_START_MAX_ORDER = 6
COUNT_CAP = 5
MINOR_CAP = 16


@dataclass(frozen=True)
class SolveConfig:
    """Newton and multi-start settings.

    ``starts`` counts the random starts drawn from the seeded stream;
    ``None`` resolves to 64 * n! at solve time. Structured starts for
    diagonal families are added on top. ``damping`` is the backtracking
    factor of the line search.
    """

    max_iters: int = 100
    residual_tol: float = 1e-12
    starts: Optional[int] = None
    seed: int = 0
    dedup_tol: float = 1e-6
    damping: float = 0.5
    max_backtracks: int = 30

    def __post_init__(self):
        if self.max_iters < 1 or (self.starts is not None and self.starts < 1):
            raise InvalidInputError("iteration and start budgets must be positive")
        if self.residual_tol <= 0 or self.dedup_tol <= 0:
            raise InvalidInputError("tolerances must be positive")
        if not (0.0 < self.damping < 1.0) or self.max_backtracks < 0:
            raise InvalidInputError("damping must lie in (0, 1)")

    def resolved_starts(self, n: int) -> int:
        return self.starts if self.starts is not None else 64 * math.factorial(n)


@dataclass(frozen=True)
class NewtonResult:
    """One Newton run: final iterate, verified residual, and step history."""

    x: np.ndarray
    residual: float
    converged: bool
    iterations: int
    step_norms: tuple


@dataclass(frozen=True)
class Solution:
    x: np.ndarray
    Z: np.ndarray
    residual: float
    multiple_root_suspect: bool


@dataclass(frozen=True)
class SolutionSet:
    """Distinct verified solutions, sorted by residual."""

    solutions: tuple
    attempted_starts: int
    config: SolveConfig

    @property
    def distinct_count(self) -> int:
        return len(self.solutions)


def solve_once(ctx: AssignmentContext, target, x0, cfg: SolveConfig | None = None) -> NewtonResult:
    """Damped Newton iteration on assignment_map(x) - target from one start.

    Square systems take a plain Newton step; wide systems (d > n) take the
    minimum-norm step and tall systems the least-squares step. A stalled
    line search or singular Jacobian ends the run as non-converged, which is
    a report rather than an error. After reaching the residual tolerance one
    undamped polishing step is kept if it improves the residual.
    """
    cfg = cfg or SolveConfig()
    fam = ctx.family
    t = as_vector(target, length=ctx.n)
    x = as_vector(x0, length=fam.d)
    r = assignment_map(ctx, x) - t
    rn = float(np.linalg.norm(r))
    steps: list[float] = []
    square = fam.d == ctx.n
    converged = rn <= cfg.residual_tol
    for _ in range(cfg.max_iters):
        if converged:
            break
        try:
            jac = assignment_jacobian(ctx, x)
            if square:
                delta = -solve_linear(jac, r, max_cond=1e14)
            else:
                delta = -np.linalg.lstsq(jac, r, rcond=None)[0]
        except (SingularMatrixError, np.linalg.LinAlgError):
            return NewtonResult(x, rn, False, len(steps), tuple(steps))
        scale = 1.0
        accepted = False
        for _ in range(cfg.max_backtracks + 1):
            xt = x + scale * delta
            rt = assignment_map(ctx, xt) - t
            rtn = float(np.linalg.norm(rt))
            if rtn < rn:
                accepted = True
                break
            scale *= cfg.damping
        if not accepted:
            return NewtonResult(x, rn, False, len(steps), tuple(steps))
        steps.append(scale * float(np.linalg.norm(delta)))
        x, r, rn = xt, rt, rtn
        converged = rn <= cfg.residual_tol
    if converged and steps:
        # one undamped polish step; quadratic convergence makes it nearly free
        try:
            jac = assignment_jacobian(ctx, x)
            if square:
                delta = -solve_linear(jac, r, max_cond=1e14)
            else:
                delta = -np.linalg.lstsq(jac, r, rcond=None)[0]
            xt = x + delta
            rt = assignment_map(ctx, xt) - t
            rtn = float(np.linalg.norm(rt))
            if rtn < rn:
                steps.append(float(np.linalg.norm(delta)))
                x, rn = xt, rtn
        except (SingularMatrixError, np.linalg.LinAlgError):
            pass
    return NewtonResult(x, rn, converged, len(steps), tuple(steps))


def _structured_starts(ctx: AssignmentContext, target: np.ndarray) -> list:
    """Permutation starts for diagonal families: assign each target root to a
    diagonal slot as if M were diagonal. Heuristic seeds only; skipped when
    the diagonal of M is too small or the order is large."""
    fam = ctx.family
    n = ctx.n
    if fam.kind != "diagonal" or fam.d != n or n > STRUCTURED_START_MAX_ORDER:
        return []
    diag = np.diagonal(ctx.M)
    if np.min(np.abs(diag)) < 1e-8:
        return []
    roots = np.roots(np.concatenate(([1.0 + 0j], target)))
    return [
        np.array([roots[p[i]] / diag[i] for i in range(n)], dtype=complex)
        for p in permutations(range(n))
    ]


def _start_stream(ctx: AssignmentContext, target: np.ndarray, cfg: SolveConfig) -> Iterator[np.ndarray]:
    yield from _structured_starts(ctx, target)
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.resolved_starts(ctx.n)):
        yield complex_gaussian(rng, ctx.family.d)


def _is_duplicate(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    scale = 1.0 + max(float(np.linalg.norm(a)), float(np.linalg.norm(b)))
    return float(np.linalg.norm(a - b)) <= tol * scale


def _multiple_root_suspect(ctx: AssignmentContext, x: np.ndarray) -> bool:
    s = np.linalg.svd(assignment_jacobian(ctx, x), compute_uv=False)
    return bool(s[0] == 0.0 or s[-1] * MULTIPLE_ROOT_COND < s[0])


def solve(
    ctx: AssignmentContext,
    target,
    cfg: SolveConfig | None = None,
    threads: int = 1,
    stop_after: Optional[int] = None,
) -> SolutionSet:
    """Multi-start search for all family members hitting the target polynomial.

    Every listed solution is re-verified against the residual tolerance and
    deduplicated by relative parameter distance, keeping the lower-residual
    representative. ``stop_after`` ends the search once that many distinct
    solutions are known (used by the counting routines, where the solution
    count is bounded a priori). An empty solution set is a valid outcome.
    """
    cfg = cfg or SolveConfig()
    t = as_vector(target, length=ctx.n)
    stream = _start_stream(ctx, t, cfg)
    chunk_size = max(32, threads * 8)
    accepted: list[np.ndarray] = []
    residuals: list[float] = []
    attempted = 0
    done = False
    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while not done:
            chunk = []
            for x0 in stream:
                chunk.append(x0)
                if len(chunk) >= chunk_size:
                    break
            if not chunk:
                break
            runner = lambda x0: solve_once(ctx, t, x0, cfg)
            results = list(executor.map(runner, chunk)) if executor else [runner(x0) for x0 in chunk]
            for res in results:
                attempted += 1
                if not (res.converged and res.residual <= cfg.residual_tol):
                    continue
                for i, known in enumerate(accepted):
                    if _is_duplicate(res.x, known, cfg.dedup_tol):
                        if res.residual < residuals[i]:
                            accepted[i] = res.x
                            residuals[i] = res.residual
                        break
                else:
                    accepted.append(res.x)
                    residuals.append(res.residual)
                if stop_after is not None and len(accepted) >= stop_after:
                    done = True
                    break
    finally:
        if executor:
            executor.shutdown(wait=False, cancel_futures=True)
    order = sorted(range(len(accepted)), key=lambda i: residuals[i])
    sols = tuple(
        Solution(
            x=accepted[i],
            Z=ctx.family.evaluate(accepted[i]).Z,
            residual=residuals[i],
            multiple_root_suspect=_multiple_root_suspect(ctx, accepted[i]),
        )
        for i in order
    )
    return SolutionSet(solutions=sols, attempted_starts=attempted, config=cfg)


@dataclass(frozen=True)
class NondegeneracyReport:
    """Principal-minor scan: nondegenerate iff no subset's minor vanishes."""

    nondegenerate: bool
    failing_subsets: tuple
    checked: int
    tol: float


def diag_nondegenerate(M, tol: float = 1e-9, cap: int = MINOR_CAP) -> NondegeneracyReport:
    """Evaluate all 2^n principal minors of M (empty minor = 1).

    The coefficient matrix admits every target over the diagonal family
    exactly when all minors are nonzero; failing index subsets (zero-based)
    are listed for diagnosis.
    """
    from itertools import combinations

    m = as_square_matrix(M)
    n = m.shape[0]
    if n > cap:
        raise CapExceededError(f"order {n} exceeds the principal-minor cap {cap}")
    failing = []
    checked = 1  # empty subset, identically 1
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            checked += 1
            if abs(principal_minor(m, subset)) <= tol:
                failing.append(subset)
    return NondegeneracyReport(
        nondegenerate=not failing,
        failing_subsets=tuple(failing),
        checked=checked,
        tol=tol,
    )


@dataclass(frozen=True)
class CountResult:
    count: int
    expected: int
    matches: bool
    solutions: SolutionSet


def count_solutions_diagonal(
    M,
    target,
    cfg: SolveConfig | None = None,
    threads: int = 1,
    cap: int = COUNT_CAP,
) -> CountResult:
    """Count distinct diagonal solutions against the expected total n!.

    Requires a nondegenerate M (every principal minor nonzero); the search
    stops once n! distinct solutions are found, since the solution count of
    the underlying polynomial system never exceeds n!.
    """
    m = as_square_matrix(M)
    n = m.shape[0]
    if n > cap:
        raise CapExceededError(f"order {n} exceeds the counting cap {cap}")
    report = diag_nondegenerate(m)
    if not report.nondegenerate:
        raise DegenerateMatrixError(
            f"principal minors vanish for subsets {list(report.failing_subsets)}"
        )
    ctx = AssignmentContext(M=m, family=diagonal_family(n))
    expected = math.factorial(n)
    solset = solve(ctx, target, cfg, threads=threads, stop_after=expected)
    count = solset.distinct_count
    return CountResult(count=count, expected=expected, matches=count == expected, solutions=solset)
