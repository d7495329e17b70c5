"""JSON encoding and decoding of the library's value types.

Scalar form: a complex value is a ``[re, im]`` pair; purely real values may
be written (and are emitted) as bare numbers. Matrix form:
``{"n": order, "entries": [[scalar, ...] per row]}``. Families:
``{"n": ..., "kind": "diagonal"}`` or
``{"kind": "general", "n": ..., "base": Matrix?, "basis": [Matrix, ...]}``
(the base defaults to zero). Polynomials: ``{"coeffs": [b1, ..., bn]}`` or
``{"roots": [r1, ..., rn]}``, expanded to monic coefficients.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import InvalidInputError
from .family import AffineFamily, FamilyPoint, diagonal_family
from .linalg import as_square_matrix, as_vector
from .solvability import SolvabilityReport, WitnessCertificate
from .solver import CountResult, NondegeneracyReport, SolutionSet, SolveConfig


def encode_scalar(z) -> float | list:
    z = complex(z)
    if z.imag == 0.0:
        return z.real
    return [z.real, z.imag]


def decode_scalar(doc) -> complex:
    if isinstance(doc, bool):
        raise InvalidInputError("booleans are not scalars")
    if isinstance(doc, (int, float)):
        value = complex(doc)
    elif isinstance(doc, (list, tuple)) and len(doc) == 2 and all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in doc
    ):
        value = complex(doc[0], doc[1])
    else:
        raise InvalidInputError(f"not a scalar: {doc!r}")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise InvalidInputError("scalar must be finite")
    return value


def encode_vector(v) -> list:
    return [encode_scalar(z) for z in np.asarray(v).ravel()]


def decode_vector(doc) -> np.ndarray:
    if not isinstance(doc, (list, tuple)):
        raise InvalidInputError("vector must be a JSON array")
    return np.array([decode_scalar(z) for z in doc], dtype=complex)


def encode_matrix(m) -> dict:
    m = np.asarray(m)
    return {"n": int(m.shape[0]), "entries": [[encode_scalar(z) for z in row] for row in m]}


def decode_matrix(doc) -> np.ndarray:
    if not isinstance(doc, dict) or "entries" not in doc:
        raise InvalidInputError("matrix document needs an 'entries' field")
    rows = doc["entries"]
    if not isinstance(rows, list) or not rows:
        raise InvalidInputError("matrix entries must be a nonempty array of rows")
    m = np.array([[decode_scalar(z) for z in row] for row in rows], dtype=complex)
    n = doc.get("n", m.shape[0])
    if m.ndim != 2 or m.shape != (int(n), int(n)):
        raise InvalidInputError(f"matrix entries have shape {m.shape}, expected ({n}, {n})")
    return as_square_matrix(m)


def encode_family(f: AffineFamily) -> dict:
    if f.kind == "diagonal":
        return {"n": f.n, "kind": "diagonal"}
    return {
        "n": f.n,
        "kind": "general",
        "base": encode_matrix(f.base),
        "basis": [encode_matrix(b) for b in f.basis],
    }


def decode_family(doc) -> AffineFamily:
    if not isinstance(doc, dict) or "kind" not in doc or "n" not in doc:
        raise InvalidInputError("family document needs 'n' and 'kind' fields")
    kind = doc["kind"]
    n = int(doc["n"])
    if kind == "diagonal":
        return diagonal_family(n)
    if kind != "general":
        raise InvalidInputError(f"unknown family kind {kind!r}")
    if "basis" not in doc or not doc["basis"]:
        raise InvalidInputError("general family needs a nonempty 'basis'")
    basis = tuple(decode_matrix(b) for b in doc["basis"])
    base = decode_matrix(doc["base"]) if doc.get("base") is not None else np.zeros((n, n), dtype=complex)
    fam = AffineFamily(base=base, basis=basis, kind="general")
    if fam.n != n:
        raise InvalidInputError(f"family matrices have order {fam.n}, document says {n}")
    return fam


def decode_poly(doc, n: int | None = None) -> np.ndarray:
    """Monic-polynomial coefficients from a coeffs or roots document."""
    if not isinstance(doc, dict) or ("coeffs" in doc) == ("roots" in doc):
        raise InvalidInputError("polynomial document needs exactly one of 'coeffs' or 'roots'")
    if "coeffs" in doc:
        coeffs = decode_vector(doc["coeffs"])
    else:
        roots = decode_vector(doc["roots"])
        coeffs = np.atleast_1d(np.poly(roots))[1:].astype(complex) if roots.size else np.array([])
    if coeffs.size == 0:
        raise InvalidInputError("polynomial must have positive degree")
    if n is not None and coeffs.size != n:
        raise InvalidInputError(f"polynomial degree {coeffs.size} does not match order {n}")
    return as_vector(coeffs)


def encode_poly(coeffs) -> dict:
    return {"coeffs": encode_vector(coeffs)}


def encode_family_point(pt: FamilyPoint) -> dict:
    return {"x": encode_vector(pt.x), "Z": encode_matrix(pt.Z)}


def encode_config(cfg: SolveConfig, resolved_starts: int | None = None) -> dict:
    doc = {
        "max_iters": cfg.max_iters,
        "residual_tol": cfg.residual_tol,
        "starts": cfg.starts if resolved_starts is None else resolved_starts,
        "seed": cfg.seed,
        "dedup_tol": cfg.dedup_tol,
        "damping": cfg.damping,
        "max_backtracks": cfg.max_backtracks,
    }
    return doc


def encode_solution_set(ss: SolutionSet) -> dict:
    return {
        "solutions": [
            {
                "x": encode_vector(s.x),
                "Z": encode_matrix(s.Z),
                "residual": s.residual,
                "multiple_root_suspect": s.multiple_root_suspect,
            }
            for s in ss.solutions
        ],
        "distinct_count": ss.distinct_count,
        "attempted_starts": ss.attempted_starts,
        "config": encode_config(ss.config),
    }


def encode_report(r: SolvabilityReport) -> dict:
    det_witness = None
    if r.det_witness is not None and r.det_witness.nonconstant:
        det_witness = {
            "x": encode_vector(r.det_witness.x),
            "x_alt": encode_vector(r.det_witness.x_alt),
            "det_gap": r.det_witness.gap,
        }
    return {
        "n": r.n,
        "dimension": r.d,
        "dim_ok": r.dim_ok,
        "det_nonconstant": r.det_nonconstant,
        "det_witness": det_witness,
        "jacobian_rank": r.jacobian_rank,
        "solvable": r.solvable,
        "verdict": r.verdict,
        "witness_M": encode_matrix(r.witness_M) if r.witness_M is not None else None,
        "Z0": encode_family_point(r.Z0) if r.Z0 is not None else None,
        "S": encode_matrix(r.S) if r.S is not None else None,
    }


def encode_witness(cert: WitnessCertificate) -> dict:
    return {
        "M": encode_matrix(cert.M),
        "Z0": encode_family_point(cert.Z0),
        "S": encode_matrix(cert.S),
        "jacobian_rank": cert.jacobian_rank,
    }


def encode_nondegeneracy(rep: NondegeneracyReport) -> dict:
    return {
        "nondegenerate": rep.nondegenerate,
        "failing_subsets": [list(s) for s in rep.failing_subsets],
        "checked": rep.checked,
        "tol": rep.tol,
    }


def encode_count(res: CountResult) -> dict:
    return {
        "count": res.count,
        "expected": res.expected,
        "matches": res.matches,
        "solutions": encode_solution_set(res.solutions),
    }
