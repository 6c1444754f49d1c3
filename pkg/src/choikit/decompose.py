"""Closed-form split of a canonical extremal map into a completely positive
part plus a completely copositive part, with the rank-one factor operators
realizing each part."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import certify, choi, extremal, linalg
from .certificate import FAIL, PASS, Certificate
from .errors import HypothesisViolatedError, NotExtremalError

HYPOTHESIS_TOL = 1e-8


@dataclass(frozen=True)
class DecompositionPair:
    """CP part h1, co-CP part h2, factor operators and split coefficients.

    The represented map acts as A -> k1 A k1* + k2 A^T k2*; y1 and z1 are
    the square roots of y and z fixed by the deterministic branch choice.
    """

    h1: np.ndarray
    h2: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    c: complex
    y1: complex
    z1: complex


def _require_extremal(h, validate_tol: float) -> certify.CanonicalCoefficients:
    cert = extremal.validate_extremal(h, validate_tol)
    if not cert.passed:
        raise NotExtremalError(
            f"not a canonical extremal matrix: {cert.detail} (margin {cert.margin:.3e})")
    return certify.canonical_coefficients(h)


def _require_hypotheses(u: float, y: complex, z: complex, tol: float) -> None:
    for name, value in (("u", u), ("|y|", abs(y)), ("|z|", abs(z))):
        if value <= tol:
            raise HypothesisViolatedError(f"{name} = {value:.3e} is below the floor {tol:.3e}")


def _split_roots(u: float, y: complex, t: complex) -> tuple[complex, complex]:
    """Square roots (y1, z1) with y1^2 = y, z1^2 = z pinned by t.

    y1 is the principal root of y; z1 then follows from
    t = 2i sqrt(1-u) y1 conj(z1).  Only the simultaneous sign flip
    (y1, z1) -> (-y1, -z1) remains free and it leaves both parts invariant.
    """
    y1 = linalg.principal_sqrt(y)
    z1 = complex(np.conj(t / (2j * np.sqrt(1.0 - u) * y1)))
    return complex(y1), z1


def _factors(u: float, y1: complex, z1: complex) -> tuple[np.ndarray, np.ndarray]:
    uq = float(u) ** 0.25
    s = float(np.sqrt(max(1.0 - u, 0.0)))
    k1 = np.array([
        [y1 / uq, 0.0],
        [1j * np.conj(z1) * s / uq, np.conj(y1) * uq],
    ], dtype=np.complex128)
    k2 = np.array([
        [z1 / uq, 0.0],
        [-1j * np.conj(y1) * s / uq, np.conj(z1) * uq],
    ], dtype=np.complex128)
    return k1, k2


def decompose_extremal(h, tol: float = HYPOTHESIS_TOL,
                       validate_tol: float = extremal.RELATION_TOL) -> DecompositionPair:
    """Split a canonical extremal Choi matrix into CP + co-CP rank-one parts.

    Requires u, |y| and |z| all above tol; the split is then unique.  Both
    parts keep the face structure of the input, sum to it exactly, and are
    rank one after the appropriate partial transpose.
    """
    harr = linalg.as_matrix(h, 4)
    _, _, u, _, y, z, t = _require_extremal(harr, validate_tol)
    _require_hypotheses(u, y, z, tol)
    ru = float(np.sqrt(u))
    one_minus_u = 1.0 - u
    c = -z * t / (2.0 * abs(z) * ru)
    t_half = 0.5 * t
    h1 = np.array([
        [abs(y) / ru, c, 0.0, y],
        [np.conj(c), abs(z) * one_minus_u / ru, 0.0, t_half],
        [0.0, 0.0, 0.0, 0.0],
        [np.conj(y), np.conj(t_half), 0.0, abs(y) * ru],
    ], dtype=np.complex128)
    h2 = np.array([
        [abs(z) / ru, -c, 0.0, 0.0],
        [-np.conj(c), abs(y) * one_minus_u / ru, np.conj(z), t_half],
        [0.0, z, 0.0, 0.0],
        [0.0, np.conj(t_half), 0.0, abs(z) * ru],
    ], dtype=np.complex128)
    y1, z1 = _split_roots(u, y, t)
    k1, k2 = _factors(u, y1, z1)
    return DecompositionPair(h1=h1, h2=h2, k1=k1, k2=k2, c=complex(c), y1=y1, z1=z1)


def kraus_operators(params: extremal.ExtremalParams,
                    tol: float = HYPOTHESIS_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Factor operators (k1, k2) of the split for a parameterized map.

    The represented map is A -> k1 A k1* + k2 A^T k2* with
    k1 k1* + k2 k2* equal to the identity.
    """
    params.validate()
    u = float(params.u)
    _require_hypotheses(u, complex(params.y), complex(params.z), tol)
    y1, z1 = _split_roots(u, complex(params.y), params.t)
    return _factors(u, y1, z1)


def verify_decomposition(h, pair: DecompositionPair, tol: float = 1e-10) -> Certificate:
    """Check a claimed split: the parts sum to h, h1 is CP, h2 is co-CP,
    and both lie in the canonical face (annihilate e1 on P_e2)."""
    harr = linalg.as_matrix(h, 4)
    e1 = np.array([1.0, 0.0], dtype=np.complex128)
    e2 = np.array([0.0, 1.0], dtype=np.complex128)
    margins: list[tuple[str, float]] = []
    margins.append(("sum", -linalg.maxabs(pair.h1 + pair.h2 - harr)))
    for name, part in (("h1", pair.h1), ("h2", pair.h2)):
        margins.append((f"hermitian({name})", -linalg.hermitian_residual(part)))
    hermitian_ok = all(v >= -tol for name, v in margins if name.startswith("hermitian"))
    if hermitian_ok:
        margins.append(("cp(h1)", certify.cp_check(pair.h1, tol).margin))
        margins.append(("ccp(h2)", certify.ccp_check(pair.h2, tol).margin))
        margins.append(("face(h1)", -choi.face_residual(pair.h1, e2, e1)))
        margins.append(("face(h2)", -choi.face_residual(pair.h2, e2, e1)))
    worst = min(v for _, v in margins)
    failed = [name for name, v in margins if v < -tol]
    if failed:
        return Certificate(FAIL, float(worst), witness=failed[0], detail=failed[0])
    return Certificate(PASS, float(worst), detail="sum, classes, and faces")
