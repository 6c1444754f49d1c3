"""Numerical exploration of how unique the CP + co-CP split is.

A candidate split is parameterized by seven real degrees of freedom
(a1, b1, u1, t1, c); the complementary coefficients are derived from the
input matrix totals and never stored.  Feasibility is the conjunction of
the six nonnegativity constraints and the eight minor constraints of the
two structured parts.  For inputs with u, |y|, |z| all nonzero the feasible
set is a single point (the closed-form split); at the boundary instances
whole families become feasible, which the search exhibits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import certify, extremal, linalg
from .certificate import FAIL, PASS, Certificate
from .errors import EpsilonTooLargeError, InvalidParamsError, NotExtremalError

FEASIBILITY_TOL = 1e-9
DEGENERATE_TOL = 1e-9
_GRID_CAP = 7
_CHUNK = 1 << 18

CONSTRAINT_NAMES = (
    "a1>=0", "b1>=0", "u1>=0", "a2>=0", "b2>=0", "u2>=0",
    "CP1", "CP2", "CP3", "CP4", "CcP1", "CcP2", "CcP3", "CcP4",
)


@dataclass(frozen=True)
class SplitCandidate:
    """Free coefficients of a structured two-part split."""

    a1: float
    b1: float
    u1: float
    t1: complex
    c: complex

    def vector(self) -> np.ndarray:
        return np.array([self.a1, self.b1, self.u1,
                         self.t1.real, self.t1.imag, self.c.real, self.c.imag])

    @staticmethod
    def from_vector(vec) -> "SplitCandidate":
        a1, b1, u1, tr, ti, cr, ci = (float(x) for x in np.asarray(vec).reshape(7))
        return SplitCandidate(a1, b1, u1, complex(tr, ti), complex(cr, ci))

    def complement(self, u: float, t: complex) -> tuple[float, float, float, complex]:
        """Derived coefficients (a2, b2, u2, t2) of the second part."""
        return 1.0 - self.a1, (1.0 - u) - self.b1, u - self.u1, t - self.t1


@dataclass(frozen=True)
class FeasibilityReport:
    """Result of a uniqueness scan around the canonical split."""

    canonical: SplitCandidate
    alternates: tuple[tuple[SplitCandidate, float], ...]
    feasible_count: int
    diameter: float
    radius: float
    resolution: float
    samples: int
    seed: int
    tol: float
    grid_points: int


def _extremal_data(h, validate_tol: float = extremal.RELATION_TOL):
    cert = extremal.validate_extremal(h, validate_tol)
    if not cert.passed:
        raise NotExtremalError(
            f"not a canonical extremal matrix: {cert.detail} (margin {cert.margin:.3e})")
    coeffs = certify.canonical_coefficients(h)
    return coeffs.u, coeffs.y, coeffs.z, coeffs.t


def _margin_table(u: float, y: complex, z: complex, t: complex, vecs: np.ndarray) -> np.ndarray:
    """Constraint margins for candidate vectors of shape (n, 7)."""
    a1 = vecs[:, 0]
    b1 = vecs[:, 1]
    u1 = vecs[:, 2]
    t1 = vecs[:, 3] + 1j * vecs[:, 4]
    c = vecs[:, 5] + 1j * vecs[:, 6]
    a2 = 1.0 - a1
    b2 = (1.0 - u) - b1
    u2 = u - u1
    t2 = t - t1
    y2 = abs(y) ** 2
    z2 = abs(z) ** 2
    abs_t1 = np.abs(t1) ** 2
    abs_t2 = np.abs(t2) ** 2
    abs_c = np.abs(c) ** 2
    return np.stack([
        a1, b1, u1, a2, b2, u2,
        a1 * u1 - y2,
        b1 * u1 - abs_t1,
        a1 * b1 - abs_c,
        b1 * (a1 * u1 - y2) + 2.0 * (c * t1 * np.conj(y)).real - a1 * abs_t1 - u1 * abs_c,
        a2 * u2 - z2,
        b2 * u2 - abs_t2,
        a2 * b2 - abs_c,
        b2 * (a2 * u2 - z2) - 2.0 * (c * np.conj(t2) * np.conj(z)).real
        - a2 * abs_t2 - u2 * abs_c,
    ], axis=1)


def feasibility(h, cand: SplitCandidate, tol: float = FEASIBILITY_TOL) -> Certificate:
    """Test every structural and minor constraint of a candidate split."""
    u, y, z, t = _extremal_data(h)
    margins = _margin_table(u, y, z, t, cand.vector()[None, :])[0]
    worst = float(np.min(margins))
    failed = [name for name, v in zip(CONSTRAINT_NAMES, margins) if v < -tol]
    if failed:
        return Certificate(FAIL, worst, witness=failed[0], detail=failed[0])
    return Certificate(PASS, worst, detail="all constraints")


def split_matrices(h, cand: SplitCandidate) -> tuple[np.ndarray, np.ndarray]:
    """Materialize the two structured parts described by a candidate."""
    u, y, z, t = _extremal_data(h)
    a2, b2, u2, t2 = cand.complement(u, t)
    h1 = np.array([
        [cand.a1, cand.c, 0.0, y],
        [np.conj(cand.c), cand.b1, 0.0, cand.t1],
        [0.0, 0.0, 0.0, 0.0],
        [np.conj(y), np.conj(cand.t1), 0.0, cand.u1],
    ], dtype=np.complex128)
    h2 = np.array([
        [a2, -cand.c, 0.0, 0.0],
        [-np.conj(cand.c), b2, np.conj(z), t2],
        [0.0, z, 0.0, 0.0],
        [0.0, np.conj(t2), 0.0, u2],
    ], dtype=np.complex128)
    return h1, h2


def canonical_split(h, floor: float = 1e-8) -> SplitCandidate:
    """Closed-form split where it exists, or the natural boundary split.

    Away from the boundary this is the unique feasible candidate.  At the
    boundary instances: a CP input keeps all weight in the first part, a
    co-CP input keeps all weight in the second.
    """
    u, y, z, t = _extremal_data(h)
    if u > floor and abs(y) > floor and abs(z) > floor:
        ru = float(np.sqrt(u))
        return SplitCandidate(
            a1=abs(y) / ru,
            b1=abs(z) * (1.0 - u) / ru,
            u1=abs(y) * ru,
            t1=0.5 * t,
            c=complex(-z * t / (2.0 * abs(z) * ru)),
        )
    if u <= floor:
        return SplitCandidate(a1=1.0, b1=1.0 - u, u1=0.0, t1=0.0, c=0.0)
    if abs(y) <= floor:
        return SplitCandidate(a1=0.0, b1=0.0, u1=0.0, t1=0.0, c=0.0)
    return SplitCandidate(a1=1.0, b1=1.0 - u, u1=u, t1=complex(t), c=0.0)


def _structural_box(u: float, t: complex) -> tuple[np.ndarray, np.ndarray]:
    span_t = 2.0 * abs(t)
    lo = np.array([0.0, 0.0, 0.0, -span_t, -span_t, -1.0, -1.0])
    hi = np.array([1.0, 1.0 - u, u, span_t, span_t, 1.0, 1.0])
    return lo, np.maximum(lo, hi)


def _axis_points(lo: float, hi: float, resolution: float) -> np.ndarray:
    span = hi - lo
    if span <= 0.0:
        return np.array([lo])
    n = min(int(span / resolution) + 1, _GRID_CAP)
    n = max(n, 3)
    if n % 2 == 0:
        n += 1
    return np.linspace(lo, hi, n)


def _box_grid(lo: np.ndarray, hi: np.ndarray, resolution: float) -> np.ndarray:
    axes = [_axis_points(float(a), float(b), resolution) for a, b in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def uniqueness_search(h, radius: float = 0.2, resolution: float = 1e-2,
                      samples: int = 1_000_000, seed: int = 0,
                      tol: float = FEASIBILITY_TOL,
                      alternates_cap: int = 32) -> FeasibilityReport:
    """Scan candidate space for feasible splits.

    Deterministic coarse grids (a capped Cartesian grid over the structural
    box whose axes include the endpoints and center, plus one over the box
    of the given radius around the canonical candidate) are combined with
    seeded uniform samples.  Feasible candidates farther than
    10 * resolution from the canonical one are listed as alternates,
    farthest first, capped at alternates_cap entries; feasible_count and
    diameter (the exact max-coordinate spread of every feasible point
    found, canonical included) always cover the full set.
    """
    if not np.isfinite(resolution) or resolution <= 0.0:
        raise ValueError(f"resolution must be positive, got {resolution!r}")
    if not np.isfinite(radius) or radius <= 0.0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    if samples < 0:
        raise ValueError(f"samples must be nonnegative, got {samples!r}")
    u, y, z, t = _extremal_data(h)
    canon = canonical_split(h)
    cvec = canon.vector()
    lo, hi = _structural_box(u, t)
    lo_loc = np.maximum(lo, cvec - radius)
    hi_loc = np.minimum(hi, cvec + radius)

    def feasible_rows(vecs: np.ndarray) -> list[np.ndarray]:
        found = []
        for start in range(0, len(vecs), _CHUNK):
            chunk = vecs[start:start + _CHUNK]
            mask = np.all(_margin_table(u, y, z, t, chunk) >= -tol, axis=1)
            if np.any(mask):
                found.append(chunk[mask])
        return found

    rows: list[np.ndarray] = [cvec[None, :]]
    grid_global = _box_grid(lo, hi, resolution)
    grid_local = _box_grid(lo_loc, hi_loc, resolution)
    grid_points = len(grid_global) + len(grid_local)
    rows += feasible_rows(grid_global)
    rows += feasible_rows(grid_local)

    rng = np.random.default_rng(seed)
    n_global = samples // 2
    for count, (blo, bhi) in ((n_global, (lo, hi)), (samples - n_global, (lo_loc, hi_loc))):
        remaining = count
        while remaining > 0:
            take = min(remaining, _CHUNK)
            rows += feasible_rows(rng.uniform(blo, bhi, size=(take, 7)))
            remaining -= take

    feasible = np.unique(np.vstack(rows), axis=0)
    distances = np.max(np.abs(feasible - cvec[None, :]), axis=1)
    diameter = float(np.max(np.max(feasible, axis=0) - np.min(feasible, axis=0)))
    far = np.flatnonzero(distances > 10.0 * resolution)
    far = far[np.lexsort(np.vstack([feasible[far].T[::-1], -distances[far]]))]
    alternates = tuple(
        (SplitCandidate.from_vector(feasible[i]), float(distances[i]))
        for i in far[:alternates_cap]
    )
    return FeasibilityReport(
        canonical=canon,
        alternates=alternates,
        feasible_count=int(len(feasible)),
        diameter=diameter,
        radius=float(radius),
        resolution=float(resolution),
        samples=int(samples),
        seed=int(seed),
        tol=float(tol),
        grid_points=int(grid_points),
    )


def epsilon_family(h, eps: float, tol: float = linalg.PSD_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Shift weight eps off the second diagonal entry into a separate part.

    Only the boundary instances (u = 0, y = 0, or z = 0) admit this family;
    the shifted-off part is both CP and co-CP, and the remainder keeps the
    class of the input.  Returns (remainder, shift).
    """
    harr = linalg.as_matrix(h, 4)
    u, y, z, _ = _extremal_data(harr)
    if not np.isfinite(eps) or eps <= 0.0:
        raise InvalidParamsError(f"eps must be positive, got {eps!r}")
    if u <= DEGENERATE_TOL:
        required = ("cp", "ccp")
    elif abs(y) <= DEGENERATE_TOL:
        required = ("ccp",)
    elif abs(z) <= DEGENERATE_TOL:
        required = ("cp",)
    else:
        raise InvalidParamsError("the split of this matrix is unique; no shift family exists")
    shift = np.zeros((4, 4), dtype=np.complex128)
    shift[1, 1] = eps
    remainder = harr - shift
    for kind in required:
        check = certify.cp_check if kind == "cp" else certify.ccp_check
        cert = check(remainder, tol)
        if not cert.passed:
            raise EpsilonTooLargeError(
                f"remainder fails the {kind} check (lambda_min {cert.margin:.3e})")
    return remainder, shift
