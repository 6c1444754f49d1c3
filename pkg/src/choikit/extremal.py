"""Constructors and validators for canonical extremal unital positive maps.

The canonical Choi matrix of such a map is

    [ 1  0 | 0  y ]
    [ 0  b | z* t ]
    [ 0  z | 0  0 ]
    [ y* t*| 0  u ]

with b = 1 - u and, when b > 0, the coefficient relations

    |t|^2 = 2 b (u - |y|^2 - |z|^2),
    |y| + |z| = sqrt(u),
    t^2 = -4 (1 - u) y conj(z),

while b = 0 forces t = 0 and (|y|, |z|) in {(1, 0), (0, 1)}.  The square
root defining t has two branches; both give extremal maps and the choice is
part of the parameter set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import certify, linalg
from .certificate import FAIL, PASS, Certificate
from .errors import InvalidParamsError, NotExtremalError

RELATION_TOL = 1e-10


def derived_t(u: float, y: complex, z: complex, branch: str = "+") -> complex:
    """Branch-selected square root of -4 (1 - u) y conj(z)."""
    if branch not in ("+", "-"):
        raise InvalidParamsError(f"t branch must be '+' or '-', got {branch!r}")
    root = linalg.principal_sqrt(-4.0 * (1.0 - float(u)) * complex(y) * np.conj(complex(z)))
    return root if branch == "+" else -root


@dataclass(frozen=True)
class ExtremalParams:
    """Free parameters (u, y, z, branch) of the canonical extremal form."""

    u: float
    y: complex
    z: complex
    t_branch: str = "+"

    @property
    def b(self) -> float:
        return 1.0 - float(self.u)

    @property
    def t(self) -> complex:
        return derived_t(self.u, self.y, self.z, self.t_branch)

    def validate(self, tol: float = RELATION_TOL) -> None:
        """Raise InvalidParamsError naming the first violated invariant."""
        u = float(self.u)
        y = complex(self.y)
        z = complex(self.z)
        values = (u, y.real, y.imag, z.real, z.imag)
        if not all(np.isfinite(v) for v in values):
            raise InvalidParamsError("parameters contain NaN or Inf")
        if self.t_branch not in ("+", "-"):
            raise InvalidParamsError(f"t branch must be '+' or '-', got {self.t_branch!r}")
        if u < -tol or u > 1.0 + tol:
            raise InvalidParamsError(f"u = {u!r} outside [0, 1]")
        if self.b > tol:
            resid = abs(abs(y) + abs(z) - np.sqrt(max(u, 0.0)))
            if resid > tol:
                raise InvalidParamsError(
                    f"|y| + |z| must equal sqrt(u) when b > 0; residual {resid:.3e}")
        else:
            edge = min(abs(abs(y) - 1.0) + abs(z), abs(abs(z) - 1.0) + abs(y))
            if edge > tol:
                raise InvalidParamsError(
                    f"b = 0 requires |y| = 1 or |z| = 1 (other zero); residual {edge:.3e}")


def build_extremal(params: ExtremalParams, tol: float = RELATION_TOL) -> np.ndarray:
    """Canonical extremal Choi matrix for a validated parameter set."""
    params.validate(tol)
    u = float(params.u)
    y = complex(params.y)
    z = complex(params.z)
    t = params.t
    h = np.zeros((4, 4), dtype=np.complex128)
    h[0, 0] = 1.0
    h[1, 1] = params.b
    h[3, 3] = u
    h[0, 3] = y
    h[3, 0] = np.conj(y)
    h[2, 1] = z
    h[1, 2] = np.conj(z)
    h[1, 3] = t
    h[3, 1] = np.conj(t)
    return h


def example_family(s: float) -> np.ndarray:
    """Canonical one-parameter family with u = s^2, y = z = s/2, 0 < s < 1.

    Assembled directly from the closed-form entries (not via
    build_extremal) so the two construction paths can be cross-checked.
    """
    s = float(s)
    if not np.isfinite(s) or not 0.0 < s < 1.0:
        raise InvalidParamsError(f"family parameter must lie in (0, 1), got {s!r}")
    root = float(np.sqrt(1.0 - s * s))
    h = np.zeros((4, 4), dtype=np.complex128)
    h[0, 0] = 1.0
    h[1, 1] = 1.0 - s * s
    h[3, 3] = s * s
    h[0, 3] = h[3, 0] = 0.5 * s
    h[1, 2] = h[2, 1] = 0.5 * s
    h[1, 3] = 1j * s * root
    h[3, 1] = -1j * s * root
    return h


def degenerate_case(kind: str, y: complex = 0.0, z: complex = 0.0) -> np.ndarray:
    """The three boundary instances whose two-part split is not unique:
    u = 0, y = 0 (co-CP), or z = 0 (CP)."""
    h = np.zeros((4, 4), dtype=np.complex128)
    h[0, 0] = 1.0
    if kind == "u_zero":
        h[1, 1] = 1.0
        return h
    if kind == "y_zero":
        zc = complex(z)
        if not np.isfinite(zc.real) or not np.isfinite(zc.imag) or abs(zc) >= 1.0:
            raise InvalidParamsError(f"z must lie in the open unit disc, got {z!r}")
        h[1, 1] = 1.0 - abs(zc) ** 2
        h[2, 1] = zc
        h[1, 2] = np.conj(zc)
        h[3, 3] = abs(zc) ** 2
        return h
    if kind == "z_zero":
        yc = complex(y)
        if not np.isfinite(yc.real) or not np.isfinite(yc.imag) or abs(yc) >= 1.0:
            raise InvalidParamsError(f"y must lie in the open unit disc, got {y!r}")
        h[1, 1] = 1.0 - abs(yc) ** 2
        h[0, 3] = yc
        h[3, 0] = np.conj(yc)
        h[3, 3] = abs(yc) ** 2
        return h
    raise InvalidParamsError(f"unknown degenerate kind {kind!r}")


def validate_extremal(h, tol: float = RELATION_TOL) -> Certificate:
    """Certify that h is a canonical extremal-form Choi matrix.

    Checks the zero pattern (including the (0,1) entry), unitality of the
    diagonal, and the coefficient relations; the detail names the first
    violated relation.  Raises NotCanonicalFormError only when the hard
    zero pattern of the face form is broken.
    """
    a, b, u, c, y, z, t = certify.canonical_coefficients(h)
    margins: list[tuple[str, float]] = [
        ("pattern:c=0", -abs(c)),
        ("condition1", -abs(a - 1.0)),
        ("condition1", b),
        ("condition1", u),
        ("condition1", -abs(b + u - 1.0)),
    ]
    if b > tol:
        margins.extend([
            ("condition2", -abs(abs(t) ** 2 - 2.0 * b * (u - abs(y) ** 2 - abs(z) ** 2))),
            ("split", -abs(abs(y) + abs(z) - np.sqrt(max(u, 0.0)))),
            ("phase", -abs(t * t + 4.0 * (1.0 - u) * y * np.conj(z))),
        ])
    else:
        margins.extend([
            ("condition2", -min(abs(abs(y) - 1.0) + abs(z), abs(abs(z) - 1.0) + abs(y))),
            ("condition2", -abs(t)),
        ])
    worst = min(v for _, v in margins)
    failed = [name for name, v in margins if v < -tol]
    if failed:
        return Certificate(FAIL, float(worst), witness=failed[0], detail=failed[0])
    return Certificate(PASS, float(worst), detail="all relations")


def params_from_choi(h, tol: float = RELATION_TOL) -> ExtremalParams:
    """Recover the parameter set of a validated canonical extremal matrix."""
    cert = validate_extremal(h, tol)
    if not cert.passed:
        raise NotExtremalError(f"{cert.detail} violated (margin {cert.margin:.3e})")
    _, _, u, _, y, z, t = certify.canonical_coefficients(h)
    principal = derived_t(u, y, z, "+")
    branch = "+" if abs(t - principal) <= abs(t + principal) else "-"
    return ExtremalParams(u=u, y=y, z=z, t_branch=branch)


def random_params(rng: np.random.Generator,
                  u_range: tuple[float, float] = (0.05, 0.95),
                  modulus_floor: float = 1e-3) -> ExtremalParams:
    """Draw a valid parameter set from an explicit random generator.

    |y| and |z| are floored away from zero so the draws satisfy the split
    hypotheses; phases and the t branch are uniform.
    """
    u = float(rng.uniform(*u_range))
    root = float(np.sqrt(u))
    if root <= 2.0 * modulus_floor:
        raise InvalidParamsError("u too small for the requested modulus floor")
    ymod = float(rng.uniform(modulus_floor, root - modulus_floor))
    zmod = root - ymod
    phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=2))
    branch = "+" if int(rng.integers(0, 2)) == 0 else "-"
    return ExtremalParams(u=u, y=ymod * phases[0], z=zmod * phases[1], t_branch=branch)
