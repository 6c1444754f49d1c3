"""Certificate record returned by every decision procedure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

PASS = "PASS"
FAIL = "FAIL"


@dataclass(frozen=True)
class Certificate:
    """Outcome of a numeric decision procedure.

    margin is a signed distance to the decision boundary in the test's own
    scale (PASS requires margin >= -tol); face_membership is the one
    exception and reports a plain residual norm.  On FAIL the witness is
    present: a unit vector, a (direction, compressed matrix) pair, or the
    name of the violated condition.
    """

    verdict: str
    margin: float
    witness: Any = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def __bool__(self) -> bool:
        return self.passed


def certificate(ok: bool, margin: float, witness: Any = None, detail: str = "") -> Certificate:
    return Certificate(PASS if ok else FAIL, float(margin), witness, detail)
