"""Shared helpers: random object factories and independent oracles."""

from __future__ import annotations

import numpy as np

import choikit as ck


def rand_unit_vector(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def haar_unitary(rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (g + g.conj().T)


def random_cp_choi(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Choi matrix of A -> g A g* for a random factor g (PSD by construction)."""
    g = scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    return ck.choi_from_action(lambda a: g @ a @ g.conj().T)


def random_mixture(rng: np.random.Generator) -> np.ndarray:
    """Random CP + co-CP sum; the represented map is positive."""
    return random_cp_choi(rng) + ck.partial_transpose(random_cp_choi(rng))


def random_unitary_conjugation_choi(rng: np.random.Generator) -> np.ndarray:
    v = haar_unitary(rng)
    return ck.choi_from_action(lambda a: v @ a @ v.conj().T)


def random_canonical_matrix(rng: np.random.Generator, kind: str) -> np.ndarray:
    """Random Hermitian matrices matching the canonical zero pattern.

    'psd' embeds a random PSD 3x3 on indices {0,1,3} (so the CP conditions
    hold), 'psd_z' adds a nonzero z entry, 'generic' draws all coefficients
    freely, 'boundary' takes the rank-one CP part of a random split.
    """
    if kind == "psd":
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        m3 = g @ g.conj().T
        h = np.zeros((4, 4), dtype=np.complex128)
        idx = (0, 1, 3)
        for r, i in enumerate(idx):
            for s, j in enumerate(idx):
                h[i, j] = m3[r, s]
        return h
    if kind == "psd_z":
        h = random_canonical_matrix(rng, "psd")
        zv = 0.5 * (rng.normal() + 1j * rng.normal())
        h[2, 1] = zv
        h[1, 2] = np.conj(zv)
        return h
    if kind == "generic":
        a, b, u = rng.normal(size=3)
        c, y, z, t = rng.normal(size=4) + 1j * rng.normal(size=4)
        h = np.zeros((4, 4), dtype=np.complex128)
        h[0, 0] = a
        h[1, 1] = b
        h[3, 3] = u
        h[0, 1] = c
        h[1, 0] = np.conj(c)
        h[0, 3] = y
        h[3, 0] = np.conj(y)
        h[2, 1] = z
        h[1, 2] = np.conj(z)
        h[1, 3] = t
        h[3, 1] = np.conj(t)
        return h
    if kind == "boundary":
        params = ck.random_params(rng)
        return ck.decompose_extremal(ck.build_extremal(params)).h1
    raise ValueError(kind)


def assert_rank_one_by_minors(m, tol: float = 1e-9) -> None:
    """Independent rank-1 oracle: nonzero matrix with every 2x2 minor zero."""
    arr = np.asarray(m)
    scale = float(np.max(np.abs(arr)))
    assert scale > tol, "matrix is numerically zero"
    n = arr.shape[0]
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            for c1 in range(n):
                for c2 in range(c1 + 1, n):
                    minor = arr[r1, c1] * arr[r2, c2] - arr[r1, c2] * arr[r2, c1]
                    assert abs(minor) <= tol * scale * scale, (r1, r2, c1, c2, minor)
