"""Monte Carlo realisations of the 4x4 matrix model.

Each draw consists of six independent Gaussians.  Two routes turn a draw
into a spacing:

* ``Formula``: ``s = 2 sqrt(g^2 + c^2 + a1^2 d^2 + a2^2 e^2 + a3^2 f^2)``;
* ``Matrix``: build the Hermitian 4x4 matrix, diagonalise it, and take the
  gap between the two doubly degenerate levels.

Both routes consume the same draw, so they agree per sample to rounding.
Sampling is organised in fixed-size chunks, each with its own
``SeedSequence`` child, so the output for a given seed does not depend on
how many workers produced it.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .params import AlphaVec, DomainError, NumericFailure

CHUNK_SIZE = 1 << 16


class Method(enum.Enum):
    FORMULA = "formula"
    MATRIX = "matrix"


@dataclass(frozen=True)
class GaussianDraw:
    """Standard normals ``g, h, c, d, e, f`` (scalars or equal-shape arrays).

    The diagonal entries are ``a = h + g`` and ``b = h - g``: independent,
    zero mean, variance 2, with ``(a - b) / 2 = g``.
    """

    g: np.ndarray
    h: np.ndarray
    c: np.ndarray
    d: np.ndarray
    e: np.ndarray
    f: np.ndarray

    @property
    def a(self):
        return self.h + self.g

    @property
    def b(self):
        return self.h - self.g

    @classmethod
    def from_entries(cls, a, b, c, d=0.0, e=0.0, f=0.0) -> "GaussianDraw":
        a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
        return cls((a - b) / 2.0, (a + b) / 2.0, *(np.asarray(v, dtype=float) for v in (c, d, e, f)))

    @classmethod
    def sample(cls, rng: np.random.Generator, n: int | None = None) -> "GaussianDraw":
        if n is None:
            return cls(*rng.standard_normal(6))
        # row-major (n, 6) so that a shorter run is a prefix of a longer one
        z = rng.standard_normal((n, 6))
        return cls(*np.ascontiguousarray(z.T))


def spacing_formula(draw: GaussianDraw, alpha: AlphaVec):
    a1, a2, a3 = alpha.as_tuple()
    q = draw.g**2 + draw.c**2 + (a1 * draw.d) ** 2 + (a2 * draw.e) ** 2 + (a3 * draw.f) ** 2
    return 2.0 * np.sqrt(q)


def build_matrix(draw: GaussianDraw, alpha: AlphaVec) -> np.ndarray:
    """Hermitian model matrix(es), shape ``(..., 4, 4)``."""
    a1, a2, a3 = alpha.as_tuple()
    a, b = np.asarray(draw.a, float), np.asarray(draw.b, float)
    c, d, e, f = (np.asarray(v, float) for v in (draw.c, draw.d, draw.e, draw.f))
    shape = np.broadcast_shapes(a.shape, b.shape, c.shape, d.shape, e.shape, f.shape)
    H = np.zeros(shape + (4, 4), dtype=complex)
    H[..., 0, 0] = a
    H[..., 1, 1] = a
    H[..., 2, 2] = b
    H[..., 3, 3] = b
    H[..., 0, 2] = c + 1j * a1 * d
    H[..., 2, 0] = c - 1j * a1 * d
    H[..., 1, 3] = c - 1j * a1 * d
    H[..., 3, 1] = c + 1j * a1 * d
    H[..., 0, 3] = a2 * e + 1j * a3 * f
    H[..., 3, 0] = a2 * e - 1j * a3 * f
    H[..., 1, 2] = -a2 * e + 1j * a3 * f
    H[..., 2, 1] = -a2 * e - 1j * a3 * f
    return H


_PAIRS = [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]


def eigen4(H, *, return_vectors: bool = False, max_sweeps: int = 16):
    """Eigenvalues (ascending) of Hermitian 4x4 matrices by cyclic Jacobi.

    Each rotation first removes the phase of the pivot ``H[p, q]`` with a
    diagonal unitary, then applies the real Jacobi rotation that zeroes it.
    Works on a stack ``(..., 4, 4)``; all matrices are rotated in lock step.

    Raises
    ------
    NumericFailure
        If the off-diagonal mass has not dropped to rounding level after
        ``max_sweeps`` sweeps.
    """
    A = np.array(H, dtype=complex, copy=True)
    if A.shape[-2:] != (4, 4):
        raise DomainError("eigen4 expects (..., 4, 4) input")
    if not np.allclose(A, np.conj(np.swapaxes(A, -1, -2)), rtol=0, atol=1e-12 * max(1.0, np.abs(A).max(initial=0))):
        raise DomainError("eigen4 expects Hermitian input")
    batch = A.shape[:-2]
    A = A.reshape((-1, 4, 4))
    V = np.broadcast_to(np.eye(4, dtype=complex), A.shape).copy() if return_vectors else None
    scale = np.sqrt(np.sum(np.abs(A) ** 2, axis=(1, 2)))
    off_mask = ~np.eye(4, dtype=bool)

    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(A[:, off_mask]) ** 2, axis=1))
        if np.all(off <= 1e-15 * scale):
            break
        for p, q in _PAIRS:
            apq = A[:, p, q]
            r = np.abs(apq)
            live = r > 0
            if not np.any(live):
                continue
            phase = np.ones_like(apq)
            phase[live] = apq[live] / r[live]
            app = A[:, p, p].real
            aqq = A[:, q, q].real
            theta = 0.5 * np.arctan2(2.0 * r, aqq - app)
            cs, sn = np.cos(theta), np.sin(theta)
            # U = diag-phase * rotation, restricted to the (p, q) plane.
            u_pp, u_pq = cs, sn
            u_qp, u_qq = -sn * np.conj(phase), cs * np.conj(phase)
            col_p = A[:, :, p].copy()
            col_q = A[:, :, q].copy()
            A[:, :, p] = col_p * u_pp[:, None] + col_q * u_qp[:, None]
            A[:, :, q] = col_p * u_pq[:, None] + col_q * u_qq[:, None]
            row_p = A[:, p, :].copy()
            row_q = A[:, q, :].copy()
            A[:, p, :] = row_p * np.conj(u_pp)[:, None] + row_q * np.conj(u_qp)[:, None]
            A[:, q, :] = row_p * np.conj(u_pq)[:, None] + row_q * np.conj(u_qq)[:, None]
            A[:, p, q] = 0.0
            A[:, q, p] = 0.0
            A[:, p, p] = A[:, p, p].real
            A[:, q, q] = A[:, q, q].real
            if V is not None:
                vp = V[:, :, p].copy()
                vq = V[:, :, q].copy()
                V[:, :, p] = vp * u_pp[:, None] + vq * u_qp[:, None]
                V[:, :, q] = vp * u_pq[:, None] + vq * u_qq[:, None]
    else:
        off = np.sqrt(np.sum(np.abs(A[:, off_mask]) ** 2, axis=1))
        if not np.all(off <= 1e-15 * scale):
            raise NumericFailure("Jacobi iteration did not converge")

    w = np.real(np.diagonal(A, axis1=1, axis2=2))
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1).reshape(batch + (4,))
    if V is None:
        return w
    V = np.take_along_axis(V, order[:, None, :], axis=2).reshape(batch + (4, 4))
    return w, V


def spacing_from_levels(levels):
    """Gap between the two degenerate pairs of an ascending spectrum."""
    levels = np.asarray(levels)
    return 0.5 * (levels[..., 2] + levels[..., 3]) - 0.5 * (levels[..., 0] + levels[..., 1])


def spacing_matrix(draw: GaussianDraw, alpha: AlphaVec):
    return spacing_from_levels(eigen4(build_matrix(draw, alpha)))


def sample_spacing_formula(rng: np.random.Generator, alpha: AlphaVec) -> float:
    return float(spacing_formula(GaussianDraw.sample(rng), alpha))


def sample_spacing_matrix(rng: np.random.Generator, alpha: AlphaVec) -> float:
    return float(spacing_matrix(GaussianDraw.sample(rng), alpha))


@dataclass(frozen=True)
class SpacingSampleSet:
    alpha: AlphaVec
    seed: int
    method: Method
    spacings: np.ndarray = field(repr=False)

    @property
    def count(self) -> int:
        return int(self.spacings.size)

    def mean(self) -> float:
        return float(self.spacings.mean())


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk,)))


def draw_chunk(seed: int, chunk: int, n: int) -> GaussianDraw:
    return GaussianDraw.sample(chunk_rng(seed, chunk), n)


def _chunk_spacings(seed, chunk, n, alpha, method):
    draw = draw_chunk(seed, chunk, n)
    if method is Method.FORMULA:
        return spacing_formula(draw, alpha)
    return spacing_matrix(draw, alpha)


def run_ensemble(
    alpha: AlphaVec,
    n: int,
    seed: int = 0,
    method: Method = Method.FORMULA,
    workers: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> SpacingSampleSet:
    """Draw ``n`` spacings.

    Draw ``i`` always comes from chunk ``i // chunk_size`` of the seed's
    stream, so the result is identical for any ``workers``.
    """
    n = int(n)
    if n < 1:
        raise DomainError("n must be at least 1")
    if seed < 0:
        raise DomainError("seed must be a non-negative integer")
    method = Method(method)
    sizes = [min(chunk_size, n - start) for start in range(0, n, chunk_size)]
    jobs = [(int(seed), k, m, alpha, method) for k, m in enumerate(sizes)]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _chunk_spacings(*job), jobs))
    else:
        parts = [_chunk_spacings(*job) for job in jobs]
    return SpacingSampleSet(alpha, int(seed), method, np.concatenate(parts))
