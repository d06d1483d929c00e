"""Group elements, the Cartan (KAK) decomposition g = u1 b u2 with
b = diag(1/eps, eps), and exact Haar quadrature on SU(2).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np


class MatrixInvariantError(ValueError):
    """A matrix fails its group-membership invariant."""


def _as_matrix(entries) -> np.ndarray:
    m = np.asarray(entries, dtype=complex)
    if m.shape != (2, 2):
        raise MatrixInvariantError(f"expected a 2x2 matrix, got shape {m.shape}")
    m = m.copy()
    m.setflags(write=False)
    return m


def _det(m: np.ndarray) -> complex:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


@dataclass(frozen=True)
class SL2CElement:
    """An element of SL(2,C): a 2x2 complex matrix with determinant 1."""

    matrix: np.ndarray
    tol: float = field(default=1e-12, repr=False, compare=False)

    def __post_init__(self) -> None:
        m = _as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        d = _det(m)
        if abs(d - 1.0) > self.tol:
            raise MatrixInvariantError(f"det = {d} deviates from 1 beyond tol {self.tol}")

    @classmethod
    def identity(cls) -> "SL2CElement":
        return cls(np.eye(2, dtype=complex))

    @classmethod
    def from_flat(cls, parts: Sequence[float], tol: float = 1e-12) -> "SL2CElement":
        """Build from 8 reals: row-major entries, re/im interleaved."""
        parts = [float(x) for x in parts]
        if len(parts) != 8:
            raise MatrixInvariantError("expected 8 real numbers")
        vals = [complex(parts[2 * i], parts[2 * i + 1]) for i in range(4)]
        return cls(np.array([[vals[0], vals[1]], [vals[2], vals[3]]]), tol=tol)

    def to_flat(self) -> list[float]:
        out: list[float] = []
        for r in range(2):
            for c in range(2):
                out.extend((self.matrix[r, c].real, self.matrix[r, c].imag))
        return out


@dataclass(frozen=True)
class SU2Element:
    """An element of SU(2): unitary with determinant 1."""

    matrix: np.ndarray
    tol: float = field(default=1e-12, repr=False, compare=False)

    def __post_init__(self) -> None:
        m = _as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if abs(_det(m) - 1.0) > self.tol:
            raise MatrixInvariantError("determinant deviates from 1")
        uerr = np.max(np.abs(m @ m.conj().T - np.eye(2)))
        if uerr > max(self.tol, 1e-12):
            raise MatrixInvariantError(f"unitarity defect {uerr:.3e}")

    @classmethod
    def identity(cls) -> "SU2Element":
        return cls(np.eye(2, dtype=complex))

    @classmethod
    def from_flat(cls, parts: Sequence[float], tol: float = 1e-12) -> "SU2Element":
        return cls(SL2CElement.from_flat(parts, tol=max(tol, 1e-9)).matrix, tol=tol)

    def to_flat(self) -> list[float]:
        return SL2CElement(self.matrix, tol=1e-9).to_flat()

    def as_sl2c(self) -> SL2CElement:
        return SL2CElement(self.matrix, tol=max(self.tol, 1e-12))

    def euler_angles(self) -> tuple[float, float, float]:
        """z-y-z Euler angles (alpha, beta, gamma) with alpha in [0, 2pi),
        beta in [0, pi], gamma in [0, 4pi)."""
        a = self.matrix[0, 0]
        c = self.matrix[1, 0]
        beta = 2.0 * math.atan2(abs(c), abs(a))
        if abs(c) < 1e-15:
            # beta ~ 0: only alpha + gamma is determined
            tot = -2.0 * cmath.phase(a)
            alpha = tot % (2.0 * math.pi)
            gamma = (tot - alpha) % (4.0 * math.pi)
            return alpha, 0.0, gamma
        if abs(a) < 1e-15:
            dif = 2.0 * cmath.phase(c)
            alpha = dif % (2.0 * math.pi)
            gamma = (alpha - dif) % (4.0 * math.pi)
            return alpha, math.pi, gamma
        tot = -2.0 * cmath.phase(a)   # alpha + gamma mod 4pi
        dif = 2.0 * cmath.phase(c)    # alpha - gamma mod 4pi
        alpha = ((tot + dif) / 2.0) % (2.0 * math.pi)
        gamma = (tot - alpha) % (4.0 * math.pi)
        return alpha, beta, gamma


def su2_from_euler(alpha: float, beta: float, gamma: float) -> SU2Element:
    """z-y-z Euler factorization u = e^{-i a s3/2} e^{-i b s2/2} e^{-i g s3/2}.

    Angles outside the canonical ranges are accepted and wrapped by the
    double-cover periodicity of the parametrization itself.
    """
    alpha = float(alpha)
    beta = float(beta)
    gamma = float(gamma)
    cb = math.cos(beta / 2.0)
    sb = math.sin(beta / 2.0)
    ea = cmath.exp(-0.5j * alpha)
    eg = cmath.exp(-0.5j * gamma)
    m = np.array(
        [
            [ea * eg * cb, -ea * sb / eg],
            [sb * eg / ea, cb / (ea * eg)],
        ]
    )
    return SU2Element(m, tol=1e-10)


@dataclass(frozen=True)
class CartanFactors:
    """The decomposition g = u1 diag(1/eps, eps) u2 with eps >= 1."""

    u1: SU2Element
    epsilon: float
    u2: SU2Element

    def __post_init__(self) -> None:
        if self.epsilon < 1.0 - 1e-12:
            raise ValueError(f"epsilon = {self.epsilon} violates the eps >= 1 convention")

    def boost_matrix(self) -> np.ndarray:
        return np.diag([1.0 / self.epsilon, self.epsilon]).astype(complex)

    def recompose(self) -> SL2CElement:
        return SL2CElement(self.u1.matrix @ self.boost_matrix() @ self.u2.matrix, tol=1e-9)


def cartan_decompose(g: SL2CElement, degeneracy_tol: float = 1e-12) -> CartanFactors:
    """Factor g = u1 diag(1/eps, eps) u2 via the 2x2 singular value decomposition.

    eps is the larger singular value (a det-1 matrix has singular values eps
    and 1/eps).  Phase conventions: both unitary factors are scaled to
    determinant 1, and the remaining diagonal phase freedom is fixed by making
    the first nonzero component of u1's first column real positive, with the
    compensating phase pushed into u2.  When eps = 1 the factors are
    non-unique; the convention u2 = identity, u1 = g is returned.
    """
    U, sv, Vh = np.linalg.svd(g.matrix)
    eps = float(sv[0])
    if eps <= 1.0 + degeneracy_tol:
        u1 = SU2Element(g.matrix, tol=1e-9)
        return CartanFactors(u1, 1.0, SU2Element.identity())
    # reorder so the boost is diag(1/eps, eps)
    P = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    u1 = U @ P
    u2 = P @ Vh
    # scalar phases to reach det 1 on both factors
    th = cmath.phase(_det(u1))
    u1 = u1 * cmath.exp(-0.5j * th)
    u2 = u2 * cmath.exp(+0.5j * th)
    # residual diag(e^{i p}, e^{-i p}) freedom commutes with the boost
    col = u1[:, 0]
    lead = col[0] if abs(col[0]) > 1e-12 else col[1]
    p = cmath.phase(lead)
    D = np.diag([cmath.exp(-1j * p), cmath.exp(1j * p)])
    u1 = u1 @ D
    u2 = np.conj(D) @ u2
    return CartanFactors(
        SU2Element(u1, tol=1e-9), eps, SU2Element(u2, tol=1e-9)
    )


def epsilon_of(g: SL2CElement) -> float:
    """The boost parameter of g: its larger singular value, >= 1."""
    sv = np.linalg.svd(g.matrix, compute_uv=False)
    return max(float(sv[0]), 1.0)


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor quadrature on SU(2), exact for products of matrix-coefficient
    entries up to the stated band.

    Uniform nodes in alpha over [0, 2pi) and gamma over [0, 4pi), and
    Gauss-Legendre nodes in cos(beta).  Weights are normalized Haar measure
    (they sum to 1).  Immutable and safe to share across threads.
    """

    twice_band_limit: int
    alphas: np.ndarray
    betas: np.ndarray
    beta_weights: np.ndarray
    gammas: np.ndarray

    def __post_init__(self) -> None:
        for name in ("alphas", "betas", "beta_weights", "gammas"):
            arr = np.asarray(getattr(self, name), dtype=float).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_nodes(self) -> int:
        return len(self.alphas) * len(self.betas) * len(self.gammas)

    def iter_nodes(self) -> Iterator[tuple[SU2Element, float]]:
        wa = 1.0 / len(self.alphas)
        wg = 1.0 / len(self.gammas)
        for a in self.alphas:
            for b, wb in zip(self.betas, self.beta_weights):
                for g in self.gammas:
                    yield su2_from_euler(a, b, g), wa * (wb / 2.0) * wg

    @property
    def nodes(self) -> list[tuple[SU2Element, float]]:
        return list(self.iter_nodes())

    def weight_array(self) -> np.ndarray:
        """Weights on the (alpha, beta, gamma) tensor grid, total mass 1."""
        wa = np.full(len(self.alphas), 1.0 / len(self.alphas))
        wg = np.full(len(self.gammas), 1.0 / len(self.gammas))
        return wa[:, None, None] * (self.beta_weights / 2.0)[None, :, None] * wg[None, None, :]

    def sample(self, phi: Callable[[SU2Element], complex]) -> np.ndarray:
        """Evaluate phi on the tensor grid; shape (n_alpha, n_beta, n_gamma)."""
        out = np.empty((len(self.alphas), len(self.betas), len(self.gammas)), dtype=complex)
        for ia, a in enumerate(self.alphas):
            for ib, b in enumerate(self.betas):
                for ig, g in enumerate(self.gammas):
                    out[ia, ib, ig] = phi(su2_from_euler(a, b, g))
        return out

    def integrate(self, phi: Callable[[SU2Element], complex]) -> complex:
        return complex(np.sum(self.sample(phi) * self.weight_array()))


def haar_quadrature_su2(twice_band_limit: int) -> QuadratureGrid:
    """Quadrature grid integrating conj(D^{s1}) D^{s2} exactly for
    2 s1, 2 s2 <= twice_band_limit."""
    B = int(twice_band_limit)
    if B < 0:
        raise ValueError("band limit must be non-negative")
    n_circle = 2 * B + 2
    n_beta = B + 1
    alphas = 2.0 * math.pi * np.arange(n_circle) / n_circle
    gammas = 4.0 * math.pi * np.arange(n_circle) / n_circle
    x, wq = np.polynomial.legendre.leggauss(n_beta)
    betas = np.arccos(x)
    return QuadratureGrid(B, alphas, betas, wq, gammas)


__all__ = [
    "CartanFactors",
    "MatrixInvariantError",
    "QuadratureGrid",
    "SL2CElement",
    "SU2Element",
    "cartan_decompose",
    "epsilon_of",
    "haar_quadrature_su2",
    "su2_from_euler",
]
