"""Gamma-matrix algebra and the spin-field interaction eigenproblem.

The spin coupling of the second-order spinor wave equation reduces to the
4x4 algebraic eigenproblem

    (gamma.k)(gamma.e_x) u = k0 lambda u,

with wave four-vector k = k0 (1, 0, n_m, 0) and polarization e_x = (0,1,0,0).
Because (gamma.k)^2 = k^2 = k0^2 (1 - n_m^2), (gamma.e_x)^2 = -1 and
k.e_x = 0, the matrix M = (gamma.k)(gamma.e_x)/k0 squares to
(1 - n_m^2) * I, so its eigenvalues are +-lambda with lambda =
sqrt(1 - n_m^2), each twofold degenerate.  Eigenvalues are representation
independent and depend only on n_m, never on the k0 scale.

The Majorana representation (all four matrices purely imaginary) makes M a
real matrix.  Basis within each degenerate eigenspace is fixed by
Gram-Schmidt on the columns of the spectral projector, in column order, for
reproducibility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, StructuralError

__all__ = ["GammaSet", "SpinEigensystem", "build_majorana_gammas",
           "spin_interaction_matrix"]

_METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class GammaSet:
    """Four gamma matrices plus the metric they represent."""

    gammas: tuple
    metric: np.ndarray

    def anticommutator(self, mu: int, nu: int) -> np.ndarray:
        g_mu, g_nu = self.gammas[mu], self.gammas[nu]
        return g_mu @ g_nu + g_nu @ g_mu

    def max_clifford_defect(self) -> float:
        """Largest entrywise deviation of {g^mu, g^nu} from 2 g^{mu nu} I."""
        worst = 0.0
        eye = np.eye(4)
        for mu in range(4):
            for nu in range(4):
                d = self.anticommutator(mu, nu) - 2.0 * self.metric[mu, nu] * eye
                worst = max(worst, float(np.max(np.abs(d))))
        return worst

    def max_real_part(self) -> float:
        """Majorana property: all entries purely imaginary."""
        return max(float(np.max(np.abs(g.real))) for g in self.gammas)


def build_majorana_gammas() -> GammaSet:
    """Standard purely imaginary Majorana representation."""
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    z = np.zeros((2, 2), dtype=complex)

    g0 = np.block([[z, s2], [s2, z]])
    g1 = np.block([[1j * s3, z], [z, 1j * s3]])
    g2 = np.block([[z, -s2], [s2, z]])
    g3 = np.block([[-1j * s1, z], [z, -1j * s1]])
    for g in (g0, g1, g2, g3):
        g.setflags(write=False)
    return GammaSet(gammas=(g0, g1, g2, g3), metric=_METRIC)


@dataclass(frozen=True)
class SpinEigensystem:
    """Eigensystem of M = (gamma.k)(gamma.e_x)/k0 at refractive index n_m.

    eigenvalues = (+lam, +lam, -lam, -lam); eigenvectors[:, s] is u_{s+1},
    so columns 0,1 span the +lam eigenspace and columns 2,3 the -lam one.
    """

    n_m: float
    lam: float
    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def max_eigen_residual(self) -> float:
        r = self.matrix @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.abs(r)))

    def smallest_singular_value(self) -> float:
        return float(np.linalg.svd(self.eigenvectors, compute_uv=False)[-1])


def _orthonormal_columns(P: np.ndarray, count: int) -> np.ndarray:
    """First `count` orthonormal vectors from the columns of P, in order."""
    basis = []
    for j in range(P.shape[1]):
        v = P[:, j].copy()
        for b in basis:
            v -= (b.conj() @ v) * b
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            v /= norm
            jmax = int(np.argmax(np.abs(v)))
            if v[jmax].real < 0:
                v = -v
            basis.append(v)
        if len(basis) == count:
            return np.column_stack(basis)
    raise StructuralError("projector has lower rank than expected")


def spin_interaction_matrix(n_m: float,
                            gammas: GammaSet | None = None) -> SpinEigensystem:
    """Build M = (gamma.k)(gamma.e_x)/k0 and solve its eigenproblem.

    Uses the spectral projectors (M +- lam I)/(+-2 lam): exact within the
    degenerate eigenspaces and deterministic, unlike a general eigensolver's
    arbitrary degenerate basis.
    """
    if not 0.0 < n_m < 1.0:
        raise InputError(f"refractive index must lie in (0, 1), got {n_m}")
    if gammas is None:
        gammas = build_majorana_gammas()
    g0, g1, g2, _ = gammas.gammas
    # gamma.k / k0 = g0 - n_m g2 (lower-index contraction), gamma.e_x = -g1
    M = (g0 - n_m * g2) @ (-g1)
    lam = np.sqrt(1.0 - n_m * n_m)

    plus = _orthonormal_columns(M + lam * np.eye(4), 2)
    minus = _orthonormal_columns(M - lam * np.eye(4), 2)
    eigenvectors = np.column_stack([plus, minus])
    eigenvalues = np.array([lam, lam, -lam, -lam])
    return SpinEigensystem(n_m=n_m, lam=lam, matrix=M,
                           eigenvalues=eigenvalues, eigenvectors=eigenvectors)
