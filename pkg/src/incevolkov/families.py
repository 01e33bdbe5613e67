"""Finite solution families of the two modulation equations.

Both wave equations reduce, after the de Broglie Ansatz and the substitution
F = (trig polynomial) * exp[-(a/4) cos xi] with z = xi/2, to a second-order
periodic ODE.  For the spin-1/2 case the ODE is

    f'' + a sin(2z) (f' + i s f) + (eta - q a cos(2z)) f = 0,   s = +1 or -1,

and for the spin-0 case it is the classical Ince equation

    w'' + a sin(2z) w' + (eta - q a cos(2z)) w = 0.

Finite (polynomial) solutions exist only when q is an integer matched to the
truncation window of the trigonometric basis; the window and q are listed
per family below.  Each family at quantum number n yields a finite
tridiagonal eigenproblem whose eigenvalues eta quantize the longitudinal
momentum parameter, while q fixes the transverse momentum px = (q+1)/2 in
units of the plasma wavenumber k_p.

Family table (n >= 1):

    kind          q       basis in xi           window          dim   px/k_p
    ------------  ------  --------------------  --------------  ----  ------
    dirac-plus    2n - 1  exp(-i r xi)          r = -n+1 .. n   2n    n
    dirac-minus   2n - 1  exp(-i r xi)          r = -n .. n-1   2n    n
    kg-cos-even   2n      cos(r xi)             r = 0 .. n      n+1   n + 1/2
    kg-cos-odd    2n - 1  cos((r+1/2) xi)       r = 0 .. n-1    n     n
    kg-sin-odd    2n - 1  sin((r+1/2) xi)       r = 0 .. n-1    n     n
    kg-sin-even   2n      sin(r xi)             r = 1 .. n      n     n + 1/2

The dirac-minus family solves the s = -1 equation; its window is the mirror
image of the dirac-plus window (complex conjugation plus z -> -z maps one
family onto the other at equal eta).  The four spin-0 families are the four
classical Ince polynomial classes; the two odd classes use half-integer
harmonics of xi and are therefore 2*pi-antiperiodic in xi (period 4*pi),
while their densities |w|^2 remain 2*pi-periodic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InputError


class FamilyKind(str, Enum):
    DIRAC_PLUS = "dirac-plus"
    DIRAC_MINUS = "dirac-minus"
    KG_COS_EVEN = "kg-cos-even"
    KG_COS_ODD = "kg-cos-odd"
    KG_SIN_ODD = "kg-sin-odd"
    KG_SIN_EVEN = "kg-sin-even"


_DIRAC_KINDS = (FamilyKind.DIRAC_PLUS, FamilyKind.DIRAC_MINUS)
_ODD_KINDS = (FamilyKind.KG_COS_ODD, FamilyKind.KG_SIN_ODD)

# accepted spellings on the CLI / in config files
FAMILY_ALIASES = {
    "dirac": FamilyKind.DIRAC_PLUS,
    "dirac+": FamilyKind.DIRAC_PLUS,
    "dirac-": FamilyKind.DIRAC_MINUS,
    **{k.value: k for k in FamilyKind},
}


def parse_family_kind(name: str) -> FamilyKind:
    try:
        return FAMILY_ALIASES[name.strip().lower()]
    except KeyError:
        valid = ", ".join(sorted(FAMILY_ALIASES))
        raise InputError(f"unknown family {name!r}; valid: {valid}") from None


@dataclass(frozen=True)
class SolutionFamily:
    """One finite solution family at fixed quantum number n."""

    kind: FamilyKind
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"quantum number n must be >= 1, got {self.n}")

    @property
    def is_dirac(self) -> bool:
        return self.kind in _DIRAC_KINDS

    @property
    def spin_sign(self) -> int:
        """Sign s of the i*s*f term: +1, -1, or 0 for the spin-0 families."""
        if self.kind is FamilyKind.DIRAC_PLUS:
            return +1
        if self.kind is FamilyKind.DIRAC_MINUS:
            return -1
        return 0

    @property
    def q(self) -> int:
        """Integer parameter of the modulation ODE (truncation condition)."""
        if self.kind in (FamilyKind.KG_COS_EVEN, FamilyKind.KG_SIN_EVEN):
            return 2 * self.n
        return 2 * self.n - 1

    @property
    def dim(self) -> int:
        if self.is_dirac:
            return 2 * self.n
        if self.kind is FamilyKind.KG_COS_EVEN:
            return self.n + 1
        return self.n

    @property
    def r_indices(self) -> np.ndarray:
        """Integer basis window (Fourier index for dirac kinds, harmonic
        counter for the spin-0 kinds)."""
        n = self.n
        if self.kind is FamilyKind.DIRAC_PLUS:
            return np.arange(-n + 1, n + 1)
        if self.kind is FamilyKind.DIRAC_MINUS:
            return np.arange(-n, n)
        if self.kind is FamilyKind.KG_COS_EVEN:
            return np.arange(0, n + 1)
        if self.kind is FamilyKind.KG_SIN_EVEN:
            return np.arange(1, n + 1)
        return np.arange(0, n)          # odd classes

    @property
    def xi_harmonics(self) -> np.ndarray:
        """Harmonic of xi carried by each basis function (half-integers for
        the odd spin-0 classes)."""
        r = self.r_indices
        if self.kind in _ODD_KINDS:
            return r + 0.5
        return r.astype(float)

    @property
    def px_over_kp(self) -> float:
        """Quantized transverse momentum (q+1)/2 in units of hbar*k_p."""
        return 0.5 * (self.q + 1)

    @property
    def xi_period(self) -> float:
        """Period of the modulation function in xi (4*pi for the
        antiperiodic half-integer-harmonic classes)."""
        return 4.0 * np.pi if self.kind in _ODD_KINDS else 2.0 * np.pi

    @property
    def basis_label(self) -> str:
        r0, r1 = self.r_indices[0], self.r_indices[-1]
        if self.is_dirac:
            return f"exp(-i r xi), r = {r0}..{r1}"
        fn = "cos" if "cos" in self.kind.value else "sin"
        if self.kind in _ODD_KINDS:
            return f"{fn}((r+1/2) xi), r = {r0}..{r1}"
        return f"{fn}(r xi), r = {r0}..{r1}"

    def describe(self) -> str:
        return (f"{self.kind.value}(n={self.n}): q={self.q}, dim={self.dim}, "
                f"basis {self.basis_label}, px = {self.px_over_kp} k_p")


ALL_KINDS = tuple(FamilyKind)
