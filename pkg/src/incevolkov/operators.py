"""Finite tridiagonal operators for the modulation equations.

Projecting the spin-1/2 modulation equation

    f'' + a sin(2z) (f' + i s f) + (eta - q a cos(2z)) f = 0

onto the Fourier basis f = sum_r D_r exp(-2 i r z) turns it into the
three-term recurrence  eta D_m = T[m,m] D_m + T[m,m+1] D_{m+1}
+ T[m,m-1] D_{m-1}  with

    T[m,m]   = 4 m^2
    T[m,m+1] = (a/2) (q + 2m + 2 - s)
    T[m,m-1] = (a/2) (q + 2 - 2m + s)        (s = +1 or -1).

The coupling from the row just above the window top r1 into the window,
T[r1+1, r1] = (a/2)(q - 2 r1 + s), and from the row just below the bottom
r0, T[r0-1, r0] = (a/2)(q + 2 r0 - s), vanish identically when q = 2n - 1
and the window is r = -n+1..n (s = +1) or r = -n..n-1 (s = -1).  That is
the closure that truncates the infinite recurrence to a finite eigenproblem.

For the spin-0 equation (s term absent) the same projection onto the four
trigonometric parity bases in z gives, writing nu for the z-frequency of a
basis function (nu = 2r for integer harmonics of xi, nu = 2r + 1 for
half-integer ones):

    T[r,r]   = nu^2
    T[r,r+1] = (a/2) (q + nu + 2)
    T[r,r-1] = (a/2) (q + 2 - nu)

with three boundary amendments forced by cos(-x) = cos(x), sin(-x) = -sin(x):

    kg-cos-even : T[1,0] = q a              (constant mode couples doubly)
    kg-cos-odd  : T[0,0] = 1 + (a/2)(q+1)   (r=0 lowering folds onto itself)
    kg-sin-odd  : T[0,0] = 1 - (a/2)(q+1)   (same fold, odd parity sign)
    kg-sin-even : no amendment              (no r=0 basis function)

Upper closure T[N+1, N] = (a/2)(q - nu(N)) = 0 fixes q = 2n (even classes,
window top nu = 2n) and q = 2n - 1 (odd classes, window top nu = 2n - 1).

Every recurrence above is validated against the original ODE by the residual
oracle in the verification module; the oracle, not the algebra, is the
ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .families import FamilyKind, SolutionFamily

__all__ = [
    "TridiagonalOperator",
    "build_operator",
    "build_dirac_operator",
    "build_kg_operator",
    "boundary_couplings",
    "build_extended_operator",
]


@dataclass(frozen=True)
class TridiagonalOperator:
    """Real tridiagonal matrix T of one solution family at coupling a.

    The eigenproblem is eta * v = T @ v.  `super_` holds T[i, i+1] and
    `sub` holds T[i+1, i], both of length dim - 1, so super_[i] * sub[i]
    is the product across one bond.
    """

    family: SolutionFamily
    a: float
    diag: np.ndarray
    super_: np.ndarray
    sub: np.ndarray

    def __post_init__(self):
        for arr in (self.diag, self.super_, self.sub):
            arr.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        T = np.diag(self.diag.copy())
        if self.dim > 1:
            T += np.diag(self.super_, 1) + np.diag(self.sub, -1)
        return T


def _dirac_entries(q: int, s: int, a: float):
    diag = lambda m: 4.0 * m * m
    sup = lambda m: 0.5 * a * (q + 2 * m + 2 - s)    # T[m, m+1]
    sub = lambda m: 0.5 * a * (q + 2 - 2 * m + s)    # T[m, m-1]
    return diag, sup, sub


def _kg_entries(kind: FamilyKind, q: int, a: float):
    odd = kind in (FamilyKind.KG_COS_ODD, FamilyKind.KG_SIN_ODD)
    nu = (lambda r: 2 * r + 1) if odd else (lambda r: 2 * r)

    def diag(r):
        d = float(nu(r)) ** 2
        if r == 0 and kind is FamilyKind.KG_COS_ODD:
            d += 0.5 * a * (q + 1)
        elif r == 0 and kind is FamilyKind.KG_SIN_ODD:
            d -= 0.5 * a * (q + 1)
        return d

    def sup(r):
        return 0.5 * a * (q + nu(r) + 2)

    def sub(r):
        if r == 1 and kind is FamilyKind.KG_COS_EVEN:
            return a * q
        return 0.5 * a * (q + 2 - nu(r))

    return diag, sup, sub


def _entry_functions(family: SolutionFamily, a: float):
    if family.is_dirac:
        return _dirac_entries(family.q, family.spin_sign, a)
    return _kg_entries(family.kind, family.q, a)


def build_operator(family: SolutionFamily, a: float) -> TridiagonalOperator:
    """Build the finite operator of `family` at coupling a >= 0."""
    if a < 0:
        raise InputError(f"coupling parameter a must be >= 0, got {a}")
    diag_f, sup_f, sub_f = _entry_functions(family, a)
    rs = family.r_indices
    diag = np.array([diag_f(r) for r in rs], dtype=float)
    super_ = np.array([sup_f(r) for r in rs[:-1]], dtype=float)
    sub = np.array([sub_f(r) for r in rs[1:]], dtype=float)
    return TridiagonalOperator(family=family, a=float(a), diag=diag,
                               super_=super_, sub=sub)


def build_dirac_operator(n: int, a: float, sign: int = +1) -> TridiagonalOperator:
    """Spin-1/2 operator; sign = +1 is the +i f branch, -1 the -i f branch."""
    if sign not in (+1, -1):
        raise InputError("sign must be +1 or -1")
    kind = FamilyKind.DIRAC_PLUS if sign > 0 else FamilyKind.DIRAC_MINUS
    return build_operator(SolutionFamily(kind, n), a)


def build_kg_operator(kind: FamilyKind | str, n: int, a: float) -> TridiagonalOperator:
    if isinstance(kind, str):
        kind = FamilyKind(kind)
    if kind in (FamilyKind.DIRAC_PLUS, FamilyKind.DIRAC_MINUS):
        raise InputError(f"{kind.value} is not a spin-0 family")
    return build_operator(SolutionFamily(kind, n), a)


def boundary_couplings(family: SolutionFamily, a: float) -> dict:
    """Couplings from the first rows outside the window back into it.

    These must vanish identically; a nonzero value means the window/q
    combination does not truncate the recurrence.
    """
    diag_f, sup_f, sub_f = _entry_functions(family, a)
    rs = family.r_indices
    out = {"above": sub_f(rs[-1] + 1)}
    if family.is_dirac:
        out["below"] = sup_f(rs[0] - 1)
    # spin-0 windows terminate below through the basis itself (folding at
    # r = 0, or sin(0) = 0), not through a vanishing coupling
    return out


def build_extended_operator(family: SolutionFamily, a: float, extra: int = 3):
    """Rebuild the operator on a window extended by `extra` indices.

    Returns (T_ext, window_slice) where window_slice selects the original
    rows inside the extended matrix.  Used by the closure test: the rows
    added above (and below, for the dirac kinds) must not couple back into
    the original window.
    """
    if extra < 1:
        raise InputError("extra must be >= 1")
    diag_f, sup_f, sub_f = _entry_functions(family, a)
    rs = family.r_indices
    lo = rs[0] - extra if family.is_dirac else rs[0]
    hi = rs[-1] + extra
    rs_ext = np.arange(lo, hi + 1)
    dim = len(rs_ext)
    T = np.zeros((dim, dim))
    for i, r in enumerate(rs_ext):
        T[i, i] = diag_f(r)
        if i + 1 < dim:
            T[i, i + 1] = sup_f(r)
            T[i + 1, i] = sub_f(r + 1)
    i0 = int(np.searchsorted(rs_ext, rs[0]))
    return T, slice(i0, i0 + family.dim)
