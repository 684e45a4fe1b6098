"""Bilinear audits for a 4-component Majorana field and the seesaw mass block.

A bilinear sum_ab psi_a M_ab psi_b vanishes identically when M is
antisymmetric and the psi_a commute, or when M is symmetric and the psi_a
anticommute. The components are modelled either as commuting polynomial
symbols or as generators of the Grassmann algebra Cl(0,0,4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
import sympy

from .blade import Multivector, Signature, format_multivector
from .dirac4d import C as C4, GAMMA, majorana_from_right
from .matrep import C2

GRASSMANN = Signature(0, 0, 4)
KINDS = ("commuting", "anticommuting")
HIERARCHY_RATIO = 0.1


def _gaussian_integer_parts(a: np.ndarray) -> tuple[list[list[int]], list[list[int]]]:
    re = np.rint(a.real)
    im = np.rint(a.imag)
    if np.abs(a - (re + 1j * im)).max() > 1e-12:
        raise ValueError("matrix entries are not Gaussian integers")
    return re.astype(int).tolist(), im.astype(int).tolist()


def charge_conjugation_inverse() -> np.ndarray:
    """C^-1 = -C for C = 1 (x) c."""
    return -C4.copy()


def _contract(matrix: list[list[int]], kind: str):
    n = len(matrix)
    if kind == "commuting":
        psi = sympy.symbols(f"psi1:{n + 1}")
        return sympy.expand(sum(matrix[a][b] * psi[a] * psi[b] for a in range(n) for b in range(n)))
    if kind == "anticommuting":
        theta = [Multivector.basis(GRASSMANN, a + 1) for a in range(n)]
        total = Multivector.zero(GRASSMANN)
        for a in range(n):
            for b in range(n):
                if matrix[a][b]:
                    total = total + matrix[a][b] * (theta[a] * theta[b])
        return total
    raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def _is_zero(x) -> bool:
    return x == 0 if not isinstance(x, Multivector) else not x


def _fmt(x) -> str:
    return format_multivector(x, name="theta") if isinstance(x, Multivector) else str(x)


@dataclass(frozen=True)
class Bilinear:
    """prefactor * (real + i imag), with real/imag exact symbolic values."""

    kind: str
    real: Any
    imag: Any
    prefactor: str = "1"

    @property
    def is_zero(self) -> bool:
        return _is_zero(self.real) and _is_zero(self.imag)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if _is_zero(self.imag):
            body = _fmt(self.real)
        elif _is_zero(self.real):
            body = f"i*({_fmt(self.imag)})"
        else:
            body = f"{_fmt(self.real)} + i*({_fmt(self.imag)})"
        return body if self.prefactor == "1" else f"{self.prefactor}*({body})"


def bilinear(matrix: np.ndarray, kind: str, prefactor: str = "1") -> Bilinear:
    """sum_ab psi_a M_ab psi_b for a Gaussian-integer matrix M."""
    re, im = _gaussian_integer_parts(np.asarray(matrix))
    return Bilinear(kind, _contract(re, kind), _contract(im, kind), prefactor)


def mass_term(kind: str) -> Bilinear:
    """psi~ psi = i psi C^-1 psi for a Majorana field."""
    return bilinear(charge_conjugation_inverse(), kind, prefactor="i")


def mass_term_chiral_form(kind: str) -> Bilinear:
    """i (psi_R c^-1 psi_R - psi_L c psi_L) with psi = (psi_L, psi_R)."""
    zero = np.zeros((2, 2))
    block = np.block([[-C2.real, zero], [zero, np.linalg.inv(C2.real)]])
    return bilinear(block, kind, prefactor="i")


def u1_current(kind: str, mu: int) -> Bilinear:
    """sum_ab psi_a (C gamma^mu)_ab psi_b."""
    if mu not in range(4):
        raise ValueError(f"mu must be 0..3, got {mu}")
    return bilinear(C4 @ GAMMA[mu], kind)


def matrix_facts() -> dict[str, bool]:
    """C antisymmetric and every C gamma^mu symmetric, checked on integer entries."""
    re, im = _gaussian_integer_parts(C4)
    facts = {"C_antisymmetric": re == (-np.array(re).T).tolist() and not np.any(im)}
    for mu in range(4):
        re, im = _gaussian_integer_parts(C4 @ GAMMA[mu])
        facts[f"C_gamma{mu}_symmetric"] = re == np.array(re).T.tolist() and im == np.array(im).T.tolist()
    return facts


# --------------------------------------------------------------------------
# seesaw


@dataclass(frozen=True)
class SeesawBlock:
    """Mass block [[0, yH], [yH, M]]."""

    yH: float
    M: float

    def __post_init__(self):
        if not (math.isfinite(self.yH) and math.isfinite(self.M)):
            raise ValueError("yH and M must be finite")
        if not self.M > 0:
            raise ValueError(f"M must be positive, got {self.M}")

    @property
    def hierarchical(self) -> bool:
        return abs(self.yH) / self.M < HIERARCHY_RATIO


@dataclass(frozen=True)
class SeesawResult:
    block: SeesawBlock
    eigenvalues: tuple[float, float]  # (lambda+, lambda-)
    m_light: float
    M_heavy: float
    approx_light: float
    approx_heavy: float
    rel_err_light: float
    rel_err_heavy: float

    @property
    def hierarchical(self) -> bool:
        return self.block.hierarchical


def seesaw_masses(block: SeesawBlock) -> SeesawResult:
    """Eigenvalues (M +- sqrt(M^2 + 4 yH^2))/2 of the block.

    The small eigenvalue is taken as -yH^2/lambda+ and lambda+ - M as
    2 yH^2/(sqrt(M^2 + 4 yH^2) + M), avoiding cancellation in both.
    """
    y, M = block.yH, block.M
    root = math.hypot(M, 2 * y)
    shift = 2 * y * y / (root + M)  # lambda+ - M
    lam_plus = M + shift
    m_light = (y * y) / lam_plus
    lam_minus = -m_light if m_light else 0.0
    return SeesawResult(
        block,
        (lam_plus, lam_minus),
        m_light,
        lam_plus,
        y * y / M,
        M,
        shift / M,  # approx/m_light - 1 = lambda+/M - 1
        shift / lam_plus,
    )


def sterile_embedding(R) -> np.ndarray:
    """N = (c conj(R), R): a Majorana spinor built from a right-handed doublet."""
    r = np.asarray(R, dtype=complex)
    if r.shape != (2,):
        raise ValueError("R must have 2 components")
    return majorana_from_right(r)
