"""Reflections, the twisted adjoint action and Pin/Spin membership.

For an invertible x the twisted adjoint is ``rho_x(v) = alpha(x) v x^-1``.
x belongs to the Lipschitz group when rho_x maps every vector to a vector;
its image is then an orthogonal matrix for the form eta. Pin elements have
N(x) = +-1, Spin elements are additionally even.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _exact
from .blade import (
    Multivector,
    NotInvertibleError,
    Signature,
    commutator,
    conjugation,
    coxeter_element,
    grade_involution,
    grade_of,
    inverse,
    norm,
    quadratic_form,
)
from ._config import numeric_tol

# grade-1 test on numeric images; looser than the equality tolerance so the
# membership predicate does not flap on rounding noise
MEMBERSHIP_TOL = 1e-10
# numeric residuals between MEMBERSHIP_TOL and this are flagged as borderline
BORDERLINE_TOL = 1e-6


@dataclass(frozen=True)
class OrthogonalImage:
    """Matrix L with L^T eta L = eta; column i is the image of the i-th basis vector."""

    matrix: tuple[tuple, ...]
    eta: tuple[int, ...]
    det: object

    def as_array(self) -> np.ndarray:
        return np.array([[complex(v) for v in row] for row in self.matrix]).real

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for row in self.matrix for v in row)

    def preserves_form(self, tol: float | None = None) -> bool:
        n = len(self.eta)
        if self.is_exact:
            for i in range(n):
                for j in range(n):
                    s = sum(self.matrix[k][i] * self.eta[k] * self.matrix[k][j] for k in range(n))
                    if s != (self.eta[i] if i == j else 0):
                        return False
            return True
        L = self.as_array()
        eta = np.diag(self.eta)
        return np.abs(L.T @ eta @ L - eta).max() <= (numeric_tol() if tol is None else tol)


def _image_from_columns(columns: Sequence[Sequence], eta: Sequence[int]) -> OrthogonalImage:
    n = len(columns)
    rows = tuple(tuple(columns[j][i] for j in range(n)) for i in range(n))
    exact = all(isinstance(v, (int, Fraction)) for row in rows for v in row)
    if exact:
        d = _exact.det(rows)
        d = int(d) if d.denominator == 1 else d
    else:
        d = float(np.linalg.det(np.array([[complex(v) for v in r] for r in rows]).real))
    return OrthogonalImage(rows, tuple(eta), d)


@dataclass
class GroupVerdict:
    in_lipschitz: bool
    norm_value: object
    parity: str
    membership: str  # "Pin", "Spin", "Lipschitz-only" or "none"
    diagnostics: list[str] = field(default_factory=list)
    borderline: bool = False


def _check_vector(v: Multivector):
    if not v.is_vector(tol=MEMBERSHIP_TOL):
        raise ValueError(f"expected a grade-1 element, got {v}")


def reflect(u: Multivector, v: Multivector) -> Multivector:
    """Reflection of v in the hyperplane orthogonal to u: -u v u^-1."""
    _check_vector(u)
    _check_vector(v)
    if u.sig != v.sig:
        raise ValueError("u and v live in different algebras")
    qu = quadratic_form(u)
    if qu == 0 or (not u.is_exact and abs(qu) <= numeric_tol()):
        raise NotInvertibleError(f"null vector {u} has no inverse")
    return -(u * v * u) / qu


def twisted_adjoint(x: Multivector, v: Multivector) -> Multivector:
    """rho_x(v) = alpha(x) v x^-1.

    The result is returned as is; it is grade-1 exactly when x acts like an
    element of the Lipschitz group on v.
    """
    return grade_involution(x) * v * inverse(x)


def _non_vector_residual(m: Multivector) -> float:
    return max((abs(c) for mask, c in m.terms.items() if grade_of(mask) != 1), default=0.0)


def group_membership(x: Multivector, tol: float | None = None) -> tuple[GroupVerdict, OrthogonalImage | None]:
    """Decide Lipschitz / Pin / Spin membership by applying rho_x to each e_i."""
    sig = x.sig
    parity = x.parity()
    exact = x.is_exact
    tol_vec = MEMBERSHIP_TOL if tol is None else tol
    try:
        xinv = inverse(x)
    except NotInvertibleError as err:
        return GroupVerdict(False, None, parity, "none", [f"not invertible: {err}"]), None

    ax = grade_involution(x)
    columns = []
    diags: list[str] = []
    borderline = False
    for i in range(1, sig.n + 1):
        img = ax * Multivector.basis(sig, i) * xinv
        if exact:
            bad = img - img.grade(1)
            if bad:
                diags.append(f"rho(e{i}) has non-vector part {bad}")
        else:
            resid = _non_vector_residual(img)
            if resid > tol_vec:
                diags.append(f"rho(e{i}) has non-vector part of size {resid:.3g}")
                borderline = borderline or resid <= BORDERLINE_TOL
        columns.append(img.vector_coords())

    n_x = norm(x)
    if exact:
        norm_scalar = n_x.is_scalar(tol=0.0)
    else:
        norm_scalar = n_x.is_scalar(tol=tol_vec)
    norm_value = n_x.scalar_part() if norm_scalar else None
    if diags:
        return GroupVerdict(False, norm_value, parity, "none", diags, borderline), None

    if not norm_scalar:
        diags.append(f"N(x) = {n_x} is not a scalar")
        return GroupVerdict(False, None, parity, "none", diags), None

    image = _image_from_columns(columns, sig.metric())
    if not image.preserves_form(None if exact else tol_vec):
        diags.append("image does not preserve the quadratic form")
        return GroupVerdict(False, norm_value, parity, "none", diags), None

    if exact:
        unit = norm_value in (1, -1)
    else:
        unit = abs(abs(norm_value) - 1) <= tol_vec
    if unit:
        membership = "Spin" if parity == "even" else "Pin"
    else:
        membership = "Lipschitz-only"
    return GroupVerdict(True, norm_value, parity, membership, diags), image


# --------------------------------------------------------------------------
# rotors


def rotor_from_axis_angle(axis: Sequence[float], theta: float) -> tuple[Multivector, OrthogonalImage]:
    """Spin(3) element cos(theta/2) - omega (n.sigma) sin(theta/2) and its SO(3) image.

    The image is the right-handed rotation by ``theta`` about the unit ``axis``.
    """
    axis = [float(a) for a in axis]
    if len(axis) != 3:
        raise ValueError("axis must have three components")
    if abs(math.sqrt(sum(a * a for a in axis)) - 1.0) > 1e-9:
        raise ValueError(f"axis {axis} is not a unit vector")
    sig = Signature(3, 0)
    omega = coxeter_element(sig)
    n_sigma = Multivector.vector(sig, axis)
    rotor = math.cos(theta / 2) - (omega * n_sigma) * math.sin(theta / 2)
    verdict, image = group_membership(rotor)
    if image is None:
        raise ArithmeticError(f"rotor failed membership: {verdict.diagnostics}")
    return rotor, image


def rotor_exp(bivector: Multivector, max_terms: int = 200) -> Multivector:
    """exp of a bivector by scaling and squaring the power series (numeric)."""
    others = [mask for mask in bivector.terms if grade_of(mask) != 2]
    if others:
        raise ValueError(f"rotor_exp expects a pure bivector, got {bivector}")
    b = bivector.to_numeric()
    size = sum(abs(c) for c in b.terms.values())
    squarings = max(0, math.ceil(math.log2(size / 0.5))) if size > 0 else 0
    a = b / (2.0 ** squarings)
    result = Multivector.scalar(b.sig, 1.0)
    term = Multivector.scalar(b.sig, 1.0)
    for k in range(1, max_terms + 1):
        term = (term * a) / k
        result = result + term
        if term.max_abs() < 1e-17:
            break
    else:
        raise ArithmeticError(f"exp series did not converge within {max_terms} terms")
    for _ in range(squarings):
        result = result * result
    return result


# --------------------------------------------------------------------------
# Cl(3,1): gamma_0 is e4 (square -1), gamma_j is e_j


SPACETIME = Signature(3, 1)
_SPACETIME_GEN = {0: 4, 1: 1, 2: 2, 3: 3}


def gamma_lower(mu: int) -> Multivector:
    """gamma_mu in Cl(3,1) with eta = diag(-1, 1, 1, 1)."""
    return Multivector.basis(SPACETIME, _SPACETIME_GEN[mu])


def gamma_upper(mu: int) -> Multivector:
    """gamma^mu = eta^{mu mu} gamma_mu."""
    g = gamma_lower(mu)
    return -g if mu == 0 else g


def spacetime_omega() -> Multivector:
    """omega = gamma_0 gamma_1 gamma_2 gamma_3."""
    return gamma_lower(0) * gamma_lower(1) * gamma_lower(2) * gamma_lower(3)


def vector_rep_of_pin31(lam: Multivector) -> OrthogonalImage:
    """L(Lambda) in O(3,1) defined by Lambda (gamma p) Lambda^-1 = gamma (L p).

    Uses the ordinary adjoint, which equals the twisted one up to the sign
    (-1)^parity. Rows/columns are ordered (x^0, x^1, x^2, x^3).
    """
    if lam.sig != SPACETIME:
        raise ValueError(f"expected an element of Cl(3,1), got {lam.sig}")
    verdict, image = group_membership(lam)
    if verdict.membership not in ("Pin", "Spin"):
        raise ValueError(f"{lam} is not in Pin(3,1): {verdict.membership} {verdict.diagnostics}")
    sign = -1 if verdict.parity == "odd" else 1
    order = [_SPACETIME_GEN[mu] - 1 for mu in range(4)]
    cols = [[sign * image.matrix[order[i]][order[j]] for i in range(4)] for j in range(4)]
    return _image_from_columns(cols, (-1, 1, 1, 1))


def even_complex_split(z: Multivector) -> tuple[list[tuple], Multivector]:
    """Write an even z in Cl(3,1) as z^0 + z^j gamma_0j with z^mu = x^mu + omega y^mu.

    Returns ``([(x0, y0), (x1, y1), (x2, y2), (x3, y3)], reassembled)``.
    """
    if z.sig != SPACETIME:
        raise ValueError("expected an element of Cl(3,1)")
    if z.parity() not in ("even", "zero"):
        raise ValueError(f"{z} is not even")
    omega = spacetime_omega()
    g0 = gamma_lower(0)
    basis = [Multivector.scalar(SPACETIME, 1)] + [g0 * gamma_lower(j) for j in (1, 2, 3)]
    parts = []
    for b in basis:
        # b and omega*b are signed blades; read off coefficients
        (mb, sb), = b.terms.items()
        (mw, sw), = (omega * b).terms.items()
        parts.append((_div(z.coefficient(mb), sb), _div(z.coefficient(mw), sw)))
    rebuilt = Multivector.zero(SPACETIME)
    for (x, y), b in zip(parts, basis):
        rebuilt = rebuilt + (x + omega * y) * b
    return parts, rebuilt


def _div(a, b):
    return a * b if b in (1, -1) else a / b


# --------------------------------------------------------------------------
# Lie algebra spans


@dataclass
class LieAudit:
    which: str
    sig: Signature
    dimension: int
    expected_dimension: int
    closed: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.closed and self.dimension == self.expected_dimension and not self.failures


def _coeff_row(x: Multivector) -> list:
    return [x.coefficient(m) for m in range(x.sig.dim)]


def _half_commutator(a, b):
    return commutator(a, b) / 2


def lie_algebra_audit(sig: Signature, which: str) -> LieAudit:
    """Span dimension and commutator closure of a Lie algebra inside Cl(p, q).

    ``spin``: {1/2 [e_i, e_j]}, dimension n(n-1)/2, any signature.
    ``u22``: {gamma_a, gamma_ab, omega} in Cl(4,1), dimension 16, all
    pseudo-antihermitean (x-dagger = -x).
    ``sp4``: {gamma_mu, gamma_mu nu} in Cl(3,1), dimension 10.
    """
    n = sig.n
    gens = [Multivector.basis(sig, i) for i in range(1, n + 1)]
    bivectors = [_half_commutator(gens[i], gens[j]) for i in range(n) for j in range(i + 1, n)]
    failures: list[str] = []
    if which == "spin":
        elements = bivectors
        expected = n * (n - 1) // 2
    elif which == "u22":
        if (sig.p, sig.q, sig.r) != (4, 1, 0):
            raise ValueError("u22 audit needs Cl(4,1)")
        elements = gens + bivectors + [coxeter_element(sig)]
        expected = 16
        for x in elements:
            if conjugation(x) != -x:
                failures.append(f"{x} is not pseudo-antihermitean")
        # independent count: blades with x-dagger = -x
        antiherm = sum(1 for m in range(sig.dim) if (grade_of(m) * (grade_of(m) + 1) // 2) & 1)
        if antiherm != expected:
            failures.append(f"pseudo-antihermitean subspace has dimension {antiherm}")
    elif which == "sp4":
        if (sig.p, sig.q, sig.r) != (3, 1, 0):
            raise ValueError("sp4 audit needs Cl(3,1)")
        elements = gens + bivectors
        expected = 10
    else:
        raise ValueError(f"unknown Lie algebra {which!r}; use spin, u22 or sp4")

    span = _exact.Span(_coeff_row(x) for x in elements)
    closed = True
    for i, a in enumerate(elements):
        for b in elements[i + 1:]:
            c = commutator(a, b)
            if _coeff_row(c) not in span:
                closed = False
                failures.append(f"[{a}, {b}] = {c} leaves the span")
    return LieAudit(which, sig, span.dim, expected, closed, failures)
