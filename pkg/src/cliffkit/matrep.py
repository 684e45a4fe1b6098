"""Gamma-matrix representations built from tensor products of Pauli matrices.

Generators of Cl(2m+2) are ``sigma1 (x) g`` for the 2m generators and the
chirality of Cl(2m), plus ``sigma2 (x) 1``; the new chirality is
``sigma3 (x) 1``. Odd D = 2m+1 appends the chirality of Cl(2m) as the last
generator. The Lorentzian algebra Cl(D-1, 1) uses ``gamma^0 = i gamma_{2m}``
in place of gamma_{2m} and lists it first.

Charge conjugation matrices satisfy ``-gamma^t C = C gamma``; together
with the chirality they fix the two KO signs (J^2, epsilon).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Sequence

import numpy as np

from .blade import Multivector, blade_indices

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA = (SIGMA1, SIGMA2, SIGMA3)
C2 = 1j * SIGMA2  # c = [[0, 1], [-1, 0]]

MATRIX_TOL = 1e-13
MAX_D = 11


class NoIrreducibleSolution(ValueError):
    """No charge conjugation matrix exists in the irreducible representation."""


def kron(*factors: np.ndarray) -> np.ndarray:
    return reduce(np.kron, factors)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _even_generators(m: int) -> tuple[list[np.ndarray], np.ndarray]:
    """Euclidean generators gamma_1..gamma_2m of Cl(2m) and the chirality gamma_{2m+1}."""
    if m == 0:
        return [], np.eye(1, dtype=complex)
    prev, chi = _even_generators(m - 1)
    one = np.eye(1 << (m - 1), dtype=complex)
    gens = [np.kron(SIGMA1, g) for g in prev + [chi]] + [np.kron(SIGMA2, one)]
    return gens, np.kron(SIGMA3, one)


def euclidean_generators(D: int) -> list[np.ndarray]:
    """gamma_1 .. gamma_D for Cl(D), each of size 2^floor(D/2)."""
    _check_dimension(D)
    m = D // 2
    gens, chi = _even_generators(m)
    return gens + [chi] if D % 2 else gens


def _check_dimension(D: int, lo: int = 1, hi: int = MAX_D):
    if not isinstance(D, (int, np.integer)) or not lo <= D <= hi:
        raise ValueError(f"dimension D={D!r} outside {lo}..{hi}")


@dataclass(frozen=True)
class MatrixRep:
    """Generators ``gammas`` with {gamma_a, gamma_b} = 2 eta_ab.

    For Lorentzian reps ``gammas[0]`` is gamma^0 (square -1) and ``eta`` is
    diag(-1, 1, ..., 1). ``chirality`` is None for odd D; ``C`` is None when
    no charge conjugation exists in this (irreducible) representation.
    """

    D: int
    lorentzian: bool
    gammas: tuple[np.ndarray, ...]
    eta: tuple[int, ...]
    chirality: np.ndarray | None
    C: np.ndarray | None
    B: np.ndarray | None
    beta: np.ndarray | None

    @property
    def size(self) -> int:
        return self.gammas[0].shape[0]

    def clifford_defect(self) -> float:
        """max |gamma_a gamma_b + gamma_b gamma_a - 2 eta_ab|."""
        one = np.eye(self.size)
        worst = 0.0
        for a, ga in enumerate(self.gammas):
            for b, gb in enumerate(self.gammas):
                target = 2 * self.eta[a] * one if a == b else 0
                worst = max(worst, float(np.abs(ga @ gb + gb @ ga - target).max()))
        return worst


def gamma_matrices(D: int, lorentzian: bool = False) -> MatrixRep:
    """Pauli tensor-product representation of Cl(D) or Cl(D-1, 1)."""
    _check_dimension(D)
    m = D // 2
    gens, chi = _even_generators(m)
    if D % 2:
        gens = gens + [chi]
    chirality = None if D % 2 else chi
    if lorentzian:
        # gamma^0 = i gamma_{2m} replaces gamma_{2m}; for D = 1 it replaces gamma_1
        k = 2 * m - 1 if m > 0 else 0
        g0 = 1j * gens[k]
        gens = [g0] + gens[:k] + gens[k + 1:]
        eta = (-1,) + (1,) * (D - 1)
    else:
        eta = (1,) * D
    if D % 2 == 0:
        C = _charge_conjugation_even(D)
    else:
        C = _solve_charge_conjugation([np.asarray(g) for g in gens])
    B = beta = None
    if lorentzian:
        beta = 1j * gens[0]
        if C is not None:
            B = gens[0] @ C
    return MatrixRep(
        D=D,
        lorentzian=lorentzian,
        gammas=tuple(_frozen(g) for g in gens),
        eta=eta,
        chirality=None if chirality is None else _frozen(chirality),
        C=None if C is None else _frozen(C),
        B=None if B is None else _frozen(B),
        beta=None if beta is None else _frozen(beta),
    )


# --------------------------------------------------------------------------
# charge conjugation

# C(2m) as products of Cl(2m-1, 1) units; 0 stands for Gamma^0 = i Gamma_{2m}
CHARGE_CONJUGATION_PRODUCTS = {
    2: (0,),
    4: (3, 1),
    6: (0, 2, 4),
    8: (1, 3, 5, 7),
    10: (0, 2, 4, 6, 8),
}


def charge_conjugation_tensor_form(D: int) -> np.ndarray:
    """Closed tensor-product form of C(D) for even D: c, 1(x)c, c(x)s3(x)c, ..."""
    forms = {
        2: (C2,),
        4: (SIGMA0, C2),
        6: (C2, SIGMA3, C2),
        8: (SIGMA0, C2, SIGMA3, C2),
        10: (C2, SIGMA3, C2, SIGMA3, C2),
    }
    if D not in forms:
        raise ValueError(f"tensor form known for D in {sorted(forms)}, got {D}")
    return kron(*forms[D])


def _charge_conjugation_even(D: int) -> np.ndarray:
    m = D // 2
    gens, _ = _even_generators(m)

    def unit(a):
        return 1j * gens[2 * m - 1] if a == 0 else gens[a - 1]

    return reduce(np.matmul, [unit(a) for a in CHARGE_CONJUGATION_PRODUCTS[D]])


def coxeter_matrix(gens: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.matmul, gens)


def charge_conjugation(D: int, primed: bool = False, irreducible: bool = False) -> np.ndarray:
    """Charge conjugation matrix with -gamma_a^t C = C gamma_a.

    Even D: the explicit generator product C(D). Odd D = 2m-1: the algebra is
    embedded reducibly in Cl(2m) (generators gamma_1..gamma_{2m-1} of Cl(2m)),
    where C(2m-1) = C(2m) and the second solution is
    C' = i^{5-m} omega_{2m-1} C(2m). With ``irreducible=True`` the odd case is
    solved in the irreducible rep instead, raising
    :class:`NoIrreducibleSolution` when there is none.
    """
    _check_dimension(D, 2, 10)
    if D % 2 == 0:
        if primed:
            raise ValueError("the primed solution exists only for odd D")
        return _charge_conjugation_even(D)
    if irreducible:
        if primed:
            raise ValueError("the primed solution is defined on the reducible embedding")
        C = _solve_charge_conjugation(euclidean_generators(D))
        if C is None:
            raise NoIrreducibleSolution(
                f"no charge conjugation in the irreducible rep of Cl({D}); "
                f"use the reducible embedding in Cl({D + 1})"
            )
        return C
    m = (D + 1) // 2
    C = _charge_conjugation_even(2 * m)
    if not primed:
        return C
    gens, _ = _even_generators(m)
    omega = coxeter_matrix(gens[: 2 * m - 1])
    return (1j ** (5 - m)) * omega @ C


def primed_relation_sign(D: int) -> int:
    """The s with conj(C') C' = s conj(C) C on the reducible embedding of odd D.

    For real C and k = 2m-1 hermitean units, s = (-1)^k (-1)^{k(k-1)/2}
    = (-1)^m: the sign flips for D = 5, 9 but not for D = 3, 7.
    """
    if D % 2 == 0:
        raise ValueError("the primed solution exists only for odd D")
    C = charge_conjugation(D)
    Cp = charge_conjugation(D, primed=True)
    return _sign_of_multiple(Cp.conj() @ Cp, C.conj() @ C, "primed relation")


def reducible_odd_generators(D: int) -> list[np.ndarray]:
    """gamma_1..gamma_D of Cl(D+1): the reducible embedding used for odd D."""
    if D % 2 == 0:
        raise ValueError("reducible embedding is for odd D")
    gens, _ = _even_generators((D + 1) // 2)
    return gens[:D]


def _blade_products(gens: Sequence[np.ndarray]) -> np.ndarray:
    """Stack of all ordered products gamma_A, A running over bitmasks."""
    n = gens[0].shape[0]
    out = [np.eye(n, dtype=complex)]
    for g in gens:
        out += [x @ g for x in out]
    return np.array(out)


def _solve_charge_conjugation(gens: Sequence[np.ndarray]) -> np.ndarray | None:
    """An X with -g^t X = X g for every generator g, or None.

    X is the group average of g' Y g^-1 (g' the image of g under
    gamma -> -gamma^t) over the finite group of blade products. In an odd
    irreducible rep omega is a scalar and a solution exists only if omega and
    its image agree.
    """
    gens = [np.asarray(g, dtype=complex) for g in gens]
    n = gens[0].shape[0]
    if len(gens) % 2:
        omega = coxeter_matrix(gens)
        image = coxeter_matrix([-g.T for g in gens])
        if abs(omega[0, 0] - image[0, 0]) > 1e-9:
            return None
    P = _blade_products([-g.T for g in gens])
    Q = np.linalg.inv(_blade_products(gens))
    for i in range(n):
        for j in range(n):
            X = np.einsum("ak,al->kl", P[:, :, i], Q[:, j, :])
            k = np.argmax(np.abs(X))
            if abs(X.flat[k]) > 1e-9:
                X = X / X.flat[k]
                return np.where(np.abs(X) < 1e-14, 0, X)
    return None


def intertwining_defect(gens: Sequence[np.ndarray], C: np.ndarray) -> dict[str, float]:
    """Worst violation of the sign laws for gamma_a, gamma_ab and gamma_abc.

    Expected: -g_a^t C = C g_a, -g_ab^t C = C g_ab, +g_abc^t C = C g_abc.
    """
    k = len(gens)
    worst = {"vector": 0.0, "bivector": 0.0, "trivector": 0.0}

    def err(x, sign):
        return float(np.abs(sign * x.T @ C - C @ x).max())

    for a in range(k):
        worst["vector"] = max(worst["vector"], err(gens[a], -1))
        for b in range(a + 1, k):
            gab = 0.5 * (gens[a] @ gens[b] - gens[b] @ gens[a])
            worst["bivector"] = max(worst["bivector"], err(gab, -1))
            for c in range(b + 1, k):
                gabc = gens[a] @ gens[b] @ gens[c]  # distinct anticommuting units
                worst["trivector"] = max(worst["trivector"], err(gabc, +1))
    return worst


# --------------------------------------------------------------------------
# KO dimension

KO_TABLE = {(1, 1): 0, (-1, -1): 2, (-1, 1): 4, (1, -1): 6}


def j_squared_formula(m: int, lorentzian: bool = False) -> int:
    s = -1 if (m * (m + 1) // 2) % 2 else 1
    return -s if lorentzian else s


def epsilon_formula(m: int, lorentzian: bool = False) -> int:
    s = -1 if m % 2 else 1
    return -s if lorentzian else s


@dataclass(frozen=True)
class KOSigns:
    D: int
    lorentzian: bool
    j_squared: int
    epsilon: int
    ko_dim: int

    def as_json(self) -> dict:
        return {"J2": self.j_squared, "eps": self.epsilon, "ko_dim": self.ko_dim}


def _sign_of_multiple(x: np.ndarray, ref: np.ndarray, what: str) -> int:
    """The s in {+1, -1} with x = s * ref, read off the matrices."""
    tol = MATRIX_TOL * max(1.0, float(np.abs(ref).max()))
    for s in (1, -1):
        if np.abs(x - s * ref).max() <= tol * 10:
            return s
    raise ArithmeticError(f"{what}: matrix is not +-1 times the reference")


def ko_signs(D: int, lorentzian: bool = False) -> KOSigns:
    """(J^2, epsilon, KO dimension) computed from the actual matrices.

    Euclidean: J = K C, so J^2 = conj(C) C and C gamma = eps gamma C for the
    (real) chirality gamma. Lorentzian: J_L = K B with B = gamma^0 C.
    """
    _check_dimension(D, 2, 10)
    if D % 2:
        raise ValueError("KO signs are defined for even D")
    rep = gamma_matrices(D, lorentzian)
    M = rep.B if lorentzian else rep.C
    one = np.eye(rep.size)
    j2 = _sign_of_multiple(M.conj() @ M, one, "J^2")
    chi = rep.chirality
    eps = _sign_of_multiple(M @ chi.conj(), chi @ M, "J chirality commutation")
    return KOSigns(D, lorentzian, j2, eps, KO_TABLE[(j2, eps)])


def real_structure_signature(rep: MatrixRep) -> tuple[int, int]:
    """Signature (p, q) of the real Clifford algebra commuting with J.

    J = K M with M = C (Euclidean) or B (Lorentzian). A generator with
    M conj(g) M^-1 = g commutes with J; one with M conj(g) M^-1 = -g
    anticommutes, so i g commutes with J and squares to -eta.
    """
    M = rep.B if rep.lorentzian else rep.C
    if M is None:
        raise ValueError("representation has no charge conjugation")
    Minv = np.linalg.inv(M)
    p = q = 0
    for g, e in zip(rep.gammas, rep.eta):
        s = _sign_of_multiple(M @ g.conj() @ Minv, g, "J generator commutation")
        sq = e if s == 1 else -e
        if sq > 0:
            p += 1
        else:
            q += 1
    return p, q


@dataclass(frozen=True)
class MajoranaClass:
    """kind: 'none', 'majorana' or 'majorana_weyl'.

    weyl (even n only): 'weyl_complex' (p-q = 2 mod 4), 'weyl_self'
    (p-q = 4 mod 8) or 'majorana_weyl' (p-q = 0 mod 8).
    """

    kind: str
    weyl: str | None

    def as_json(self) -> dict:
        return {"kind": self.kind, "weyl": self.weyl}


def majorana_class(p: int, q: int) -> MajoranaClass:
    """Existence of Majorana (and Majorana-Weyl) spinors for Cl(p, q)."""
    if p < 0 or q < 0:
        raise ValueError(f"negative signature ({p},{q})")
    r = (p - q) % 8
    even = (p + q) % 2 == 0
    if r == 0 and even:
        kind = "majorana_weyl"
    elif r in (0, 1, 2):
        kind = "majorana"
    else:
        kind = "none"
    weyl = None
    if even:
        if r % 4 == 2:
            weyl = "weyl_complex"
        elif r == 4:
            weyl = "weyl_self"
        else:
            weyl = "majorana_weyl"
    return MajoranaClass(kind, weyl)


def beta_matrix(D: int) -> np.ndarray:
    """beta = i gamma^0 for the Lorentzian rep of even D (hermitean)."""
    if D % 2:
        raise ValueError("beta is provided for even D")
    return gamma_matrices(D, lorentzian=True).beta


def chirality_from_coxeter(m: int) -> np.ndarray:
    """i^{3-m} omega_{2m-1,1}, with omega = gamma_0 gamma_1 ... gamma_{2m-1}, gamma_0 = -gamma^0.

    Compared against the tensor form sigma3 (x) 1 in the tests; the phase
    bookkeeping is only trusted where the two agree.
    """
    rep = gamma_matrices(2 * m, lorentzian=True)
    lower = [-rep.gammas[0]] + list(rep.gammas[1:])
    return (1j ** (3 - m)) * coxeter_matrix(lower)


# --------------------------------------------------------------------------
# multivectors as matrices


def represent(x: Multivector, generators: Sequence[np.ndarray]) -> np.ndarray:
    """Image of a multivector under e_i -> generators[i-1]."""
    if len(generators) != x.sig.n:
        raise ValueError(f"need {x.sig.n} generator matrices, got {len(generators)}")
    size = generators[0].shape[0]
    out = np.zeros((size, size), dtype=complex)
    for mask, c in x.terms.items():
        term = np.eye(size, dtype=complex)
        for i in blade_indices(mask):
            term = term @ generators[i - 1]
        out += complex(c) * term
    return out


# --------------------------------------------------------------------------
# massless Dirac equation in 1+1 dimensions

WEYL_1P1_GAMMA0 = C2.real.copy()
WEYL_1P1_GAMMA1 = SIGMA1.real.copy()
WEYL_1P1_CHIRALITY = WEYL_1P1_GAMMA0 @ WEYL_1P1_GAMMA1


def weyl_1p1_solve(
    initial_L: Callable[[np.ndarray], np.ndarray],
    initial_R: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    t: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Exact solution of (gamma^0 d_0 + gamma^1 d_1) psi = 0 at time t.

    The chiral components decouple: psi_L(t, x) = psi_L(0, x + t) moves
    left, psi_R(t, x) = psi_R(0, x - t) moves right.
    """
    x = np.asarray(x, dtype=float)
    return np.asarray(initial_L(x + t)), np.asarray(initial_R(x - t))


def weyl_1p1_solve_sampled(
    psi_L: np.ndarray, psi_R: np.ndarray, dx: float, t: float
) -> tuple[np.ndarray, np.ndarray]:
    """Same transport for samples on a uniform periodic grid; t must be a whole number of steps."""
    steps = t / dx
    k = int(round(steps))
    if abs(steps - k) > 1e-9:
        raise ValueError(f"t={t} is not a whole number of grid steps dx={dx}")
    return np.roll(np.asarray(psi_L), -k), np.roll(np.asarray(psi_R), k)
