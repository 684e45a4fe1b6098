"""Free Dirac field in 3+1 dimensions in the chiral basis.

Spinors are 4-component columns (psi_L, psi_R) with gamma5 = sigma3 (x) 1,
gamma^0 = c (x) 1, gamma^j = sigma1 (x) sigma_j and metric diag(-1, 1, 1, 1).
The Dirac equation reads (m + gamma^mu d_mu) psi = 0; plane waves
u e^{ipx} solve (m + i p gamma) u = 0 with p gamma = p_mu gamma^mu.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blade import Multivector
from .lipschitz import SPACETIME
from .matrep import SIGMA, C2, gamma_matrices, represent

_REP = gamma_matrices(4, lorentzian=True)
GAMMA = _REP.gammas  # gamma^0 .. gamma^3
GAMMA5 = _REP.chirality
C = _REP.C  # 1 (x) c
B = _REP.B  # gamma^0 C = [[0, c], [-c, 0]]
BETA = _REP.beta  # i gamma^0
ETA = np.diag([-1.0, 1.0, 1.0, 1.0])


def _sigma_dot(p: np.ndarray) -> np.ndarray:
    return p[0] * SIGMA[0] + p[1] * SIGMA[1] + p[2] * SIGMA[2]


@dataclass(frozen=True)
class FourMomentum:
    """Contravariant components p^mu; on shell p0 = sqrt(m^2 + |p|^2)."""

    p0: float
    p1: float
    p2: float
    p3: float
    mass: float

    @classmethod
    def on_shell(cls, mass: float, pvec) -> "FourMomentum":
        px, py, pz = (float(c) for c in pvec)
        if mass < 0 or not np.isfinite([mass, px, py, pz]).all():
            raise ValueError("mass must be >= 0 and momentum finite")
        p0 = float(np.sqrt(mass * mass + px * px + py * py + pz * pz))
        return cls(p0, px, py, pz, float(mass))

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.p1, self.p2, self.p3])

    @property
    def upper(self) -> np.ndarray:
        return np.array([self.p0, self.p1, self.p2, self.p3])

    @property
    def square(self) -> float:
        """p^2 = |p|^2 - p0^2 (equals -m^2 on shell)."""
        return float(self.spatial @ self.spatial - self.p0 ** 2)

    def slash(self) -> np.ndarray:
        """p gamma = -p0 gamma^0 + p . gamma = [[0, -p~], [p_, 0]]."""
        p = self.upper
        return -p[0] * GAMMA[0] + sum(p[j] * GAMMA[j] for j in (1, 2, 3))

    def tilde(self) -> np.ndarray:
        """p~ = p0 - p . sigma."""
        return self.p0 * np.eye(2) - _sigma_dot(self.spatial)

    def under(self) -> np.ndarray:
        """p_ = p0 + p . sigma."""
        return self.p0 * np.eye(2) + _sigma_dot(self.spatial)


def _psd_sqrt_2x2(a: np.ndarray) -> np.ndarray:
    """Hermitean square root of a positive semidefinite 2x2 matrix."""
    s = np.sqrt(max(np.linalg.det(a).real, 0.0))
    t = np.sqrt(np.trace(a).real + 2 * s)
    if t == 0:
        return np.zeros((2, 2), dtype=complex)
    return (a + s * np.eye(2)) / t


def _momentum(m, pvec) -> FourMomentum:
    return pvec if isinstance(pvec, FourMomentum) else FourMomentum.on_shell(m, pvec)


def plane_wave_spinors(m: float, pvec) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Positive and negative frequency spinors (u_1, u_2), (v_1, v_2).

    u_L = sqrt(p~) chi, u_R = -i sqrt(p_) chi with chi the sigma3 eigenbasis;
    v = u^C. Normalized so that u~ u = 2m and sum u (x) u~ = m - i p gamma.
    """
    if not m > 0:
        raise ValueError(f"plane waves need m > 0, got {m}")
    p = _momentum(m, pvec)
    rt, ru = _psd_sqrt_2x2(p.tilde()), _psd_sqrt_2x2(p.under())
    us = []
    for chi in np.eye(2, dtype=complex):
        us.append(np.concatenate([rt @ chi, -1j * (ru @ chi)]))
    vs = [charge_conjugate(u) for u in us]
    return us, vs


def dirac_conjugate(psi: np.ndarray) -> np.ndarray:
    """psi~ = psi^dagger beta (a row), beta = i gamma^0."""
    return np.conj(psi) @ BETA


def charge_conjugate(psi: np.ndarray) -> np.ndarray:
    """psi^C = B conj(psi): (psi_L, psi_R) -> (c conj(psi_R), -c conj(psi_L))."""
    return B @ np.conj(psi)


def is_majorana(psi: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.abs(charge_conjugate(psi) - psi).max() <= tol * max(1.0, np.abs(psi).max()))


def majorana_from_right(psi_R) -> np.ndarray:
    """The Majorana spinor (c conj(psi_R), psi_R)."""
    r = np.asarray(psi_R, dtype=complex)
    return np.concatenate([C2 @ np.conj(r), r])


def dirac_residual(m: float, p: FourMomentum, spinor: np.ndarray, sign: int = 1) -> float:
    """max |(m + sign i p gamma) spinor|; sign=+1 for u, -1 for v."""
    return float(np.abs((m * np.eye(4) + sign * 1j * p.slash()) @ spinor).max())


def spin_sum(spinors) -> np.ndarray:
    """sum over spins of s (x) s~."""
    return sum(np.outer(s, dirac_conjugate(s)) for s in spinors)


def chiral_sums(m: float, pvec) -> dict[str, np.ndarray]:
    """Block sums of u_L u_L^dagger etc.; m = 0 allowed (Weyl limit).

    Expected: LL = p~, RR = p_, LR = i m.
    """
    p = _momentum(m, pvec)
    rt, ru = _psd_sqrt_2x2(p.tilde()), _psd_sqrt_2x2(p.under())
    uL = [rt @ chi for chi in np.eye(2)]
    uR = [-1j * (ru @ chi) for chi in np.eye(2)]
    outer = lambda xs, ys: sum(np.outer(x, np.conj(y)) for x, y in zip(xs, ys))
    return {"LL": outer(uL, uL), "RR": outer(uR, uR), "LR": outer(uL, uR)}


@dataclass
class SpinSumReport:
    momentum: FourMomentum
    u_sum_error: float
    v_sum_error: float
    normalization_error: float
    dirac_residual: float
    chiral_error: float

    @property
    def worst(self) -> float:
        return max(
            self.u_sum_error,
            self.v_sum_error,
            self.normalization_error,
            self.dirac_residual,
            self.chiral_error,
        )


def check_spin_sums(m: float, pvec) -> SpinSumReport:
    """Errors relative to max(1, p0) for the plane-wave completeness relations."""
    p = _momentum(m, pvec)
    us, vs = plane_wave_spinors(m, p)
    scale = max(1.0, p.p0)
    one = np.eye(4)
    u_err = np.abs(spin_sum(us) - (m * one - 1j * p.slash())).max() / scale
    v_err = np.abs(spin_sum(vs) - (-m * one - 1j * p.slash())).max() / scale
    gram_u = np.array([[dirac_conjugate(a) @ b for b in us] for a in us])
    gram_v = np.array([[dirac_conjugate(a) @ b for b in vs] for a in vs])
    norm_err = max(
        np.abs(gram_u - 2 * m * np.eye(2)).max(), np.abs(gram_v + 2 * m * np.eye(2)).max()
    ) / scale
    res = max(
        max(dirac_residual(m, p, u, +1) for u in us),
        max(dirac_residual(m, p, v, -1) for v in vs),
    ) / scale
    cs = chiral_sums(m, p)
    chiral = max(
        np.abs(cs["LL"] - p.tilde()).max(),
        np.abs(cs["RR"] - p.under()).max(),
        np.abs(cs["LR"] - 1j * m * np.eye(2)).max(),
    ) / scale
    return SpinSumReport(p, float(u_err), float(v_err), float(norm_err), float(res), float(chiral))


# --------------------------------------------------------------------------
# spacetime multivectors acting on spinors


def spinor_matrix(x: Multivector) -> np.ndarray:
    """Image of an element of Cl(3,1): e_j -> gamma^j, e_4 -> gamma_0 = -gamma^0."""
    if x.sig != SPACETIME:
        raise ValueError(f"expected an element of {SPACETIME}, got {x.sig}")
    return represent(x, [GAMMA[1], GAMMA[2], GAMMA[3], -GAMMA[0]])


# --------------------------------------------------------------------------
# other bases


def _check_chiral(rep_gammas) -> None:
    if len(rep_gammas) != 4 or any(
        not np.allclose(a, b, atol=1e-13) for a, b in zip(rep_gammas, GAMMA)
    ):
        raise ValueError("expected the chiral-basis gamma^0..gamma^3")


@dataclass(frozen=True)
class BasisChange:
    """psi -> T psi; gammas are T gamma^mu T^dagger."""

    T: np.ndarray
    gammas: tuple[np.ndarray, ...]
    gamma5: np.ndarray
    C: np.ndarray
    B: np.ndarray
    c_phase: complex  # conj(T) C T^dagger = c_phase * C


def _transform(T: np.ndarray, C_new: np.ndarray) -> BasisChange:
    Td = T.conj().T
    gammas = tuple(T @ g @ Td for g in GAMMA)
    moved = T.conj() @ C @ Td
    k = np.argmax(np.abs(C_new))
    phase = complex(moved.flat[k] / C_new.flat[k])
    if not np.allclose(moved, phase * C_new, atol=1e-13):
        raise ArithmeticError("transformed C is not proportional to the target")
    return BasisChange(T, gammas, T @ GAMMA5 @ Td, C_new, gammas[0] @ C_new, phase)


def majorana_basis(rep_gammas=GAMMA) -> BasisChange:
    """S = (1 - gamma^2 gamma5)/sqrt(2): all gamma^M real, C_M = gamma_0^M, B_M = 1."""
    _check_chiral(rep_gammas)
    S = (np.eye(4) - GAMMA[2] @ GAMMA5) / np.sqrt(2)
    g0M = S @ GAMMA[0] @ S.conj().T
    return _transform(S, -g0M)


def dirac_basis(rep_gammas=GAMMA) -> BasisChange:
    """Unitary T with T gamma^0 T^dagger = -i gamma5 and T gamma^j T^dagger = gamma^j.

    T is found as the null space of the linear intertwining conditions and
    normalized to be unitary. C_Dir is taken as i gamma^2.
    """
    _check_chiral(rep_gammas)
    targets = [-1j * GAMMA5] + [GAMMA[j] for j in (1, 2, 3)]
    one = np.eye(4)
    # T g = t T  <=>  (I kron g^t - t kron I) vec(T) = 0 (row-major vec)
    A = np.vstack([np.kron(one, g.T) - np.kron(t, one) for g, t in zip(GAMMA, targets)])
    T = _null_vector(A).reshape(4, 4)
    gram = T @ T.conj().T
    T = T / np.sqrt(gram[0, 0].real)
    k = np.argmax(np.abs(T))
    T = T * (abs(T.flat[k]) / T.flat[k])
    return _transform(T, 1j * GAMMA[2])


def _null_vector(A: np.ndarray) -> np.ndarray:
    _, s, vh = np.linalg.svd(A)
    if s[-1] > 1e-10 or (len(s) > 1 and s[-2] < 1e-10):
        raise ArithmeticError("intertwiner is not unique up to scale")
    return vh[-1].conj()


def majorana_split(a_modes, b_modes) -> tuple[np.ndarray, np.ndarray]:
    """Majorana modes c = (a + b)/sqrt(2), d = (a - b)/sqrt(2) from particle/antiparticle modes."""
    a = np.asarray(a_modes)
    b = np.asarray(b_modes)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    r = np.sqrt(0.5)
    return (a + b) * r, (a - b) * r


def majorana_join(c_modes, d_modes) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`majorana_split`."""
    return majorana_split(c_modes, d_modes)
