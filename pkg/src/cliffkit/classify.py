"""Mod-8 classification of Cl(p, q), even subalgebras and periodicity.

The classification itself is a lookup keyed on (p - q) mod 8; it is
cross-checked against structure computed by the blade engine (square of
the Coxeter element, dimension of the center).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blade import (
    MAX_GENERATORS,
    Multivector,
    Signature,
    center_basis,
    omega_squared,
)

# (p - q) mod 8 -> (ring, summands, omega^2, uses 2^m (True) or 2^(m-1) (False))
_TABLE = {
    0: ("R", 1, +1, True),
    1: ("R", 2, +1, True),
    2: ("R", 1, -1, True),
    3: ("C", 1, -1, True),
    4: ("H", 1, +1, False),
    5: ("H", 2, +1, False),
    6: ("H", 1, -1, False),
    7: ("C", 1, -1, True),
}

_RING_DIM = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class ClassificationRecord:
    """One row of the classification: Cl(p,q) ~ K[size] (or K[size] + K[size])."""

    base_ring: str
    matrix_size: int
    summands: int
    omega_sq: int
    total_real_dim: int

    def describe(self) -> str:
        one = f"{self.base_ring}[{self.matrix_size}]"
        return one if self.summands == 1 else f"{one} + {one}"

    def as_json(self) -> dict:
        return {
            "ring": self.base_ring,
            "size": self.matrix_size,
            "summands": self.summands,
            "omega_sq": self.omega_sq,
            "dim": self.total_real_dim,
        }


def classify(sig: Signature | tuple[int, int]) -> ClassificationRecord:
    """Matrix-algebra type of Cl(p, q) from (p - q) mod 8 and n = p + q."""
    p, q = _pq(sig)
    n = p + q
    m = n // 2
    ring, summands, omega_sq, full = _TABLE[(p - q) % 8]
    size = 1 << m if full else 1 << (m - 1)
    record = ClassificationRecord(ring, size, summands, omega_sq, 1 << n)
    assert summands * _RING_DIM[ring] * size * size == record.total_real_dim
    return record


def _pq(sig) -> tuple[int, int]:
    if isinstance(sig, Signature):
        if sig.r:
            raise ValueError("classification covers non-degenerate forms only")
        return sig.p, sig.q
    p, q = sig
    if p < 0 or q < 0:
        raise ValueError(f"negative signature ({p},{q})")
    return p, q


@dataclass
class ConsistencyReport:
    sig: Signature
    record: ClassificationRecord
    omega_sq_blades: int
    center_dim: int
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def check_consistency(sig: Signature) -> ConsistencyReport:
    """Compare the table lookup with structure computed from blades.

    Checks omega^2, the center dimension (1 for n even, 2 for n odd) and
    that split algebras (two summands) have a center with omega^2 = +1 while
    complex ones have omega^2 = -1.
    """
    rec = classify(sig)
    w2 = omega_squared(sig)
    center = center_basis(sig)
    rep = ConsistencyReport(sig, rec, w2, len(center))
    if w2 != rec.omega_sq:
        rep.problems.append(f"omega^2: table {rec.omega_sq}, blades {w2}")
    expected_center = 2 if sig.n % 2 else 1
    if len(center) != expected_center:
        rep.problems.append(f"center dimension {len(center)}, expected {expected_center}")
    split = len(center) == 2 and w2 == 1
    if (rec.summands == 2) != split:
        rep.problems.append("two summands must coincide with a 2-dim center and omega^2 = +1")
    cplx = len(center) == 2 and w2 == -1
    if (rec.base_ring == "C") != cplx:
        rep.problems.append("complex type must coincide with a 2-dim center and omega^2 = -1")
    return rep


# --------------------------------------------------------------------------
# even subalgebra


@dataclass(frozen=True)
class EvenSubalgebra:
    source: Signature
    target: Signature
    generators: tuple[Multivector, ...]

    def relation_defects(self) -> list[tuple[int, int, Multivector]]:
        """Pairs (i, j) whose anticommutator differs from 2 eta'_ij (1-based)."""
        bad = []
        gens = self.generators
        for i, a in enumerate(gens):
            for j in range(i, len(gens)):
                b = gens[j]
                target = 2 * self.target.eta(i + 1) if i == j else 0
                got = a * b + b * a
                if got != Multivector.scalar(self.source, target):
                    bad.append((i + 1, j + 1, got))
        return bad

    def verify(self) -> bool:
        return not self.relation_defects()


def even_subalgebra(sig: Signature) -> EvenSubalgebra:
    """Signature isomorphic to the even part Cl^0(p, q), with explicit generators.

    The generators are ``e_n e_i`` for i < n; they live in Cl^0(p, q) and
    satisfy the Clifford relations of the target signature: Cl(p, q-1) when
    q > 0 (e_n timelike), else Cl(0, p-1).
    """
    if sig.r:
        raise ValueError("even subalgebra is defined here for non-degenerate forms")
    n = sig.n
    if n == 0:
        raise ValueError("Cl(0,0) has no even-subalgebra signature")
    target = Signature(sig.p, sig.q - 1) if sig.q > 0 else Signature(0, sig.p - 1)
    en = Multivector.basis(sig, n)
    gens = tuple(en * Multivector.basis(sig, i) for i in range(1, n))
    return EvenSubalgebra(sig, target, gens)


# --------------------------------------------------------------------------
# periodicity


@dataclass
class PeriodicityCheck:
    name: str
    lhs: tuple[int, int]
    rhs: tuple[int, int]
    passed: bool | None
    detail: str = ""

    @property
    def skipped(self) -> bool:
        return self.passed is None


@dataclass
class PeriodicityReport:
    base: tuple[int, int]
    checks: list[PeriodicityCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def complete(self) -> bool:
        return not any(c.skipped for c in self.checks)


def _same_type(a: ClassificationRecord, b: ClassificationRecord, size_factor: int) -> bool:
    return (
        a.base_ring == b.base_ring
        and a.summands == b.summands
        and a.matrix_size == b.matrix_size * size_factor
    )


def verify_periodicity(sig: Signature | tuple[int, int], cap: int = MAX_GENERATORS) -> PeriodicityReport:
    """Check Cl(p+1,q+1) = Cl(p,q)[2], Cl(p+4,q) = Cl(p,q+4), Cl(p+8,q) = Cl(p,q)[16].

    Shifted signatures beyond ``cap`` generators are reported as skipped.
    The matrix-size relations are checked on the table records; omega^2 of
    every in-cap signature is also recomputed from blades.
    """
    p, q = _pq(sig)
    base = classify((p, q))
    checks = []

    def add(name, lhs, rhs, factor, other=None):
        if sum(lhs) > cap or sum(rhs) > cap:
            checks.append(PeriodicityCheck(name, lhs, rhs, None, f"exceeds cap of {cap} generators"))
            return
        left = classify(lhs)
        right = classify(rhs) if other is None else other
        ok = _same_type(left, right, factor)
        if ok and sum(lhs) <= cap:
            ok = omega_squared(Signature(*lhs)) == left.omega_sq
        checks.append(PeriodicityCheck(name, lhs, rhs, ok, f"{left.describe()} vs {right.describe()}"))

    add("(p+1,q+1) = (p,q)[2]", (p + 1, q + 1), (p, q), 2, base)
    add("(p+4,q) = (p,q+4)", (p + 4, q), (p, q + 4), 1)
    add("(p+8,q) = (p,q)[16]", (p + 8, q), (p, q), 16, base)
    add("(p,q+8) = (p,q)[16]", (p, q + 8), (p, q), 16, base)
    add("(p+4,q+4) = (p,q)[16]", (p + 4, q + 4), (p, q), 16, base)
    return PeriodicityReport((p, q), checks)
