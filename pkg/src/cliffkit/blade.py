"""Sparse multivector arithmetic for the real Clifford algebras Cl(p, q).

Basis blades are bitmasks over the generators: bit ``i`` set means the
generator ``e_{i+1}`` is present, always in ascending order. The first
``p`` generators square to +1, the next ``q`` to -1 and an optional tail
of ``r`` null generators squares to 0 (``Signature(0, 0, r)`` is the
Grassmann algebra on ``r`` generators).

Coefficients come in two flavours sharing one class:

* exact: ``int`` and ``fractions.Fraction``; no rounding ever happens and
  equality is exact;
* numeric: ``float`` and ``complex``; equality uses the tolerance from
  :func:`cliffkit._config.numeric_tol`.

Mixing the two promotes to numeric. Multivectors are immutable.
"""

from __future__ import annotations

import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from . import _exact
from ._config import numeric_tol

MAX_GENERATORS = 12


class SignatureMismatch(ValueError):
    """Operands live in different Clifford algebras."""


class NotInvertibleError(ArithmeticError):
    """The multivector has no inverse."""


class ParseError(ValueError):
    """Malformed multivector or signature text."""


# --------------------------------------------------------------------------
# signatures and blades


@dataclass(frozen=True)
class Signature:
    """Quadratic form with ``p`` positive, ``q`` negative and ``r`` null generators."""

    p: int
    q: int
    r: int = 0

    def __post_init__(self):
        for name in ("p", "q", "r"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"signature count {name}={value!r} must be a non-negative int")
        if self.n > MAX_GENERATORS:
            raise ValueError(
                f"Cl({self.p},{self.q}) has {self.n} generators; cap is {MAX_GENERATORS}"
            )

    @property
    def n(self) -> int:
        return self.p + self.q + self.r

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def neg_mask(self) -> int:
        return ((1 << self.q) - 1) << self.p

    @property
    def null_mask(self) -> int:
        return ((1 << self.r) - 1) << (self.p + self.q)

    def eta(self, i: int) -> int:
        """Square of the 1-based generator ``e_i``."""
        if not 1 <= i <= self.n:
            raise IndexError(f"generator e{i} out of range for n={self.n}")
        if i <= self.p:
            return 1
        if i <= self.p + self.q:
            return -1
        return 0

    def metric(self) -> list[int]:
        return [self.eta(i) for i in range(1, self.n + 1)]

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse ``"p,q"`` (or ``"p,q,r"``)."""
        parts = [s.strip() for s in str(text).split(",")]
        if len(parts) not in (2, 3) or not all(s.isdigit() for s in parts):
            raise ParseError(f"signature must look like 'p,q', got {text!r}")
        return cls(*(int(s) for s in parts))

    def __str__(self) -> str:
        if self.r:
            return f"Cl({self.p},{self.q},{self.r})"
        return f"Cl({self.p},{self.q})"


def grade_of(mask: int) -> int:
    return mask.bit_count()


def blade_indices(mask: int) -> tuple[int, ...]:
    """1-based generator indices present in ``mask``, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenation ``e_A e_B`` into ascending order.

    Counts the pairs (i in A, j in B) with i > j, i.e. the transpositions
    needed to move every generator of B left past the larger ones of A.
    """
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Product of two basis blades: returns ``(sign, mask)``; sign 0 for null contractions."""
    common = a & b
    if common & sig.null_mask:
        return 0, a ^ b
    sign = reorder_sign(a, b)
    if (common & sig.neg_mask).bit_count() & 1:
        sign = -sign
    return sign, a ^ b


def blades_commute(a: int, b: int, sig: Signature) -> bool:
    sab, _ = blade_product(a, b, sig)
    sba, _ = blade_product(b, a, sig)
    return sab == sba


# --------------------------------------------------------------------------
# coefficients


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


def _normalize(c):
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, Fraction):
        return int(c.numerator) if c.denominator == 1 else c
    if isinstance(c, (int, float, complex)):
        return c
    if isinstance(c, numbers.Integral):
        return int(c)
    if isinstance(c, numbers.Rational) and not isinstance(c, Fraction):
        return Fraction(c.numerator, c.denominator)
    if isinstance(c, numbers.Real) and not isinstance(c, float):
        return float(c)
    if isinstance(c, numbers.Complex) and not isinstance(c, complex):
        return complex(c)
    return c


def _divide(a, b):
    if _is_exact(a) and _is_exact(b):
        return _normalize(Fraction(a) / Fraction(b))
    return a / b


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


# --------------------------------------------------------------------------
# multivectors


class Multivector:
    """Element of Cl(p, q) stored as a sparse ``{blade mask: coefficient}`` map."""

    __slots__ = ("sig", "_terms")

    def __init__(self, sig: Signature, terms: Mapping[int, object] | None = None):
        clean = {}
        limit = sig.dim
        for mask, c in (terms or {}).items():
            if not 0 <= mask < limit:
                raise ValueError(f"blade mask {mask} outside {sig}")
            c = _normalize(c)
            if c != 0:
                clean[mask] = c
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # construction helpers ------------------------------------------------

    @classmethod
    def scalar(cls, sig: Signature, value=1) -> "Multivector":
        return cls(sig, {0: value})

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig)

    @classmethod
    def basis(cls, sig: Signature, i: int) -> "Multivector":
        """The 1-based generator ``e_i``."""
        sig.eta(i)
        return cls(sig, {1 << (i - 1): 1})

    @classmethod
    def blade(cls, sig: Signature, *indices: int, coef=1) -> "Multivector":
        """Product ``coef * e_{i1} e_{i2} ...`` in the given (any) order."""
        out = cls.scalar(sig, coef)
        for i in indices:
            out = out * cls.basis(sig, i)
        return out

    @classmethod
    def vector(cls, sig: Signature, coords: Iterable) -> "Multivector":
        coords = list(coords)
        if len(coords) != sig.n:
            raise ValueError(f"expected {sig.n} vector components, got {len(coords)}")
        return cls(sig, {1 << i: c for i, c in enumerate(coords)})

    @classmethod
    def parse(cls, sig: Signature, text: str) -> "Multivector":
        return parse_multivector(sig, text)

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[int, object]:
        return MappingProxyType(self._terms)

    def __iter__(self) -> Iterator[tuple[int, object]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _blade_sort_key(kv[0])))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, mask: int):
        return self._terms.get(mask, 0)

    def scalar_part(self):
        return self._terms.get(0, 0)

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in self._terms.values())

    def grades(self) -> set[int]:
        return {grade_of(m) for m in self._terms}

    def grade(self, k: int) -> "Multivector":
        return Multivector(self.sig, {m: c for m, c in self._terms.items() if grade_of(m) == k})

    def parity(self) -> str:
        """'even', 'odd', 'mixed', or 'zero'."""
        parities = {g & 1 for g in self.grades()}
        if not parities:
            return "zero"
        if parities == {0}:
            return "even"
        if parities == {1}:
            return "odd"
        return "mixed"

    def is_scalar(self, tol: float | None = None) -> bool:
        return self._is_zero_except(lambda m: m == 0, tol)

    def is_vector(self, tol: float | None = None) -> bool:
        return self._is_zero_except(lambda m: grade_of(m) == 1, tol)

    def _is_zero_except(self, keep, tol):
        for m, c in self._terms.items():
            if keep(m):
                continue
            if _is_exact(c) or abs(c) > (numeric_tol() if tol is None else tol):
                return False
        return True

    def vector_coords(self) -> list:
        """Grade-1 coefficients ``[c_1, ..., c_n]`` (other grades ignored)."""
        return [self._terms.get(1 << i, 0) for i in range(self.sig.n)]

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    # algebra ------------------------------------------------------------

    def _check(self, other: "Multivector"):
        if self.sig != other.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")

    def _coerce(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return other
        if isinstance(other, numbers.Number):
            return Multivector.scalar(self.sig, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.sig, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, numbers.Number):
            return Multivector(self.sig, {m: c * other for m, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return Multivector(self.sig, {m: other * c for m, c in self._terms.items()})
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Number):
            return Multivector(self.sig, {m: _divide(c, other) for m, c in self._terms.items()})
        if isinstance(other, Multivector):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Multivector.scalar(self.sig, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, numbers.Number):
            other = Multivector.scalar(self.sig, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        if self.sig != other.sig:
            return False
        if self.is_exact and other.is_exact:
            return self._terms == other._terms
        return self.allclose(other)

    __hash__ = None

    def allclose(self, other: "Multivector", tol: float | None = None) -> bool:
        self._check(other)
        tol = numeric_tol() if tol is None else tol
        for m in set(self._terms) | set(other._terms):
            if abs(self._terms.get(m, 0) - other._terms.get(m, 0)) > tol:
                return False
        return True

    def involute(self) -> "Multivector":
        return grade_involution(self)

    def conjugate(self) -> "Multivector":
        return conjugation(self)

    def reverse(self) -> "Multivector":
        """Reversion: grade-k part times (-1)^{k(k-1)/2}; coefficients conjugated."""
        return Multivector(
            self.sig,
            {m: (-_conj(c) if (grade_of(m) // 2) & 1 else _conj(c)) for m, c in self._terms.items()},
        )

    def norm(self) -> "Multivector":
        return norm(self)

    def inverse(self) -> "Multivector":
        return inverse(self)

    def to_numeric(self) -> "Multivector":
        return Multivector(
            self.sig,
            {m: (c if isinstance(c, complex) else float(c)) for m, c in self._terms.items()},
        )

    def left_matrix(self) -> list[list]:
        """Matrix of ``y -> self * y`` in the blade basis (column j is the image of blade j)."""
        dim = self.sig.dim
        rows = [[0] * dim for _ in range(dim)]
        for j in range(dim):
            for m, c in self._terms.items():
                s, out = blade_product(m, j, self.sig)
                if s:
                    rows[out][j] += s * c
        return rows

    # text ----------------------------------------------------------------

    def __str__(self) -> str:
        return format_multivector(self)

    def __repr__(self) -> str:
        return f"Multivector({self.sig}, {format_multivector(self)!r})"


def _blade_sort_key(mask: int):
    return (grade_of(mask), blade_indices(mask))


# --------------------------------------------------------------------------
# operations


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    """Clifford product; bilinear and associative."""
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig} vs {b.sig}")
    sig = a.sig
    out: dict[int, object] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            s, m = blade_product(ma, mb, sig)
            if s:
                v = ca * cb
                out[m] = out.get(m, 0) + (v if s > 0 else -v)
    return Multivector(sig, out)


def commutator(a: Multivector, b: Multivector) -> Multivector:
    return a * b - b * a


def grade_involution(x: Multivector) -> Multivector:
    """The automorphism alpha: grade-k part times (-1)^k."""
    return Multivector(x.sig, {m: (-c if grade_of(m) & 1 else c) for m, c in x._terms.items()})


def conjugation(x: Multivector) -> Multivector:
    """Anti-automorphism with v -> -v on vectors; complex coefficients are conjugated.

    A grade-k blade picks up (-1)^{k(k+1)/2}.
    """
    out = {}
    for m, c in x._terms.items():
        k = grade_of(m)
        c = _conj(c)
        out[m] = -c if (k * (k + 1) // 2) & 1 else c
    return Multivector(x.sig, out)


def norm(x: Multivector) -> Multivector:
    """N(x) = x x-dagger."""
    return x * conjugation(x)


def quadratic_form(v: Multivector):
    """Q(v) = v^2 for a grade-1 element, as a plain number."""
    sig = v.sig
    return sum(c * c * sig.eta(i + 1) for i, c in enumerate(v.vector_coords()))


def inverse(x: Multivector) -> Multivector:
    """Two-sided inverse.

    Uses ``x^-1 = x-dagger / N(x)`` when the norm is a nonzero scalar (all
    versors), falling back to solving ``x y = 1`` in the blade basis.
    """
    if not x:
        raise NotInvertibleError("zero has no inverse")
    n = norm(x)
    if n.is_scalar():
        s = n.scalar_part()
        if s != 0 and (_is_exact(s) or abs(s) > numeric_tol()):
            return conjugation(x) / s
    return _inverse_by_solve(x)


def _inverse_by_solve(x: Multivector) -> Multivector:
    sig = x.sig
    a = x.left_matrix()
    rhs = [1] + [0] * (sig.dim - 1)
    if x.is_exact:
        sol = _exact.solve(a, rhs)
        if sol is None:
            raise NotInvertibleError(f"{x} is a zero divisor in {sig}")
        return Multivector(sig, dict(enumerate(sol)))
    import numpy as np

    mat = np.array(a, dtype=complex)
    if np.linalg.cond(mat) > 1.0 / numeric_tol():
        raise NotInvertibleError(f"{x} is (numerically) a zero divisor in {sig}")
    sol = np.linalg.solve(mat, np.array(rhs, dtype=complex))
    if np.abs(sol.imag).max() <= numeric_tol() and not any(isinstance(c, complex) for c in x._terms.values()):
        sol = sol.real
    return Multivector(sig, {i: (complex(c) if np.iscomplexobj(sol) else float(c)) for i, c in enumerate(sol)})


def coxeter_element(sig: Signature) -> Multivector:
    """The pseudoscalar omega = e_1 e_2 ... e_n (1 for n = 0)."""
    return Multivector(sig, {sig.dim - 1: 1})


def omega_squared_formula(p: int, q: int) -> int:
    """Closed form (-1)^{(p-q)(p-q-1)/2} for the square of the Coxeter element."""
    k = p - q
    return -1 if (k * (k - 1) // 2) % 2 else 1


def omega_squared(sig: Signature) -> int:
    """Square of the Coxeter element computed by the blade engine."""
    full = sig.dim - 1
    sign, mask = blade_product(full, full, sig)
    assert mask == 0
    return sign


def center_basis(sig: Signature) -> list[Multivector]:
    """Blades commuting with every generator, by brute force over all 2^n blades."""
    gens = [1 << i for i in range(sig.n)]
    return [
        Multivector(sig, {m: 1})
        for m in sorted(range(sig.dim), key=_blade_sort_key)
        if all(blades_commute(m, g, sig) for g in gens)
    ]


# --------------------------------------------------------------------------
# text format:  c0 + c1*e1 + c12*e1^e2 + ...

_TOKEN = re.compile(
    r"""
    \s*(?:
        (?P<complex>\([^()]*\))
      | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?(?:/\d+)?)
      | (?P<gen>[A-Za-zͰ-Ͽ]+?(?P<idx>\d+))
      | (?P<op>[-+*^])
    )""",
    re.VERBOSE,
)


def _format_coef(c) -> str:
    if isinstance(c, complex):
        return f"({c.real!r}{c.imag:+}j)".replace("+-", "-")
    if isinstance(c, float):
        return repr(c)
    return str(c)


def format_multivector(x: Multivector, name: str = "e") -> str:
    """Render as ``c0 + c1*e1 + c12*e1^e2``; exact coefficients round-trip exactly."""
    if not x:
        return "0"
    parts = []
    for mask, c in x:
        blade = "^".join(f"{name}{i}" for i in blade_indices(mask))
        negative = False
        if not isinstance(c, complex) and c < 0:
            negative, c = True, -c
        if not blade:
            body = _format_coef(c)
        elif _is_exact(c) and c == 1:
            body = blade
        else:
            body = f"{_format_coef(c)}*{blade}"
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts)


def _parse_number(text: str):
    if text.startswith("("):
        try:
            return complex(text.replace(" ", ""))
        except ValueError:
            raise ParseError(f"bad complex coefficient {text!r}") from None
    if "/" in text:
        num, den = text.split("/")
        if any(ch in num for ch in ".eE"):
            raise ParseError(f"fraction numerator must be an integer: {text!r}")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    if any(ch in text for ch in ".eE"):
        return float(text)
    return int(text)


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group("complex") is not None:
            tokens.append(("num", _parse_number(m.group("complex"))))
        elif m.group("number") is not None:
            tokens.append(("num", _parse_number(m.group("number"))))
        elif m.group("gen") is not None:
            tokens.append(("gen", int(m.group("idx"))))
        else:
            tokens.append(("op", m.group("op")))
    return tokens


def parse_multivector(sig: Signature, text: str) -> Multivector:
    """Inverse of :func:`format_multivector`.

    Generators may be written in any order (``e2^e1`` means ``-e1^e2``);
    repeated generators inside one blade are rejected. Integers and ``a/b``
    give exact coefficients, decimals give floats, ``(a+bj)`` gives complex.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty multivector text")
    result = Multivector.zero(sig)
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        if tokens[i][0] == "op" and tokens[i][1] in "+-":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' between terms in {text!r}")
        first = False
        coef = 1
        have_coef = False
        if i < len(tokens) and tokens[i][0] == "num":
            coef = tokens[i][1]
            have_coef = True
            i += 1
            if i < len(tokens) and tokens[i] == ("op", "*"):
                i += 1
                if i >= len(tokens) or tokens[i][0] != "gen":
                    raise ParseError(f"'*' must be followed by a blade in {text!r}")
        indices = []
        while i < len(tokens) and tokens[i][0] == "gen":
            indices.append(tokens[i][1])
            i += 1
            if i < len(tokens) and tokens[i] == ("op", "^"):
                i += 1
                if i >= len(tokens) or tokens[i][0] != "gen":
                    raise ParseError(f"'^' must be followed by a generator in {text!r}")
            else:
                break
        if not have_coef and not indices:
            raise ParseError(f"missing term in {text!r}")
        if len(set(indices)) != len(indices):
            raise ParseError(f"repeated generator in blade of {text!r}")
        for idx in indices:
            if not 1 <= idx <= sig.n:
                raise ParseError(f"generator e{idx} not in {sig}")
        term = Multivector.blade(sig, *indices, coef=coef)
        result = result + (term if sign > 0 else -term)
    return result


__all__ = [
    "MAX_GENERATORS",
    "Multivector",
    "NotInvertibleError",
    "ParseError",
    "Signature",
    "SignatureMismatch",
    "blade_indices",
    "blade_product",
    "center_basis",
    "commutator",
    "conjugation",
    "coxeter_element",
    "format_multivector",
    "geometric_product",
    "grade_involution",
    "grade_of",
    "inverse",
    "norm",
    "omega_squared",
    "omega_squared_formula",
    "parse_multivector",
    "quadratic_form",
    "reorder_sign",
]
