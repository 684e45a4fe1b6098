import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffkit.blade import Multivector, NotInvertibleError, Signature, norm, quadratic_form
from cliffkit.lipschitz import (
    SPACETIME,
    even_complex_split,
    gamma_upper,
    group_membership,
    lie_algebra_audit,
    reflect,
    rotor_exp,
    rotor_from_axis_angle,
    spacetime_omega,
    twisted_adjoint,
    vector_rep_of_pin31,
)

from _strategies import exact_coefs


def rodrigues(n, theta):
    n = np.asarray(n, dtype=float)
    k = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return math.cos(theta) * np.eye(3) + math.sin(theta) * k + (1 - math.cos(theta)) * np.outer(n, n)


def vector_list(draw, sig, k):
    vs = []
    for i in range(k):
        v = Multivector.vector(sig, [draw(exact_coefs) for _ in range(sig.n)])
        if quadratic_form(v) == 0:
            # null draws are replaced by a generator so every factor is invertible
            v = Multivector.basis(sig, i % sig.n + 1)
        vs.append(v)
    return vs


@st.composite
def versors(draw, max_n=5, max_k=4):
    n = draw(st.integers(1, max_n))
    p = draw(st.integers(0, n))
    sig = Signature(p, n - p)
    return sig, vector_list(draw, sig, draw(st.integers(1, max_k)))


@st.composite
def versor_pairs(draw, max_n=5):
    sig, vs = draw(versors(max_n=max_n, max_k=2))
    return sig, vs, vector_list(draw, sig, draw(st.integers(1, 2)))


def product(vs):
    out = vs[0]
    for v in vs[1:]:
        out = out * v
    return out


class TestReflections:
    def test_reflect(self):
        sig = Signature(3, 0)
        e1, e2 = Multivector.basis(sig, 1), Multivector.basis(sig, 2)
        assert reflect(e1, e1) == -e1
        assert reflect(e1, e2) == e2
        assert reflect(2 * e1, e1 + e2) == -e1 + e2

    def test_reflect_null(self):
        sig = Signature(1, 1)
        u = Multivector.vector(sig, [1, 1])
        with pytest.raises(NotInvertibleError):
            reflect(u, Multivector.basis(sig, 1))

    def test_twisted_adjoint_of_vector_is_reflection(self):
        sig = Signature(2, 1)
        u = Multivector.vector(sig, [1, 2, 1])
        v = Multivector.vector(sig, [0, 1, 3])
        assert twisted_adjoint(u, v) == reflect(u, v)


class TestMembership:
    def test_generator_is_pin(self):
        verdict, image = group_membership(Multivector.basis(Signature(3, 0), 1))
        assert verdict.membership == "Pin"
        assert image.matrix == ((-1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert image.det == -1

    def test_scalar_is_lipschitz_only(self):
        verdict, image = group_membership(Multivector.scalar(Signature(3, 0), 2))
        assert verdict.membership == "Lipschitz-only"
        assert verdict.norm_value == 4
        assert image.matrix == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_zero_divisor_is_none(self):
        verdict, image = group_membership(Multivector.parse(Signature(3, 0), "1 + e1"))
        assert verdict.membership == "none" and image is None
        assert "not invertible" in verdict.diagnostics[0]

    def test_mixed_parity_is_none(self):
        # invertible (N = -3) but rho(e2) picks up a trivector part
        x = Multivector.parse(Signature(3, 0), "1 + 2*e1")
        verdict, image = group_membership(x)
        assert verdict.membership == "none" and image is None
        assert any("non-vector" in d for d in verdict.diagnostics)

    def test_spin_element(self):
        x = Multivector.parse(SPACETIME, "1/2 + 3/2*e1^e4")
        verdict, image = group_membership(x)
        assert verdict.membership == "Lipschitz-only"
        assert verdict.norm_value == -2
        assert image.preserves_form() and image.det == 1

    def test_numeric_borderline(self):
        sig = Signature(3, 0)
        x = Multivector(sig, {0: 1.0, 3: 1.0, 7: 1e-8})
        verdict, _ = group_membership(x)
        assert verdict.membership == "none"
        assert verdict.borderline

    @settings(max_examples=150, deadline=None)
    @given(versors())
    def test_random_versors(self, data):
        sig, vs = data
        x = product(vs)
        verdict, image = group_membership(x)
        assert verdict.in_lipschitz
        assert image.is_exact and image.preserves_form()
        assert image.det == (-1) ** len(vs)
        assert verdict.parity == ("odd" if len(vs) % 2 else "even")
        expected_norm = 1
        for v in vs:
            expected_norm *= -quadratic_form(v)
        assert verdict.norm_value == expected_norm

    @settings(max_examples=100, deadline=None)
    @given(versor_pairs())
    def test_norm_multiplicative(self, data):
        _, vs, ws = data
        x, y = product(vs), product(ws)
        assert norm(x * y) == norm(x) * norm(y)


class TestRotors:
    @pytest.mark.parametrize("theta", [0.0, 0.3, math.pi / 2, math.pi, 2.5])
    def test_about_z(self, theta):
        _, image = rotor_from_axis_angle([0, 0, 1], theta)
        assert np.allclose(image.as_array(), rodrigues([0, 0, 1], theta), atol=1e-12)

    def test_double_cover(self):
        u, image = rotor_from_axis_angle([0.6, 0.0, 0.8], 2 * math.pi)
        assert u.allclose(Multivector.scalar(Signature(3, 0), -1.0))
        assert np.allclose(image.as_array(), np.eye(3), atol=1e-12)

    def test_non_unit_axis(self):
        with pytest.raises(ValueError):
            rotor_from_axis_angle([1, 1, 0], 1.0)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
    def test_exp_of_euclidean_bivector(self, a, b, c):
        sig = Signature(3, 0)
        B = Multivector(sig, {3: a, 5: b, 6: c})
        t = math.sqrt(a * a + b * b + c * c)
        expected = math.cos(t) + (B * (math.sin(t) / t) if t else 0 * B)
        assert rotor_exp(B).allclose(expected, 1e-12)

    def test_boost(self):
        B = Multivector.parse(SPACETIME, "0.7*e1^e4")
        R = rotor_exp(B)
        assert R.allclose(math.cosh(0.7) + B * (math.sinh(0.7) / 0.7), 1e-12)
        verdict, _ = group_membership(R)
        assert verdict.membership == "Spin"

    def test_rejects_non_bivector(self):
        with pytest.raises(ValueError):
            rotor_exp(Multivector.parse(Signature(3, 0), "e1"))


class TestSpacetime:
    def test_time_reflections(self):
        lam_s = gamma_upper(0)
        assert vector_rep_of_pin31(lam_s).matrix == (
            (1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1)
        )
        lam_t = gamma_upper(0) * spacetime_omega()
        assert vector_rep_of_pin31(lam_t).matrix == (
            (-1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)
        )

    def test_rejects_non_pin(self):
        with pytest.raises(ValueError):
            vector_rep_of_pin31(Multivector.scalar(SPACETIME, 2))

    def test_omega_squares_to_minus_one(self):
        w = spacetime_omega()
        assert w * w == -1

    def test_even_complex_split(self):
        z = Multivector.parse(SPACETIME, "1 + 2*e1^e4 - 3*e2^e3 + 5*e1^e2^e3^e4 + e1^e2")
        parts, rebuilt = even_complex_split(z)
        assert rebuilt == z
        assert len(parts) == 4

    def test_even_complex_split_rejects_odd(self):
        with pytest.raises(ValueError):
            even_complex_split(Multivector.parse(SPACETIME, "e1"))


class TestLieAlgebras:
    @pytest.mark.parametrize("sig", [Signature(3, 0), Signature(3, 1), Signature(2, 2), Signature(5, 0)])
    def test_spin(self, sig):
        audit = lie_algebra_audit(sig, "spin")
        assert audit.ok, audit.failures

    def test_u22(self):
        audit = lie_algebra_audit(Signature(4, 1), "u22")
        assert audit.ok and audit.dimension == 16

    def test_sp4(self):
        audit = lie_algebra_audit(SPACETIME, "sp4")
        assert audit.ok and audit.dimension == 10

    def test_wrong_signature(self):
        with pytest.raises(ValueError):
            lie_algebra_audit(Signature(3, 1), "u22")
        with pytest.raises(ValueError):
            lie_algebra_audit(Signature(3, 1), "so8")
