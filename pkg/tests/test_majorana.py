import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cliffkit.blade import Multivector
from cliffkit.dirac4d import C, GAMMA, is_majorana
from cliffkit.majorana import (
    GRASSMANN,
    SeesawBlock,
    bilinear,
    charge_conjugation_inverse,
    mass_term,
    mass_term_chiral_form,
    matrix_facts,
    seesaw_masses,
    sterile_embedding,
    u1_current,
)


def theta(i):
    return Multivector.basis(GRASSMANN, i)


class TestMatrices:
    def test_inverse(self):
        Ci = charge_conjugation_inverse()
        assert np.array_equal(Ci @ C, np.eye(4))
        assert np.array_equal(Ci, -C)

    def test_facts(self):
        facts = matrix_facts()
        assert facts and all(facts.values())

    @pytest.mark.parametrize("mu", range(4))
    def test_c_gamma_symmetric(self, mu):
        M = C @ GAMMA[mu]
        assert np.array_equal(M, M.T)


class TestMassTerm:
    def test_commuting_vanishes(self):
        assert mass_term("commuting").is_zero
        assert str(mass_term("commuting")) == "0"

    def test_anticommuting_oracle(self):
        # sum_{a<b} 2 (C^-1)_ab theta_a theta_b, from the exterior algebra expansion
        Ci = charge_conjugation_inverse().real.astype(int)
        expected = Multivector.zero(GRASSMANN)
        for a in range(4):
            for b in range(a + 1, 4):
                expected = expected + 2 * int(Ci[a, b]) * (theta(a + 1) * theta(b + 1))
        got = mass_term("anticommuting")
        assert not got.is_zero
        assert got.prefactor == "i"
        assert got.real == expected
        assert not got.imag
        assert expected == -2 * (theta(1) * theta(2) + theta(3) * theta(4))
        assert str(got) == "i*(-2*theta1^theta2 - 2*theta3^theta4)"

    def test_chiral_form(self):
        for kind in ("commuting", "anticommuting"):
            a, b = mass_term(kind), mass_term_chiral_form(kind)
            assert a.real == b.real and a.imag == b.imag

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            mass_term("bosonic")


class TestCurrent:
    @pytest.mark.parametrize("mu", range(4))
    def test_anticommuting_vanishes(self, mu):
        assert u1_current("anticommuting", mu).is_zero

    def test_commuting_nonzero(self):
        cur = u1_current("commuting", 0)
        assert not cur.is_zero
        psi = sympy.symbols("psi1:5")
        value = cur.real.subs({psi[0]: 1, psi[1]: 0, psi[2]: 0, psi[3]: 0})
        assert value == int((C @ GAMMA[0])[0, 0].real)

    def test_bad_index(self):
        with pytest.raises(ValueError):
            u1_current("commuting", 4)

    def test_non_integer_matrix(self):
        with pytest.raises(ValueError):
            bilinear(np.eye(4) * 0.5, "commuting")


class TestSeesaw:
    def test_decoupled(self):
        r = seesaw_masses(SeesawBlock(0.0, 5.0))
        assert r.eigenvalues == (5.0, 0.0)
        assert r.m_light == 0 and r.M_heavy == 5

    def test_example(self):
        r = seesaw_masses(SeesawBlock(1.0, 100.0))
        assert r.M_heavy == pytest.approx(100.00999900019994, rel=1e-15)
        assert r.m_light == pytest.approx(0.009999000199950016, rel=1e-15)
        assert r.approx_light == pytest.approx(0.01)
        assert r.rel_err_light < 1e-3
        assert r.hierarchical

    @given(st.floats(1e-6, 1e3), st.floats(1e-3, 1e6))
    def test_characteristic_polynomial(self, y, M):
        r = seesaw_masses(SeesawBlock(y, M))
        lp, lm = r.eigenvalues
        scale = max(abs(lp), abs(lm))
        assert abs(lp + lm - M) <= 1e-15 * scale
        assert abs(lp * lm + y * y) <= 1e-15 * y * y
        # numpy eigenvalues as an independent oracle
        ev = np.linalg.eigvalsh(np.array([[0.0, y], [y, M]]))
        assert np.allclose(sorted([lm, lp]), ev, rtol=1e-9, atol=1e-12 * M)

    @given(st.floats(1e-6, 10), st.floats(100, 1e6))
    def test_approximation_bound(self, y, M):
        r = seesaw_masses(SeesawBlock(y, M))
        # exact error is r^2 (1 - r^2 + ...); allow rounding when r^4 is below resolution
        assert r.rel_err_light <= (y / M) ** 2 * (1 + 1e-15)
        direct = abs(r.approx_light - r.m_light) / r.m_light
        assert r.rel_err_light == pytest.approx(direct, rel=1e-6, abs=1e-15)

    @given(st.floats(0.1, 10), st.floats(1, 100), st.floats(1.01, 10))
    def test_monotone(self, y, M, factor):
        assert seesaw_masses(SeesawBlock(y, M * factor)).m_light < seesaw_masses(SeesawBlock(y, M)).m_light

    @pytest.mark.parametrize("M", [0.0, -1.0, float("nan")])
    def test_rejects(self, M):
        with pytest.raises(ValueError):
            SeesawBlock(1.0, M)

    def test_hierarchy_flag(self):
        assert not SeesawBlock(20.0, 100.0).hierarchical


class TestSterile:
    def test_examples(self):
        assert is_majorana(sterile_embedding([1, 0]))
        assert np.array_equal(sterile_embedding([0, 0]), np.zeros(4))

    def test_random(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            N = sterile_embedding(rng.normal(size=2) + 1j * rng.normal(size=2))
            assert is_majorana(N, tol=1e-14)

    def test_shape(self):
        with pytest.raises(ValueError):
            sterile_embedding([1, 2, 3])
