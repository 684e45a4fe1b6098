import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffkit.blade import Multivector, Signature
from cliffkit.matrep import (
    C2,
    CHARGE_CONJUGATION_PRODUCTS,
    KO_TABLE,
    SIGMA,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    WEYL_1P1_CHIRALITY,
    WEYL_1P1_GAMMA0,
    WEYL_1P1_GAMMA1,
    NoIrreducibleSolution,
    beta_matrix,
    charge_conjugation,
    charge_conjugation_tensor_form,
    chirality_from_coxeter,
    epsilon_formula,
    euclidean_generators,
    gamma_matrices,
    intertwining_defect,
    j_squared_formula,
    ko_signs,
    kron,
    majorana_class,
    primed_relation_sign,
    real_structure_signature,
    reducible_odd_generators,
    represent,
    weyl_1p1_solve,
    weyl_1p1_solve_sampled,
)

I2 = np.eye(2)


class TestGammaMatrices:
    def test_d2(self):
        rep = gamma_matrices(2)
        assert np.array_equal(rep.gammas[0], SIGMA1)
        assert np.array_equal(rep.gammas[1], SIGMA2)
        assert np.array_equal(rep.chirality, SIGMA3)

    def test_d4_euclidean(self):
        rep = gamma_matrices(4)
        for i in range(3):
            assert np.array_equal(rep.gammas[i], kron(SIGMA1, SIGMA[i]))
        assert np.array_equal(rep.gammas[3], kron(SIGMA2, I2))

    def test_d4_lorentzian(self):
        rep = gamma_matrices(4, lorentzian=True)
        assert np.array_equal(rep.gammas[0], kron(C2, I2))
        assert np.array_equal(rep.chirality, kron(SIGMA3, I2))
        assert rep.eta == (-1, 1, 1, 1)

    @pytest.mark.parametrize("D", range(1, 12))
    @pytest.mark.parametrize("lorentzian", [False, True])
    def test_clifford_relations(self, D, lorentzian):
        rep = gamma_matrices(D, lorentzian)
        assert rep.size == 2 ** (D // 2)
        assert rep.clifford_defect() < 1e-13
        for g, eta in zip(rep.gammas, rep.eta):
            # hermitean for square +1, antihermitean for square -1
            assert np.allclose(g.conj().T, eta * g)

    @pytest.mark.parametrize("D", [2, 4, 6, 8, 10])
    def test_chirality(self, D):
        chi = gamma_matrices(D).chirality
        assert np.array_equal(chi @ chi, np.eye(len(chi)))
        assert np.array_equal(chi.conj().T, chi)
        assert not np.any(chi.imag)
        for g in gamma_matrices(D).gammas:
            assert np.allclose(chi @ g, -g @ chi)

    @pytest.mark.parametrize("m", range(1, 6))
    def test_chirality_from_coxeter(self, m):
        assert np.allclose(chirality_from_coxeter(m), gamma_matrices(2 * m, True).chirality)

    @pytest.mark.parametrize("D", [0, 12, -1])
    def test_range(self, D):
        with pytest.raises(ValueError):
            gamma_matrices(D)

    def test_immutable(self):
        rep = gamma_matrices(4)
        with pytest.raises(ValueError):
            rep.gammas[0][0, 0] = 5

    def test_odd_dimension_appends_chirality(self):
        assert np.array_equal(gamma_matrices(5).gammas[4], gamma_matrices(4).chirality)
        assert np.array_equal(gamma_matrices(1).gammas[0], np.eye(1))

    def test_represent(self):
        sig = Signature(4, 0)
        gens = euclidean_generators(4)
        x = Multivector.parse(sig, "2 + 3*e1^e2")
        assert np.allclose(represent(x, gens), 2 * np.eye(4) + 3 * gens[0] @ gens[1])
        with pytest.raises(ValueError):
            represent(x, gens[:3])


class TestChargeConjugation:
    def test_examples(self):
        assert np.array_equal(charge_conjugation(2), C2)
        g = euclidean_generators(4)
        assert np.array_equal(charge_conjugation(4), g[2] @ g[0])
        assert np.array_equal(charge_conjugation(4), kron(I2, C2))
        assert np.array_equal(charge_conjugation(6), kron(C2, SIGMA3, C2))

    @pytest.mark.parametrize("D", sorted(CHARGE_CONJUGATION_PRODUCTS))
    def test_tensor_form_exact(self, D):
        C = charge_conjugation(D)
        assert np.array_equal(C, charge_conjugation_tensor_form(D))
        assert not np.any(C.imag)

    @pytest.mark.parametrize("D", [2, 4, 6, 8])
    def test_intertwining(self, D):
        defects = intertwining_defect(euclidean_generators(D), charge_conjugation(D))
        assert max(defects.values()) == 0

    @pytest.mark.parametrize("D", [2, 4, 6, 8, 10])
    def test_lorentzian_intertwining(self, D):
        rep = gamma_matrices(D, lorentzian=True)
        assert intertwining_defect(list(rep.gammas), rep.C)["vector"] == 0

    @pytest.mark.parametrize("D", [3, 5, 7, 9])
    def test_odd_reducible(self, D):
        gens = reducible_odd_generators(D)
        for primed in (False, True):
            C = charge_conjugation(D, primed=primed)
            assert max(intertwining_defect(gens, C).values()) < 1e-13
            assert not np.any(C.imag)

    @pytest.mark.parametrize("D,sign", [(3, 1), (5, -1), (7, 1), (9, -1)])
    def test_primed_relation_sign(self, D, sign):
        # conj(C') C' = (-1)^m conj(C) C for D = 2m - 1
        assert primed_relation_sign(D) == sign == (-1) ** ((D + 1) // 2)

    def test_cbar_c_odd(self):
        for D, expected in [(3, -1), (5, 1), (7, 1)]:
            C = charge_conjugation(D)
            assert np.allclose(C.conj() @ C, expected * np.eye(len(C)))

    @pytest.mark.parametrize("D", [3, 7, 11])
    def test_irreducible_exists(self, D):
        rep = gamma_matrices(D)
        assert rep.C is not None
        assert intertwining_defect(list(rep.gammas), rep.C)["vector"] < 1e-13

    @pytest.mark.parametrize("D", [5, 9])
    def test_irreducible_missing(self, D):
        with pytest.raises(NoIrreducibleSolution, match="reducible"):
            charge_conjugation(D, irreducible=True)
        assert gamma_matrices(D).C is None

    def test_irreducible_d3(self):
        C = charge_conjugation(3, irreducible=True)
        assert np.allclose(C, C2)

    def test_argument_errors(self):
        with pytest.raises(ValueError):
            charge_conjugation(4, primed=True)
        with pytest.raises(ValueError):
            charge_conjugation(11)
        with pytest.raises(ValueError):
            reducible_odd_generators(4)


class TestKO:
    @pytest.mark.parametrize("m", range(1, 6))
    def test_euclidean_formulas(self, m):
        ko = ko_signs(2 * m)
        assert ko.j_squared == (-1) ** (m * (m + 1) // 2)
        assert ko.epsilon == (-1) ** m
        assert ko.ko_dim == (2 * m) % 8

    @pytest.mark.parametrize("m", range(1, 6))
    def test_lorentzian_flip(self, m):
        e, lo = ko_signs(2 * m), ko_signs(2 * m, lorentzian=True)
        assert (lo.j_squared, lo.epsilon) == (-e.j_squared, -e.epsilon)
        assert lo.ko_dim == (1 - (2 * m - 1)) % 8

    def test_spacetime(self):
        assert ko_signs(4).as_json() == {"J2": -1, "eps": 1, "ko_dim": 4}
        assert ko_signs(4, lorentzian=True).as_json() == {"J2": 1, "eps": -1, "ko_dim": 6}
        assert ko_signs(2, lorentzian=True).j_squared == 1

    @given(st.integers(1, 40), st.booleans())
    def test_period_four(self, m, lorentzian):
        assert j_squared_formula(m + 4, lorentzian) == j_squared_formula(m, lorentzian)
        assert epsilon_formula(m + 4, lorentzian) == epsilon_formula(m, lorentzian)

    def test_table_is_bijective(self):
        assert sorted(KO_TABLE.values()) == [0, 2, 4, 6]

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            ko_signs(5)


class TestMajoranaClass:
    def test_examples(self):
        assert majorana_class(3, 1).kind == "majorana"
        assert majorana_class(9, 1).kind == "majorana_weyl"
        assert majorana_class(4, 0).kind == "none"
        assert majorana_class(3, 1).weyl == "weyl_complex"
        assert majorana_class(4, 0).weyl == "weyl_self"
        assert majorana_class(2, 1).weyl is None

    def test_sixteen_component_majorana_weyl(self):
        # a Weyl half of the 32-dim Cl(9,1) spinor, real for a Majorana-Weyl spinor
        assert gamma_matrices(10, lorentzian=True).size // 2 == 16

    @given(st.integers(0, 20), st.integers(0, 20))
    def test_rule(self, p, q):
        r = (p - q) % 8
        mc = majorana_class(p, q)
        assert (mc.kind != "none") == (r in (0, 1, 2))
        assert (mc.kind == "majorana_weyl") == (r == 0 and (p + q) % 2 == 0)

    @pytest.mark.parametrize("D", [2, 4, 6, 8, 10])
    def test_lorentzian_cross_check(self, D):
        has = majorana_class(D - 1, 1).kind != "none"
        assert has == (ko_signs(D, lorentzian=True).j_squared == 1)

    @pytest.mark.parametrize("D", [2, 4, 6, 8, 10])
    @pytest.mark.parametrize("lorentzian", [False, True])
    def test_realized_signature(self, D, lorentzian):
        rep = gamma_matrices(D, lorentzian)
        p, q = real_structure_signature(rep)
        assert (p, q) == ((D - 1, 1) if lorentzian else (0, D))
        ko = ko_signs(D, lorentzian)
        assert (majorana_class(p, q).kind != "none") == (ko.j_squared == 1)
        assert ko.ko_dim == (q - p) % 8

    def test_negative(self):
        with pytest.raises(ValueError):
            majorana_class(-1, 0)


class TestBeta:
    @pytest.mark.parametrize("D", [2, 4, 6])
    def test_beta(self, D):
        beta = beta_matrix(D)
        assert np.allclose(beta, beta.conj().T)
        for g in gamma_matrices(D, True).gammas:
            assert np.allclose(g.conj().T @ beta, -beta @ g)

    def test_b_symmetric_in_four_dimensions(self):
        B = gamma_matrices(4, True).B
        assert np.array_equal(B, B.T)

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            beta_matrix(3)


class TestWeyl1p1:
    def test_gammas(self):
        g0, g1 = WEYL_1P1_GAMMA0, WEYL_1P1_GAMMA1
        assert np.array_equal(g0 @ g0, -I2) and np.array_equal(g1 @ g1, I2)
        assert np.array_equal(g0 @ g1 + g1 @ g0, 0 * I2)
        assert np.array_equal(WEYL_1P1_CHIRALITY, SIGMA3.real)

    def test_solves_massless_equation(self):
        t, x = sympy.symbols("t x", real=True)
        fL, fR = sympy.Function("f_L"), sympy.Function("f_R")
        psi = sympy.Matrix([fL(x + t), fR(x - t)])
        g0 = sympy.Matrix(WEYL_1P1_GAMMA0.astype(int))
        g1 = sympy.Matrix(WEYL_1P1_GAMMA1.astype(int))
        residual = g0 * psi.diff(t) + g1 * psi.diff(x)
        assert sympy.simplify(residual) == sympy.zeros(2, 1)

    def test_right_mover(self):
        x = np.linspace(-5, 5, 1001)
        gauss = lambda y: np.exp(-(y ** 2))
        psi_L, psi_R = weyl_1p1_solve(lambda y: 0 * y, gauss, x, 1.0)
        assert x[np.argmax(psi_R)] == pytest.approx(1.0)
        assert not np.any(psi_L)
        assert np.isrealobj(psi_R)

    def test_identity_at_t0(self):
        x = np.linspace(-1, 1, 11)
        psi_L, psi_R = weyl_1p1_solve(np.sin, np.cos, x, 0.0)
        assert np.array_equal(psi_L, np.sin(x)) and np.array_equal(psi_R, np.cos(x))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(-50, 50))
    def test_sampled_matches_exact(self, k):
        n, dx = 200, 0.05
        x = np.arange(n) * dx
        period = n * dx
        f = lambda y: np.sin(2 * np.pi * y / period)
        g = lambda y: np.cos(4 * np.pi * y / period)
        L, R = weyl_1p1_solve_sampled(f(x), g(x), dx, k * dx)
        eL, eR = weyl_1p1_solve(f, g, x, k * dx)
        assert np.allclose(L, eL, atol=1e-12) and np.allclose(R, eR, atol=1e-12)

    def test_sampled_needs_whole_steps(self):
        with pytest.raises(ValueError):
            weyl_1p1_solve_sampled(np.zeros(4), np.zeros(4), 0.1, 0.05)
