from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hardyfactor.errors import NoDeepZeroError
from hardyfactor.poly import ExactComplex, Polynomial
from hardyfactor.structured import StructuredFunction, structured_combine
from hardyfactor.wronskian import (
    CoefficientVector,
    WronskianMatrix,
    independence_check,
    nullspace_coefficients,
    wronskian,
    wronskian_exact,
    wronskian_matrix_at,
    wronskian_structured,
)
from hardyfactor.wronskian import _direct_structured
from hardyfactor.zeros import multiplicity_at

from .conftest import atom, cplx, poly_f, random_disk_points

small = st.integers(-4, 4)
gauss = st.builds(lambda a, b, c: ExactComplex(Fraction(a, c), b), small, small, st.integers(1, 3))
exact_polys = st.lists(gauss, min_size=1, max_size=5).map(Polynomial.exact)
tuples = st.lists(exact_polys, min_size=2, max_size=4)


def X(*c):
    return Polynomial.exact(list(c))


ONE, Z, Z2 = X(1), X(0, 1), X(0, 0, 1)


class TestExactEngine:
    def test_examples(self):
        assert wronskian_exact([ONE, Z]) == X(1)
        assert wronskian_exact([ONE, Z, Z2]) == X(2)
        assert wronskian_exact([ONE, Z2, X(2, 0, 2)]).is_zero

    def test_w_of_1_z2(self):
        assert wronskian_exact([ONE, Z2]) == X(0, 2)

    @given(tuples, st.data())
    def test_swap_flips_sign(self, ps, data):
        i, j = data.draw(st.sampled_from([(a, b) for a in range(len(ps)) for b in range(a + 1, len(ps))]))
        qs = list(ps)
        qs[i], qs[j] = qs[j], qs[i]
        assert wronskian_exact(qs) == -wronskian_exact(ps)

    @given(tuples, gauss, st.data())
    def test_scaling_one_input(self, ps, c, data):
        j = data.draw(st.integers(0, len(ps) - 1))
        qs = list(ps)
        qs[j] = qs[j] * Polynomial.exact([c])
        assert wronskian_exact(qs) == wronskian_exact(ps) * Polynomial.exact([c])

    @given(tuples, st.lists(gauss, min_size=4, max_size=4), st.data())
    def test_replacing_with_combination(self, ps, lam, data):
        lam = lam[: len(ps)]
        k = data.draw(st.integers(0, len(ps) - 1))
        if not lam[k]:
            return
        g = Polynomial.zero("exact")
        for c, p in zip(lam, ps):
            g = g + p * Polynomial.exact([c])
        qs = list(ps)
        qs[k] = g
        assert wronskian_exact(qs) == wronskian_exact(ps) * Polynomial.exact([lam[k]])

    @given(tuples)
    def test_zero_iff_dependent(self, ps):
        # dependence of polynomials is a rank question on the coefficient matrix
        width = max(len(p.coeffs) for p in ps)
        rows = [[complex(c) for c in p.coeffs] + [0] * (width - len(p.coeffs)) for p in ps]
        dependent = np.linalg.matrix_rank(np.array(rows, dtype=complex), tol=1e-9) < len(ps)
        assert wronskian_exact(ps).is_zero == dependent


class TestStructuredEngine:
    def test_s_zs_is_s_squared(self):
        s = atom()
        w = wronskian_structured([s, poly_f([0, 1]) * s])
        zs = random_disk_points(10, 20)
        assert np.allclose(w(zs), s(zs) ** 2, rtol=1e-9)

    def test_f_f_vanishes(self):
        f = atom(0.7) + poly_f([0.2, 1])
        w = wronskian_structured([f, f]).collect()
        assert w.is_zero or np.allclose(w(random_disk_points(11, 20)), 0, atol=1e-12)

    def test_1_s_is_derivative(self):
        c = 0.6
        s = atom(c)
        w = wronskian_structured([StructuredFunction.constant(1.0), s])
        zs = random_disk_points(12, 20)
        assert np.allclose(w(zs), -2 * c / (1 - zs) ** 2 * s(zs), rtol=1e-12)
        assert np.allclose(w(zs), s.derivative()(zs), rtol=1e-12)

    def test_three_functions_oracle(self, oracles):
        s = atom()
        fs = [s, poly_f([0, 1]) * s, poly_f([0, 0, 1]) * s]
        w = wronskian(fs)
        for rec in oracles["wronskian_s_zs_z2s"]:
            z = cplx(rec["z"])
            assert w(z) == pytest.approx(cplx(rec["value"]), rel=1e-9)
            assert w(z) == pytest.approx(2 * s(z) ** 3, rel=1e-9)

    def test_proportional_inputs_vanish_identically(self):
        f = atom(0.7) + poly_f([0.2, 1]) * atom(0.3, -1)
        assert wronskian_structured([f, f.scale(2 - 1j)]).is_zero

    def test_multilinear_matches_direct_expansion(self):
        rng = np.random.default_rng(15)
        for _ in range(10):
            fs = [atom(float(rng.uniform(0.2, 2))) + poly_f(rng.normal(size=2)) * atom(0.5, -1) for _ in range(3)]
            zs = random_disk_points(int(rng.integers(1 << 30)), 10)
            a = wronskian_structured(fs)(zs)
            b = _direct_structured([f.collect() for f in fs])(zs)
            assert np.allclose(a, b, rtol=1e-9, atol=1e-12 * np.max(np.abs(b)))

    def test_matrix_determinant_agrees(self):
        fs = [atom(0.8), poly_f([0.5, 1]) * atom(0.4, 1j), poly_f([0, 0, 1])]
        w = wronskian_structured(fs)
        for z in random_disk_points(16, 10, 0.8):
            det = wronskian_matrix_at(fs, complex(z)).determinant
            assert det == pytest.approx(w(complex(z)), rel=1e-9)

    def test_replacing_with_combination(self):
        rng = np.random.default_rng(13)
        for _ in range(5):
            fs = [atom(float(rng.uniform(0.2, 2))), poly_f(rng.normal(size=3)) * atom(0.5, -1), poly_f(rng.normal(size=2))]
            lam = rng.normal(size=3) + 1j * rng.normal(size=3)
            g = structured_combine(fs, lam)
            zs = random_disk_points(int(rng.integers(1 << 30)), 20)
            w = wronskian_structured(fs)(zs)
            for k in range(3):
                wk = wronskian_structured(fs[:k] + [g] + fs[k + 1 :])(zs)
                assert np.all(np.abs(wk - lam[k] * w) <= 1e-9 * np.abs(lam[k] * w) + 1e-15)


class TestMatrix:
    def test_examples(self):
        m = wronskian_matrix_at([ONE, Z], 0.5)
        assert np.allclose(m.entries, [[1, 0.5], [0, 1]])
        m = wronskian_matrix_at([ONE, Z2], 0)
        assert np.allclose(m.entries, [[1, 0], [0, 0]])
        assert m.gap == 0

    def test_cross_engine(self):
        rng = np.random.default_rng(14)
        for _ in range(50):
            n = int(rng.integers(1, 4))
            ps = [Polynomial.exact([ExactComplex(int(rng.integers(-5, 6)), int(rng.integers(-5, 6))) for _ in range(int(rng.integers(1, 8)))]) for _ in range(n + 1)]
            w = wronskian_exact(ps)
            for z in random_disk_points(int(rng.integers(1 << 30)), 4):
                det = wronskian_matrix_at(ps, complex(z)).determinant
                ref = complex(w.to_float()(complex(z)))
                assert abs(det - ref) <= 1e-9 * max(abs(ref), 1.0)


class TestNullspace:
    def test_kernel_by_inspection(self):
        m = WronskianMatrix(np.array([[1, 0], [0, 0]], dtype=complex), 0j, 1)
        lam = nullspace_coefficients(m)
        assert np.allclose(lam.lambdas, [0, 1])

    def test_identity_has_no_deep_zero(self):
        m = WronskianMatrix(np.eye(2, dtype=complex), 0j, 1)
        with pytest.raises(NoDeepZeroError):
            nullspace_coefficients(m)

    def test_witness_is_a_deep_zero(self):
        fs = [ONE, Z2]
        lam = nullspace_coefficients(wronskian_matrix_at(fs, 0))
        g = structured_combine([poly_f([1]), poly_f([0, 0, 1])], lam.lambdas)
        assert multiplicity_at(g, 0, 4) >= 2

    def test_normalization(self):
        m = WronskianMatrix(np.array([[1, 2j], [2, 4j]], dtype=complex), 0j, 1)
        lam = nullspace_coefficients(m)
        assert max(abs(c) for c in lam) == pytest.approx(1)
        assert lam.residual <= 1e-12

    def test_trivial_vector_rejected(self):
        with pytest.raises(ValueError):
            CoefficientVector((0, 0))


class TestIndependence:
    def test_exact(self):
        assert independence_check([ONE, Z, Z2]).independent
        v = independence_check([ONE, Z2, X(2, 0, 2)])
        assert not v.independent and v.exact

    def test_structured(self):
        s = atom()
        v = independence_check([s, poly_f([0, 1]) * s, poly_f([0, 0, 1]) * s])
        assert v.independent and not v.exact

    def test_structured_dependent(self):
        s = atom()
        v = independence_check([s, s.scale(2.0)])
        assert not v.independent
