import numpy as np
import pytest
from hypothesis import given, strategies as st

from hardyfactor.errors import ContourTooCloseError, DomainError, LinearDependenceError, ZeroBudgetError
from hardyfactor.poly import Polynomial
from hardyfactor.structured import FrostmanShift, StructuredFunction, structured_combine
from hardyfactor.wronskian import wronskian_exact
from hardyfactor.zeros import (
    blaschke_sum,
    contour_count,
    count_zeros,
    deep_zero_set,
    locate_zeros,
    multiplicity_at,
    zero_inventory,
)

from .conftest import ONE_MINUS_Z4, atom, cplx, poly_f

disk_roots = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.85), st.floats(0, 2 * np.pi))


def X(*c):
    return Polynomial.exact(list(c))


class TestCount:
    def test_z_squared(self):
        assert count_zeros(Polynomial.float([0, 0, 1]), 0, 0.5) == 2

    @pytest.mark.parametrize("center,radius", [(0, 0.5), (0.3j, 0.6), (0, 0.999)])
    def test_singular_inner_is_zero_free(self, center, radius):
        assert count_zeros(atom(), center, radius) == 0

    def test_frostman_numerator(self, oracles):
        f = FrostmanShift(atom(), 0.3).numerator()
        n = count_zeros(f, 0, 0.999)
        assert n >= 1
        assert n == len(oracles["frostman_zeros_0p3_r0p999"])

    def test_heavy_boundary_zero_not_counted(self):
        assert count_zeros(poly_f(ONE_MINUS_Z4) * atom(), 0, 0.999) == 0

    def test_nudges_off_a_zero_on_the_contour(self):
        c = contour_count(Polynomial.float([-0.5, 1]), 0, 0.5)
        assert c.radius != 0.5 and c.count == (1 if c.radius > 0.5 else 0)

    def test_identically_zero_function(self):
        with pytest.raises(ContourTooCloseError):
            count_zeros(Polynomial.zero("float"), 0, 0.5)

    def test_circle_must_be_inside(self):
        with pytest.raises(DomainError):
            count_zeros(atom(), 0.5, 0.6)


class TestLocate:
    def test_quadratic(self):
        recs = locate_zeros(Polynomial.float([-0.25, 0, 1]), 0.9)
        assert [r.multiplicity for r in recs] == [1, 1]
        assert np.allclose(sorted(r.location.real for r in recs), [-0.5, 0.5], atol=1e-12)

    def test_wronskian_of_1_z2(self):
        recs = locate_zeros(wronskian_exact([X(1), X(0, 0, 1)]).to_float(), 0.9)
        assert len(recs) == 1 and recs[0].multiplicity == 1 and abs(recs[0].location) < 1e-12

    def test_frostman_zeros_against_closed_form(self, oracles):
        f = FrostmanShift(atom(), 0.3).numerator()
        expected = [cplx(p) for p in oracles["frostman_zeros_0p3_r0p999"]]
        got = locate_zeros(f, 0.99)
        inside = [z for z in expected if abs(z) < 0.99]
        assert len(got) == len(inside)
        for rec in got:
            assert rec.multiplicity == 1
            assert min(abs(rec.location - z) for z in inside) <= 1e-9
            assert abs(f(rec.location)) <= rec.residual

    def test_structured_cluster(self):
        f = poly_f([0.25, -1, 1]) * atom(0.5)
        recs = locate_zeros(f, 0.9)
        assert len(recs) == 1 and recs[0].multiplicity == 2
        assert abs(recs[0].location - 0.5) < 1e-6

    def test_budget(self):
        with pytest.raises(ZeroBudgetError):
            locate_zeros(Polynomial.from_roots([0.1 * k for k in range(6)]), 0.9, max_zeros=3)

    def test_sorted_output(self):
        recs = locate_zeros(Polynomial.from_roots([0.5j, -0.3, 0.3, 0.7]), 0.9)
        assert np.allclose([r.location for r in recs], [0.3, -0.3, 0.5j, 0.7], atol=1e-9)

    @given(st.lists(disk_roots, min_size=1, max_size=5), st.floats(0.05, 0.95))
    def test_count_equals_located_multiplicity(self, roots, radius):
        p = Polynomial.from_roots(roots)
        try:
            c = contour_count(p, 0, radius)
        except ContourTooCloseError:
            return
        recs = locate_zeros(p, c.radius)
        assert sum(r.multiplicity for r in recs) == c.count


class TestMultiplicity:
    def test_examples(self):
        assert multiplicity_at(Polynomial.float([0, 0, 0, 1]), 0, 5) == 3
        assert multiplicity_at(Polynomial.float([1, 1]), 0, 5) == 0

    def test_saturates(self):
        assert multiplicity_at(Polynomial.float([0, 0, 0, 0, 0, 0, 1]), 0, 3) == 4

    def test_structured(self):
        f = poly_f([0.25, -1, 1]) * atom(0.5)
        assert multiplicity_at(f, 0.5, 4) == 2


class TestInventory:
    def test_polynomial_exact(self):
        recs = zero_inventory(X(-1, 0, 4), 0.9)
        assert {r.method for r in recs} == {"exact-root"}
        assert len(recs) == 2

    def test_blaschke_sum(self):
        recs = zero_inventory(Polynomial.from_roots([0.5, 0.5, -0.9j]), 0.95)
        assert blaschke_sum(recs) == pytest.approx(1.1)

    def test_structured_single_measure(self):
        recs = zero_inventory(poly_f([-0.3, 1]) * poly_f([0.25, 1]) * atom(), 0.9)
        assert sorted(round(r.location.real, 9) for r in recs) == [-0.25, 0.3]


class TestDeepZeros:
    def test_one_z_squared(self):
        certs = deep_zero_set([X(1), X(0, 0, 1)])
        assert len(certs) == 1
        c = certs[0]
        assert abs(c.point) < 1e-12 and c.order == 1
        assert np.allclose(c.witness.lambdas, [0, 1], atol=1e-12)
        assert c.multiplicity >= 2

    def test_one_z_has_none(self):
        assert deep_zero_set([X(1), X(0, 1)]) == []

    def test_one_z_z3(self):
        certs = deep_zero_set([X(1), X(0, 1), X(0, 0, 0, 1)])
        assert len(certs) == 1
        assert np.allclose(certs[0].witness.lambdas, [0, 0, 1], atol=1e-12)
        assert certs[0].multiplicity >= 3

    def test_dependent_rejected(self):
        with pytest.raises(LinearDependenceError):
            deep_zero_set([X(1), X(0, 0, 1), X(2, 0, 2)])

    def test_structured_tuple(self):
        # W(S, (z - 1/2)^2 S) = 2 (z - 1/2) S^2 vanishes only at 1/2
        s = atom()
        certs = deep_zero_set([s, poly_f([0.25, -1, 1]) * s], radius=0.9)
        assert len(certs) == 1 and abs(certs[0].point - 0.5) < 1e-9
        assert certs[0].multiplicity >= 2

    def test_certificates_cover_wronskian_zeros(self):
        fs = [X(1, 0, 1), X(0, 1, 0, 1), X(0, 0, 0, 0, 1)]
        w = wronskian_exact(fs)
        certs = deep_zero_set(fs, radius=0.9)
        zeros = [z for z in np.roots(w.to_float().as_array()[::-1]) if abs(z) <= 0.9]
        assert len({round(c.point.real, 6) + 1j * round(c.point.imag, 6) for c in certs}) == len({round(z.real, 6) + 1j * round(z.imag, 6) for z in zeros})
        for c in certs:
            g = structured_combine([StructuredFunction.polynomial(f.to_float()) for f in fs], c.witness.lambdas)
            assert multiplicity_at(g, c.point, 6) >= 3

    def test_json(self):
        c = deep_zero_set([X(1), X(0, 0, 1)])[0].to_json()
        assert set(c) >= {"point", "order", "witness", "wronskian_value", "matrix_gap"}
