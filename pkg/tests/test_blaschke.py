import numpy as np
import pytest
from conftest import (
    blaschke_rational,
    boundary_example_data,
    boundary_example_target,
    fd_phasar,
    interior_example_data,
)

from royalgamma import generate_h_nu
from royalgamma.blaschke import (
    build_parametrization,
    circle_grid,
    disc_grid,
    phasar_derivative,
    solve_blaschke,
    to_blaschke_product,
)
from royalgamma.errors import ExceptionalZeta, NotInner, ZeroOrPoleAtPoint
from royalgamma.gamma import extract_royal_data
from royalgamma.pick import BlaschkeData, build_pick_matrix, choose_tau
from royalgamma.polyrat import Poly, RationalFn, poly_allclose, poly_eval


def build_for(data, tau=None):
    m = build_pick_matrix(data)
    if tau is None:
        tau = choose_tau(m, data)
    return build_parametrization(m, data, tau)


class TestPhasarDerivative:
    def test_identity_function(self):
        f = RationalFn(Poly([0.0, 1.0]), Poly([1.0]))
        for z in [1.0, 1j, np.exp(0.3j)]:
            assert float(phasar_derivative(f, z)) == pytest.approx(1.0)

    def test_single_factor_at_one(self):
        # rate of change of the argument of (z - 1/2)/(1 - z/2) at z = 1:
        # (1 - |1/2|^2)/|1 - 1/2|^2 = 3
        f = blaschke_rational([0.5])
        assert float(phasar_derivative(f, 1.0)) == pytest.approx(3.0)

    def test_generator_p_component(self):
        h = generate_h_nu(0, 0.5)
        val = phasar_derivative(h.p, -1.0)
        assert float(val) == pytest.approx(4.0)
        assert val.imag_residual <= 1e-12
        assert float(val) == pytest.approx(fd_phasar(h.p, -1.0), abs=1e-5)

    def test_zero_or_pole_rejected(self):
        f = blaschke_rational([0.5])
        with pytest.raises(ZeroOrPoleAtPoint):
            phasar_derivative(f, 0.5)
        with pytest.raises(ZeroOrPoleAtPoint):
            phasar_derivative(f, 2.0)


class TestBuildParametrization:
    def test_interior_closed_form_any_tau(self):
        data = interior_example_data()
        eta = 0.5
        for tau in [1.0 + 0j, np.exp(1.9j)]:
            param = build_for(data, tau)
            tb = np.conj(tau)
            denom = 1 - eta**2
            assert poly_allclose(param.a, Poly([-(eta**2) / denom, tb / denom]), atol=1e-12)
            assert poly_allclose(param.b, Poly([eta / denom, -eta * tb / denom]), atol=1e-12)
            assert poly_allclose(param.c, Poly([-eta / denom, eta * tb / denom]), atol=1e-12)
            assert poly_allclose(param.d, Poly([1 / denom, -(eta**2) * tb / denom]), atol=1e-12)

    def test_interior_closed_form_tau_one(self):
        param = build_for(interior_example_data(), 1.0)
        scale = 0.75
        assert poly_allclose(param.a, Poly([-0.25 / scale, 1.0 / scale]), atol=1e-12)
        assert poly_allclose(param.b, Poly([0.5 / scale, -0.5 / scale]), atol=1e-12)
        assert poly_allclose(param.c, Poly([-0.5 / scale, 0.5 / scale]), atol=1e-12)
        assert poly_allclose(param.d, Poly([1.0 / scale, -0.25 / scale]), atol=1e-12)

    def test_boundary_closed_form(self):
        data = boundary_example_data()
        param = build_for(data)
        tau = param.tau
        eta, rho = 1j, 1.0
        tb = np.conj(tau)
        sq = rho * abs(1 - tau) ** 2
        a_cf = Poly([1 / (1 - tau) - 1 / sq, -1 / (1 - tau) + tb / sq])
        b_cf = Poly([eta / sq, -eta * tb / sq])
        c_cf = Poly([-np.conj(eta) / sq, np.conj(eta) * tb / sq])
        d_cf = Poly([1 / sq + 1 / (1 - tau), -tb / sq - 1 / (1 - tau)])
        assert poly_allclose(param.a, a_cf, atol=1e-12)
        assert poly_allclose(param.b, b_cf, atol=1e-12)
        assert poly_allclose(param.c, c_cf, atol=1e-12)
        assert poly_allclose(param.d, d_cf, atol=1e-12)

    def test_normalization_at_tau(self, solvable_instances):
        for data, _ in solvable_instances[:20]:
            param = build_for(data)
            assert param.normalization_residual() <= 1e-9

    def test_c_bounded_by_d_on_disc(self, solvable_instances):
        grid = disc_grid(256)
        for data, _ in solvable_instances[:20]:
            param = build_for(data)
            excess = np.abs(poly_eval(param.c, grid)) - np.abs(poly_eval(param.d, grid))
            assert float(np.max(excess)) <= 1e-8

    def test_max_degree_is_n(self, solvable_instances):
        for data, _ in solvable_instances[:20]:
            param = build_for(data)
            assert param.degree == data.n


class TestSolveBlaschke:
    def test_zero_target_gives_rotation(self):
        data = BlaschkeData(sigma=(0j,), eta=(0j,), rho=(), k=0)
        param = build_for(data, 1.0)
        for zeta in [1.0, 1j, np.exp(0.77j)]:
            phi = solve_blaschke(param, zeta)
            assert phi.den.degree == 0
            assert poly_allclose(phi.num, Poly([0.0, zeta]), atol=1e-12)

    def test_interpolation_anchors(self):
        param = build_for(interior_example_data(), 1.0)
        phi = solve_blaschke(param, 1.0)
        assert phi(1.0) == pytest.approx(1.0)
        assert phi(0.0) == pytest.approx(0.5)

    def test_boundary_phasar_condition(self):
        data = boundary_example_data()
        param = build_for(data)
        phi = solve_blaschke(param, np.exp(0.9j))
        assert fd_phasar(phi, 1.0) == pytest.approx(1.0, abs=1e-8)

    def test_exceptional_zeta_rejected(self):
        data = boundary_example_data()
        param = build_for(data)
        assert any(abs(z - 1j) < 1e-9 for z in param.exceptional.points)
        with pytest.raises(ExceptionalZeta):
            solve_blaschke(param, 1j)

    def test_family_properties(self, solvable_instances):
        for data, _ in solvable_instances[:12]:
            param = build_for(data)
            for zeta in circle_grid(16):
                zeta = complex(zeta)
                try:
                    phi = solve_blaschke(param, zeta)
                except ExceptionalZeta:
                    continue
                assert abs(phi(param.tau) - zeta) <= 1e-8
                for j in range(data.n):
                    assert abs(phi(data.sigma[j]) - data.eta[j]) <= 1e-7
                for j in range(data.k):
                    assert abs(float(phasar_derivative(phi, data.sigma[j])) - data.rho[j]) <= 1e-7
                assert phi.num.degree == data.n
                ring = circle_grid(256)
                assert float(np.max(np.abs(np.abs(phi(ring)) - 1.0))) <= 1e-9

    def test_solution_is_unique_for_fixed_zeta(self):
        data = boundary_example_data()
        param = build_for(data)
        zeta = np.exp(1.234j)
        p1 = solve_blaschke(param, zeta)
        p2 = solve_blaschke(param, zeta)
        assert poly_allclose(p1.num, p2.num, atol=0.0)
        assert poly_allclose(p1.den, p2.den, atol=0.0)

    def test_uniqueness_across_base_points(self):
        # a solution built from one base point, pinned at a second base point,
        # must be reproduced by the second parametrization
        data = extract_royal_data(generate_h_nu(0, 0.5))
        m = build_pick_matrix(data)
        tau1 = choose_tau(m, data, start=1)
        tau2 = choose_tau(m, data, start=7)
        assert abs(tau1 - tau2) > 1e-6
        param1 = build_parametrization(m, data, tau1)
        param2 = build_parametrization(m, data, tau2)
        phi1 = solve_blaschke(param1, np.exp(0.31j))
        phi2 = solve_blaschke(param2, phi1(tau2))
        assert poly_allclose(phi1.num, phi2.num, atol=1e-9)
        assert poly_allclose(phi1.den, phi2.den, atol=1e-9)


class TestToBlaschkeProduct:
    def test_identity(self):
        f = RationalFn(Poly([0.0, 1.0]), Poly([1.0]))
        product = to_blaschke_product(f)
        assert product.unimodular_constant == pytest.approx(1.0)
        assert product.zeros == (0.0,)

    def test_single_factor_with_sign(self):
        f = blaschke_rational([0.25], constant=-1.0)
        product = to_blaschke_product(f)
        assert product.unimodular_constant == pytest.approx(-1.0)
        assert abs(product.zeros[0] - 0.25) <= 1e-12

    def test_boundary_example_p_component(self):
        # for the one-boundary-node closed form, the second component is a
        # degree-1 product with zero (2 rho - conj(kappa))/(1 + 2 rho)
        eta, rho = 1j, 1.0
        for kappa in [1.0 + 0j, np.exp(2.1j)]:
            h = boundary_example_target(eta, rho, kappa)
            product = to_blaschke_product(h.p)
            alpha = (2 * rho - np.conj(kappa)) / (1 + 2 * rho)
            assert abs(product.zeros[0] - alpha) <= 1e-10
            assert abs(product.unimodular_constant - eta**2 * kappa) <= 1e-10

    def test_roundtrip_evaluation(self):
        f = blaschke_rational([0.3 + 0.2j, -0.4j], constant=np.exp(0.9j))
        product = to_blaschke_product(f)
        pts = 0.8 * circle_grid(17)
        np.testing.assert_allclose(product(pts), f(pts), atol=1e-10)

    def test_not_inner_rejected(self):
        with pytest.raises(NotInner):
            to_blaschke_product(RationalFn(Poly([0.0, 2.0]), Poly([1.0])))
