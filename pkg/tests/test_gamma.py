import numpy as np
import pytest
from conftest import (
    blaschke_rational,
    boundary_example_data,
    boundary_example_target,
    interior_example_data,
    interior_example_target,
    superficial_map,
)

from royalgamma.blaschke import build_parametrization, circle_grid
from royalgamma.errors import (
    InvalidData,
    MultiplicityAboveOne,
    PreconditionViolated,
    RoyalRange,
    SingularPoint,
)
from royalgamma.gamma import (
    GammaInnerFn,
    PointClass,
    classify_point,
    construct_h,
    extract_royal_data,
    gamma_inner_distance,
    generate_h_nu,
    phi_omega,
    royal_nodes,
    royal_polynomial,
    solve_royal_problem,
    solve_s0_p0,
    verify_royal_solution,
)
from royalgamma.pick import BlaschkeData, build_pick_matrix, choose_tau
from royalgamma.polyrat import Poly, poly_allclose, poly_roots


def pipeline_parts(data):
    m = build_pick_matrix(data)
    tau = choose_tau(m, data)
    param = build_parametrization(m, data, tau)
    return m, tau, param


def royal_range_map():
    return GammaInnerFn.from_numerators(Poly([0.0, 2.0]), Poly([0.0, 0.0, 1.0]), Poly([1.0]))


class TestClassifyPoint:
    def test_origin_is_interior(self):
        assert classify_point((0j, 0j)) is PointClass.INTERIOR_G

    def test_two_one_is_distinguished(self):
        assert classify_point((2.0 + 0j, 1.0 + 0j)) is PointClass.DISTINGUISHED_BGAMMA

    def test_conjugate_pair_point(self):
        # (-2 eta, eta^2) for eta = i: s - conj(s) p = -2i + (2i)(-1)(-1)... = 0
        assert classify_point((-2j, -1.0 + 0j)) is PointClass.DISTINGUISHED_BGAMMA

    def test_outside(self):
        assert classify_point((3.0 + 0j, 0j)) is PointClass.OUTSIDE

    def test_boundary_but_not_distinguished(self):
        # (s, p) = (1, 0) comes from (z, w) = (1, 0): on the topological
        # boundary (|s - conj(s) p| = 1 - |p|^2) without |p| = 1
        assert classify_point((1.0 + 0j, 0j)) is PointClass.BOUNDARY_GAMMA


class TestPhiOmega:
    def test_zero_point(self):
        for omega in circle_grid(8):
            assert phi_omega(complex(omega), (0j, 0j)) == 0

    def test_royal_normalization(self):
        for omega in circle_grid(8):
            for lam in [0.3 + 0.4j, -0.7j, 0.9 + 0j]:
                val = phi_omega(complex(omega), (2 * lam, lam * lam))
                assert abs(val + lam) <= 1e-12

    def test_direct_substitution(self):
        assert phi_omega(1.0, (1.0 + 0j, 0j)) == pytest.approx(-1.0)

    def test_singularity(self):
        omega = np.exp(0.37j)
        with pytest.raises(SingularPoint):
            phi_omega(omega, (2 * np.conj(omega), np.conj(omega) ** 2))


class TestSolveS0P0:
    def test_interior_example_family(self):
        data = interior_example_data()
        _, _, param = pipeline_parts(data)
        sol = solve_s0_p0(param, data)
        assert sol.kind == "family"
        mem = sol.member(1.0)
        assert mem.s0 == pytest.approx(-8.0 / 5.0)
        assert mem.p0 == pytest.approx(1.0)

    def test_boundary_example_family(self):
        data = boundary_example_data()
        _, _, param = pipeline_parts(data)
        sol = solve_s0_p0(param, data)
        assert sol.kind == "family"
        mem = sol.member(1.0)
        assert abs(mem.s0) <= 1e-12
        assert mem.p0 == pytest.approx(1.0)
        # closed form for this data: s0 = -eta - omega^2 conj(eta)
        for omega in [np.exp(0.3j), np.exp(2.2j)]:
            mem = sol.member(omega)
            assert mem.s0 == pytest.approx(-1j - omega**2 * (-1j))

    def test_rejecting_member_at_extreme_t(self):
        data = boundary_example_data()
        _, _, param = pipeline_parts(data)
        sol = solve_s0_p0(param, data)
        # t = -Im(omega) hits -1 at omega = i, which is rejected
        assert sol.member(1j) is None

    def test_generator_data_is_unique(self):
        h = generate_h_nu(0, 0.5)
        data = extract_royal_data(h)
        _, tau, param = pipeline_parts(data)
        sol = solve_s0_p0(param, data)
        assert sol.kind == "unique"
        assert sol.s0 == pytest.approx(h.s(tau))
        assert sol.p0 == pytest.approx(h.p(tau))

    def test_perturbed_rho_unsolvable(self):
        data = extract_royal_data(generate_h_nu(1, 0.5))
        bad = BlaschkeData(
            sigma=data.sigma, eta=data.eta,
            rho=(data.rho[0] + 0.5,) + data.rho[1:], k=data.k,
        )
        _, _, param = pipeline_parts(bad)
        sol = solve_s0_p0(param, bad)
        assert sol.kind == "none"
        assert sol.residual > 1e-4

    def test_data_hash_guard(self):
        data = interior_example_data()
        _, _, param = pipeline_parts(data)
        other = boundary_example_data()
        with pytest.raises(InvalidData):
            solve_s0_p0(param, other)


class TestConstructH:
    def test_interior_example_member(self):
        data = interior_example_data()
        _, tau, param = pipeline_parts(data)
        sol = solve_s0_p0(param, data)
        target = interior_example_target(0.5, 1.0)
        omega = complex(np.sqrt(target.p(tau)))
        mem = sol.member(omega)
        h = construct_h(param, mem.s0, mem.p0)
        assert gamma_inner_distance(h, target) <= 1e-9
        pt = h(0.0)
        assert pt.s == pytest.approx(-1.0)
        assert pt.p == pytest.approx(0.25)

    def test_boundary_example_member(self):
        data = boundary_example_data()
        _, tau, param = pipeline_parts(data)
        sol = solve_s0_p0(param, data)
        target = boundary_example_target(1j, 1.0, 1.0)
        omega = complex(np.sqrt(target.p(tau)))
        mem = sol.member(omega)
        h = construct_h(param, mem.s0, mem.p0)
        assert gamma_inner_distance(h, target) <= 1e-9
        pt = h(1.0)
        assert abs(pt.s + 2j) <= 1e-10
        assert abs(pt.p + 1.0) <= 1e-10

    def test_base_values_anchored_at_tau(self):
        data = boundary_example_data()
        _, tau, param = pipeline_parts(data)
        sol = solve_s0_p0(param, data)
        mem = sol.member(np.exp(0.51j))
        h = construct_h(param, mem.s0, mem.p0)
        assert abs(h.s(tau) - mem.s0) <= 1e-12
        assert abs(h.p(tau) - mem.p0) <= 1e-12

    def test_precondition_violations(self):
        data = interior_example_data()
        _, _, param = pipeline_parts(data)
        with pytest.raises(PreconditionViolated):
            construct_h(param, 0.1, 0.5)  # |p0| != 1
        with pytest.raises(PreconditionViolated):
            construct_h(param, 2.5, 1.0)  # |s0| >= 2
        with pytest.raises(PreconditionViolated):
            construct_h(param, 0.2j, 1.0)  # s0 != conj(s0) p0
        with pytest.raises(PreconditionViolated):
            construct_h(param, 0.3, 1.0)  # off the family: identity violated


class TestRoyalNodes:
    def test_royal_range_flagged(self):
        with pytest.raises(RoyalRange):
            royal_nodes(royal_range_map())

    def test_generator_nodes(self):
        rd = royal_nodes(generate_h_nu(0, 0.5))
        assert rd.type_pair == (2, 1)
        (node_b, mult_b), (node_i, mult_i) = rd.nodes
        assert abs(node_b + 1.0) <= 1e-9 and mult_b == 1
        assert abs(node_i) <= 1e-9 and mult_i == 1
        assert abs(rd.values[0] - 1.0) <= 1e-9
        assert abs(rd.values[1]) <= 1e-9
        assert rd.boundary_rho[0] == pytest.approx(2.0)

    def test_interior_example_target_nodes(self):
        h = interior_example_target(0.5, np.exp(0.3j))
        rd = royal_nodes(h)
        assert rd.type_pair == (1, 0)
        assert abs(rd.nodes[0][0]) <= 1e-9
        assert abs(rd.values[0] - 0.5) <= 1e-9

    def test_higher_generator_boundary_nodes(self):
        rd = royal_nodes(generate_h_nu(1, 0.5))
        assert rd.type_pair == (4, 3)
        expected = [np.exp(1j * np.pi * (2 * j + 1) / 3) for j in range(3)]
        for (node, mult), ref in zip(rd.nodes[:3], expected):
            assert abs(node - ref) <= 1e-9
            assert mult == 1

    def test_even_boundary_orders_for_all_boundary_maps(self):
        rng = np.random.default_rng(2718)
        for _ in range(10):
            zeros = [complex(rng.uniform(0.05, 0.55) * np.exp(2j * np.pi * rng.uniform())) for _ in range(2)]
            p = blaschke_rational(zeros, complex(np.exp(2j * np.pi * rng.uniform())))
            beta = complex(np.exp(2j * np.pi * rng.uniform()))
            h = superficial_map(p, beta)
            royal, _ = royal_polynomial(h)
            for rc in poly_roots(royal):
                if abs(abs(rc.value) - 1.0) <= 1e-6:
                    assert rc.multiplicity % 2 == 0


class TestExtractRoyalData:
    def test_generator_roundtrip_values(self):
        data = extract_royal_data(generate_h_nu(0, 0.5))
        assert data.k == 1
        assert abs(data.sigma[0] + 1.0) <= 1e-9
        assert abs(data.sigma[1]) <= 1e-9
        assert abs(data.eta[0] - 1.0) <= 1e-9
        assert abs(data.eta[1]) <= 1e-9
        assert data.rho[0] == pytest.approx(2.0)

    def test_boundary_target_extraction(self):
        h = boundary_example_target(1j, 1.0, 1.0)
        data = extract_royal_data(h)
        assert data.k == 1
        assert abs(data.sigma[0] - 1.0) <= 1e-9
        assert abs(data.eta[0] - 1j) <= 1e-9
        assert data.rho[0] == pytest.approx(1.0)

    def test_multiplicity_above_one_rejected(self):
        h = generate_h_nu(0, 0.5)

        def square_sub(poly):
            out = np.zeros(2 * poly.coeffs.size - 1, dtype=complex)
            out[::2] = poly.coeffs
            return Poly(out)

        doubled = GammaInnerFn.from_numerators(
            square_sub(h.s.num), square_sub(h.p.num), square_sub(h.den)
        )
        with pytest.raises(MultiplicityAboveOne):
            extract_royal_data(doubled)

    def test_full_roundtrip_property(self, solvable_instances):
        for data, h in solvable_instances[:10]:
            again = extract_royal_data(h)
            assert again.n == data.n and again.k == data.k
            for a, b in zip(again.sigma, data.sigma):
                assert abs(a - b) <= 1e-7
            for a, b in zip(again.eta, data.eta):
                assert abs(a - b) <= 1e-7
            for a, b in zip(again.rho, data.rho):
                assert abs(a - b) <= 1e-7


class TestVerify:
    def test_wrong_rho_reported(self):
        h = generate_h_nu(0, 0.5)
        wrong = BlaschkeData(sigma=(-1.0 + 0j, 0j), eta=(1.0 + 0j, 0j), rho=(3.0,), k=1)
        report = verify_royal_solution(h, wrong)
        assert not report.passed
        assert report.residuals["phasar_p_max"] == pytest.approx(2.0)

    def test_royal_range_flag(self):
        data = BlaschkeData(sigma=(0.5 + 0j,), eta=(-0.5 + 0j,), rho=(), k=0)
        report = verify_royal_solution(royal_range_map(), data)
        assert report.royal_range
        assert not report.passed

    def test_json_shape(self):
        h = generate_h_nu(0, 0.5)
        data = extract_royal_data(h)
        obj = verify_royal_solution(h, data).to_json_dict()
        assert obj["pass"] is True
        assert "residuals" in obj and "degree" in obj


class TestGenerateHNu:
    def test_coefficients(self):
        h = generate_h_nu(0, 0.5)
        # monic denominator: s = 2 lambda/(lambda + 2), p = (2 lambda^2 + lambda)/(lambda + 2)
        assert poly_allclose(h.den, Poly([2.0, 1.0]), atol=1e-12)
        assert poly_allclose(h.s.num, Poly([0.0, 2.0]), atol=1e-12)
        assert poly_allclose(h.p.num, Poly([0.0, 1.0, 2.0]), atol=1e-12)
        assert h.degree == 2

    def test_degree_and_type(self):
        for nu, r in [(0, 0.3), (1, 0.5), (2, 0.7)]:
            h = generate_h_nu(nu, r)
            assert h.degree == 2 * nu + 2
            assert royal_nodes(h).type_pair == (2 * nu + 2, 2 * nu + 1)

    def test_boundary_values_on_distinguished_boundary(self):
        h = generate_h_nu(1, 0.5)
        for theta in np.linspace(0.0, 2 * np.pi, 64, endpoint=False):
            pt = h(np.exp(1j * theta))
            assert classify_point(pt) is PointClass.DISTINGUISHED_BGAMMA

    def test_parameter_validation(self):
        with pytest.raises(InvalidData):
            generate_h_nu(0, 1.5)
        with pytest.raises(InvalidData):
            generate_h_nu(-1, 0.5)


class TestGammaInnerFnSerialization:
    def test_roundtrip(self):
        h = generate_h_nu(1, 0.4)
        back = GammaInnerFn.from_json_dict(h.to_json_dict())
        assert gamma_inner_distance(h, back) <= 1e-12

    def test_mismatched_denominators_rejected(self):
        h = generate_h_nu(0, 0.5)
        obj = h.to_json_dict()
        obj["s"]["den"] = [[1.0, 0.0], [0.9, 0.0]]
        with pytest.raises(InvalidData):
            GammaInnerFn.from_json_dict(obj)


class TestConstructionInvariants:
    def test_construction_correctness_random_data(self, solvable_instances):
        # wherever base values exist, the constructed map verifies at 1e-7
        for data, _ in solvable_instances[:25]:
            result = solve_royal_problem(data, omega_grid=16, pass_tol=1e-7)
            assert result.status == "solved", (data, result.reason)
            assert result.verified, [s.report.failures for s in result.solutions]

    def test_completeness_for_generator_instances(self):
        for nu, r in [(0, 0.5), (0, 0.8), (1, 0.5)]:
            h = generate_h_nu(nu, r)
            data = extract_royal_data(h)
            result = solve_royal_problem(
                data, omega_grid=16,
                extra_omegas_fn=lambda tau: (complex(np.sqrt(h.p(tau))),),
            )
            best = min(gamma_inner_distance(h, s.h) for s in result.solutions)
            assert best <= 1e-6

    def test_phi_omega_constant_at_boundary_royal_nodes(self, solvable_instances):
        probes = np.exp(1j * np.pi * (2 * np.arange(8) + 1) / 8)
        for data, h in solvable_instances[:12]:
            for j in range(data.k):
                sigma, eta = data.sigma[j], data.eta[j]
                vals = []
                for omega in probes:
                    if abs(omega + np.conj(eta)) < 0.05:
                        continue
                    vals.append(phi_omega(complex(omega), h(sigma)))
                assert max(abs(v - eta) for v in vals) <= 1e-8

    def test_bounded_s_iff_c_dominated(self):
        # 100 random scalar tuples satisfying the base-value constraints
        rng = np.random.default_rng(515)
        done = 0
        while done < 100:
            omega = complex(np.exp(2j * np.pi * rng.uniform()))
            t = float(rng.uniform(-0.95, 0.95))
            s0, p0 = 2 * t * omega, omega * omega
            c = complex(rng.normal() + 1j * rng.normal())
            d = complex(rng.normal() + 1j * rng.normal())
            if abs(s0 * c - 2 * d) < 1e-6 or abs(abs(c) - abs(d)) <= 1e-9:
                continue
            s = 2 * (2 * p0 * c - s0 * d) / (s0 * c - 2 * d)
            assert (abs(s) <= 2.0) == (abs(c) <= abs(d))
            done += 1

    def test_composition_identity(self, solvable_instances):
        # 20 random (omega, lambda) pairs: the composed functional agrees with
        # the linear-fractional substitution zeta(omega) = (2 omega p0 - s0)/(2 - omega s0)
        rng = np.random.default_rng(616)
        checked = 0
        idx = 0
        while checked < 20:
            data, _ = solvable_instances[idx % len(solvable_instances)]
            idx += 1
            m = build_pick_matrix(data)
            tau = choose_tau(m, data)
            param = build_parametrization(m, data, tau)
            sol = solve_s0_p0(param, data)
            if sol.kind == "unique":
                s0, p0 = sol.s0, sol.p0
            elif sol.kind == "family":
                mem = sol.member(complex(np.exp(2j * np.pi * rng.uniform())))
                if mem is None:
                    continue
                s0, p0 = mem.s0, mem.p0
            else:
                continue
            h = construct_h(param, s0, p0)
            for _ in range(4):
                omega = complex(np.exp(2j * np.pi * rng.uniform()))
                lam = complex(rng.uniform(0.0, 0.9) * np.exp(2j * np.pi * rng.uniform()))
                if abs(2 - omega * h.s(lam)) < 1e-3 or abs(2 - omega * s0) < 1e-3:
                    continue
                zeta = (2 * omega * p0 - s0) / (2 - omega * s0)
                num = param.a(lam) * zeta + param.b(lam)
                den = param.c(lam) * zeta + param.d(lam)
                lhs = phi_omega(omega, h(lam))
                assert abs(lhs - num / den) <= 1e-9
                checked += 1
