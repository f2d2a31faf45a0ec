import cmath

import numpy as np
import pytest

from intlab import catalog as C
from intlab import flows as FL
from intlab.fields import Field
from intlab.ode import OdeError, integrate


class TestIntegrator:
    def test_exponential_oracle(self):
        sol = integrate(lambda t, y: y, 0, 2, [1.0])
        assert abs(sol.y_end[0] - np.exp(2)) < 1e-9

    def test_backward_integration(self):
        sol = integrate(lambda t, y: y, 0, -1, [1.0])
        assert abs(sol.y_end[0] - np.exp(-1)) < 1e-10

    def test_sample_points_are_step_exact(self):
        def f(x, y):
            q, p = y
            return np.array([p, q - 2 * q ** 3])

        xs = [0.5, 1.0, 1.5, 2.5]
        sol = integrate(f, 0, 3, [1.0, 0.0], t_eval=xs)
        for s in xs:
            assert abs(sol.samples[s][0] - 1 / np.cosh(s)) < 1e-9

    def test_dense_output_between_nodes(self):
        def f(x, y):
            q, p = y
            return np.array([p, q - 2 * q ** 3])

        sol = integrate(f, 0, 3, [1.0, 0.0])
        assert abs(sol(1.2345)[0] - 1 / np.cosh(1.2345)) < 1e-8

    def test_halving_tolerances_reduces_drift(self):
        e1 = abs(integrate(lambda t, y: y, 0, 5, [1.0], rtol=1e-6,
                           atol=1e-8).y_end[0] - np.exp(5))
        e2 = abs(integrate(lambda t, y: y, 0, 5, [1.0], rtol=1e-12,
                           atol=1e-14).y_end[0] - np.exp(5))
        assert e2 < e1 / 100

    def test_blowup_is_flagged_not_raised(self):
        sol = integrate(lambda t, y: y ** 2, 0, 2, [1.0])
        assert sol.singular and abs(sol.t_singular - 1.0) < 0.05

    def test_complex_rotation(self):
        sol = integrate(lambda t, y: 1j * y, 0, np.pi, [1.0 + 0j])
        assert abs(sol.y_end[0] + 1.0) < 1e-9

    def test_t_eval_outside_span_rejected(self):
        with pytest.raises(OdeError):
            integrate(lambda t, y: y, 0, 1, [1.0], t_eval=[2.0])


class TestConstrainedFlows:
    def test_space_flow_sech_oracle(self):
        st = FL.FlowState(q=[1.0], p=[0.0], c=[-2.0], lam=[1.0])
        sol = FL.integrate_F0(st, 3.0)
        assert abs(sol.y_end[0] - 1 / np.cosh(3)) < 1e-9

    def test_zero_state_invariant(self):
        st = FL.FlowState(q=[0.0], p=[0.0], c=[-1.7], lam=[0.9])
        assert np.max(np.abs(FL.integrate_F0(st, 2.0).y_end)) == 0.0
        assert np.max(np.abs(FL.integrate_F1(st, 1.0, start=0.0).y_end)) == 0.0

    def test_first_integral_is_conserved(self):
        st = FL.FlowState(q=[1.0], p=[0.0], c=[-2.0], lam=[1.0])
        sol = FL.integrate_F0(st, 2.0, x_eval=[0.5, 1.1, 1.7])
        v0 = FL.f0_first_integral(st)
        for y in sol.samples.values():
            vi = FL.f0_first_integral(
                FL.FlowState(q=[y[0]], p=[y[1]], c=[-2.0], lam=[1.0]))
            assert abs(vi - v0) < 1e-9

    def test_first_integral_restricted_to_single_component(self):
        st = FL.FlowState(q=[0.1, 0.2], p=[0, 0], c=[-1, -1], lam=[1, 2])
        with pytest.raises(ValueError):
            FL.f0_first_integral(st)

    def test_time_flow_tracks_boosted_profile(self):
        st = FL.soliton_state(1.0, x0=0.3)
        sol = FL.integrate_F1(st, 0.5, t_eval=[0.1, 0.25, 0.4], start=0.0)
        for tv, y in sol.samples.items():
            assert abs(y[0] - 1 / np.cosh(0.3 - 4 * tv)) < 1e-9

    @pytest.mark.parametrize("N,lam", [(1, [1.0]), (2, [1.0, 2.3])])
    def test_cross_consistency(self, N, lam):
        rng = np.random.default_rng(5)
        st = FL.FlowState(q=rng.uniform(-0.5, 0.5, N),
                          p=rng.uniform(-0.5, 0.5, N), c=[-1.0] * N, lam=lam)
        a = FL.integrate_F1(st.with_packed(FL.integrate_F0(st, 0.3).y_end, 0.0),
                            0.05, start=0.0)
        b = FL.integrate_F0(st.with_packed(
            FL.integrate_F1(st, 0.05, start=0.0).y_end, 0.0), 0.3, start=0.0)
        assert np.max(np.abs(a.y_end - b.y_end)) < 1e-6

    def test_state_validation(self):
        with pytest.raises(ValueError):
            FL.FlowState(q=[1.0, 2.0], p=[0.0], c=[-2.0], lam=[1.0])


class TestRiccati:
    def test_trivial_background_kink(self):
        u0 = Field.from_expression("u0", "0*x", ("x", "t"))
        sol = FL.integrate_riccati_bt(u0, 1.0, 0.0, (0.0, 2.0), 0.0, "x",
                                      t_eval=[0.5, 1.0, 1.5])
        for xv, y in sol.samples.items():
            assert abs(y[0] - 2 * np.tanh(-xv)) < 1e-8

    def test_pole_branch_is_flagged(self):
        u0 = Field.from_expression("u0", "0*x", ("x", "t"))
        sol = FL.integrate_riccati_bt(u0, 1.0, 3.0, (0.0, 5.0), 0.0, "x")
        assert sol.singular

    def test_partner_anchored_on_seed_branch_reproduces_it(self):
        tup = C.seed_family(1.0, 0.0, 0.0)
        t_fix = 0.2
        anchor = tup.u1.value((-0.4, t_fix))
        sol = FL.integrate_riccati_bt(tup.u, 1.0, anchor, (-0.4, 1.0),
                                      t_fix, "x", t_eval=[0.1, 0.5])
        for xv, y in sol.samples.items():
            assert abs(y[0] - tup.u1.value((xv, t_fix))) < 1e-8

    def test_time_direction_reproduces_seed_branch(self):
        tup = C.seed_family(1.0, 0.0, 0.0)
        x_fix = 0.3
        anchor = tup.u1.value((x_fix, 0.1))
        sol = FL.integrate_riccati_bt(tup.u, 1.0, anchor, (0.1, 0.6),
                                      x_fix, "t", t_eval=[0.3, 0.5])
        for tv, y in sol.samples.items():
            assert abs(y[0] - tup.u1.value((x_fix, tv))) < 1e-8

    def test_cross_corner_compatibility(self):
        tup = C.seed_family(1.0, 0.3, -0.7)
        bg = C.levi_apply(tup, -0.5).u
        res = FL.lax_cross_corner(bg, lam=0.8, u1_corner=1.0,
                                  corner=(0.2, 0.15), dx=0.5, dt=0.5)
        assert not res["singular"]
        assert res["difference"] < 1e-7


class TestPainleveFlow:
    def test_rational_branch(self):
        sol = FL.integrate_PII(1.0, (-1.0, 1.0), 1.0, 3.0,
                               xi_eval=[1.5, 2.0, 2.5])
        for xv, y in sol.samples.items():
            assert abs(y[0] + 1 / xv) < 1e-9

    def test_zero_solution(self):
        sol = FL.integrate_PII(0.0, (0.0, 0.0), 0.0, 2.0)
        assert np.max(np.abs(sol.y_end)) == 0.0

    def test_pole_detection_location(self):
        sol = FL.integrate_PII(1.0, (-1.0, 1.0), 1.0, -1.0)
        assert sol.singular and abs(sol.t_singular) < 0.1

    def test_bessel_branch_tracks_closed_form(self):
        P = C.field("pii-p-bessel")
        xi0 = 1.0
        j = P.jet((xi0,), (1,))
        sol = FL.integrate_PII(0.5, (j.extract(0), j.extract(1)), xi0, 2.5,
                               xi_eval=[1.5, 2.0])
        for xv, y in sol.samples.items():
            assert abs(y[0] - P.value((xv,))) < 1e-7

    def test_ode_backed_field_jets(self):
        P = FL.pii_field_from_ode(1.0, (-1.0, 1.0), 1.0, (1.0, 3.0))
        j = P.jet((2.0,), (3,))
        for k, want in enumerate([-0.5, 0.25, -0.125, 0.0625]):
            assert abs(j.coef[k] - want) < 1e-8


class TestReducedBridge:
    def test_rational_profile_bridge(self):
        P = FL.pii_field_from_ode(1.0, (-1.0, 1.0), 1.0, (1.0, 3.0))
        rep = FL.integrate_H_and_map(-3.0, 0.7, (1.0, 3.0), P)
        assert rep.max_rel < 1e-9

    def test_first_members_differ_by_log_derivative(self):
        P = C.field("pii-p-rational")
        H = FL.h_field_from_p(P, 0.7)
        inv = FL.reduction_invariants(H, -3.0, 0.7, 1.7)
        j = H.jet((1.7,), (1,))
        assert abs(inv["U_minus_U1"] + j.extract(1) / j.extract(0)) < 1e-12
        assert abs(inv["G_xi"] - 1.0 / (4 * 0.7 * j.extract(0))) < 1e-12

    def test_quadrature_matches_closed_form(self):
        P = C.field("pii-p-rational")
        G = FL.quadrature_G(FL.pii_g_integrand(P), 1.0)
        for x in (1.4, 2.0, 2.7):
            closed = (cmath.log(x ** 3 + 4) - cmath.log(5.0)) / 3.0
            assert abs(G.value((x,)) - closed) < 1e-8

    def test_quadrature_fundamental_theorem(self):
        P = C.field("pii-p-rational")
        integ = FL.pii_g_integrand(P)
        G = FL.quadrature_G(integ, 1.0)
        j = G.jet((2.3,), (1,))
        assert abs(j.extract(1) - integ.value((2.3,))) < 1e-10

    def test_quadrature_anchor_shift_is_constant(self):
        P = C.field("pii-p-rational")
        integ = FL.pii_g_integrand(P)
        G1 = FL.quadrature_G(integ, 1.0)
        G2 = FL.quadrature_G(integ, 1.5)
        d1 = G1.value((2.0,)) - G2.value((2.0,))
        d2 = G1.value((2.8,)) - G2.value((2.8,))
        assert abs(d1 - d2) < 1e-9

    def test_quadrature_pole_on_path_rejected(self):
        bad = Field.from_expression("bad", "1/xi", ("xi",), loci=["xi"])
        G = FL.quadrature_G(bad, -1.0)
        with pytest.raises(ValueError):
            G.value((1.0,))


class TestEllipticPipeline:
    def test_closed_constraints_pass(self):
        rep = FL.elliptic_W_check(1.0, 2.0, 0.8, np.linspace(0.1, 2.0, 20))
        assert rep.max_rel < 1e-9

    def test_near_soliton_modulus(self):
        rep = FL.elliptic_W_check(1.0, 2.0, 0.99, np.linspace(0.1, 2.0, 10))
        assert rep.max_rel < 1e-9

    def test_perturbed_constraint_fails(self):
        a5, a7 = C.elliptic_constraints(1.0, 2.0, 0.8)
        rep = FL.elliptic_W_check(1.0, 2.0, 0.8, np.linspace(0.1, 2.0, 10),
                                  a5=a5 * 1.1, a7=a7)
        assert rep.max_rel > 1e-4

    def test_printed_quadratic_coupling_fails(self):
        a5p, a7p = C.elliptic_constraints(1.0, 2.0, 0.8, as_printed=True)
        rep = FL.elliptic_W_check(1.0, 2.0, 0.8, np.linspace(0.1, 2.0, 10),
                                  a5=a5p, a7=a7p)
        assert rep.max_rel > 1e-4

    def test_modulus_domain(self):
        with pytest.raises(ValueError):
            FL.elliptic_W_check(1.0, 2.0, 1.2, [0.3])


class TestReconstruction:
    def test_zero_data(self):
        st = FL.FlowState(q=[0.0], p=[0.0], c=[-2.0], lam=[1.0])
        rep = FL.reconstruct_and_check_kdv(
            st, x_grid=np.linspace(-2, 2, 41), t_grid=np.linspace(0, 0.1, 11))
        assert rep.max_fd_residual < 1e-13

    def test_soliton_small_grid(self):
        st = FL.soliton_state(1.0)
        rep = FL.reconstruct_and_check_kdv(
            st, x_grid=np.linspace(-3, 3, 121), t_grid=np.linspace(0, 0.1, 21),
            oracle=lambda xs, tj: -2.0 / np.cosh(xs - 4 * tj) ** 2)
        assert rep.oracle_max_err < 1e-6
        assert rep.max_fd_residual < 1e-3

    def test_spectral_shift_reconstruction(self):
        lam = 1.3
        st = FL.soliton_state(lam)
        rep = FL.reconstruct_and_check_kdv(
            st, x_grid=np.linspace(-2, 2, 81), t_grid=np.linspace(0, 0.08, 17),
            oracle=lambda xs, tj: -2 * lam / np.cosh(
                np.sqrt(lam) * (xs - 4 * lam * tj)) ** 2)
        assert rep.oracle_max_err < 1e-6
