import numpy as np
import pytest

from intlab import expr as E
from intlab.jets import (Jet, JetDivisionError, apply_function, lift_constant,
                         lift_variable)

P0 = (0.0, 0.0)


def test_lift_identities():
    x = lift_variable("x", (2.0, 3.0), (4, 2))
    assert x.extract(1, 0) == 1
    assert x.extract(0, 1) == 0
    assert x.value == 2.0
    t = lift_variable("t", P0, (4, 2))
    assert t.extract(0, 1) == 1


def test_parameter_axis_lift():
    lam = Jet.variable("lam", ("x", "t", "lam"), (0.0, 0.0, 0.0), (1, 1, 3))
    assert lam.extract(0, 0, 1) == 1


def test_exp_all_derivatives_one():
    x = lift_variable("x", P0, (4, 2))
    t = lift_variable("t", P0, (4, 2))
    j = apply_function("exp", x + t)
    for i in range(5):
        for k in range(3):
            assert abs(j.extract(i, k) - 1) < 1e-14


def test_product_mixed_derivative():
    x = lift_variable("x", P0, (3, 2))
    t = lift_variable("t", P0, (3, 2))
    j = apply_function("sin", x) * apply_function("cos", t)
    assert abs(j.extract(3, 2) - 1) < 1e-14


def test_ring_axiom_square():
    x = lift_variable("x", (0.4, 0.0), (3, 1))
    assert np.max(np.abs((x * x - x ** 2).coef)) == 0.0


def test_monomial_and_constant_extraction():
    x = lift_variable("x", P0, (3, 1))
    assert abs((x ** 3).extract(3, 0) - 6) < 1e-14
    c = lift_constant(5, P0, (3, 1))
    assert c.extract(0, 0) == 5


def test_tanh_third_derivative_at_zero():
    x = lift_variable("x", P0, (3, 1))
    j = apply_function("tanh", x)
    assert abs(j.extract(3, 0) + 2) < 1e-13


def test_division_guard_reports_base_point():
    x = lift_variable("x", (0.0, 0.7), (2, 1))
    with pytest.raises(JetDivisionError) as err:
        _ = x / (x * x)
    assert err.value.point == (0.0, 0.7)


def test_mixed_partial_matches_exact_value():
    P = (0.4, 0.25)
    x = lift_variable("x", P, (3, 2))
    t = lift_variable("t", P, (3, 2))
    f = apply_function("tanh", 1.3 * x * t + apply_function("sin", x) - 0.7 * t ** 2)
    xx, tt = P
    g = 1.3 * xx * tt + np.sin(xx) - 0.7 * tt ** 2
    th = np.tanh(g)
    sech2 = 1 - th ** 2
    gx, gt, gxt = 1.3 * tt + np.cos(xx), 1.3 * xx - 1.4 * tt, 1.3
    exact = -2 * th * sech2 * gt * gx + sech2 * gxt
    assert abs(f.extract(1, 1) - exact) < 1e-13


def test_chain_rule_against_symbolic_differentiation():
    # jets vs expr differentiation: random composites of supported functions
    rng = np.random.default_rng(21)
    texts = [
        "exp(sin(x)*t) + cos(x - t^2)",
        "tanh(x*t + 0.3) * sqrt(x + 2)",
        "log(2 + x^2 + t^2) / (1 + x^2)",
        "arctan(x - 0.5*t) + sinh(0.3*x)*cosh(0.2*t)",
        "jacobi_sn(x + 0.2*t, 0.7) * exp(0.1*t)",
        "bessel_j(1/3, 2 + x + t) + airy_ai(x - t)",
    ]
    for text in texts:
        e = E.parse(text)
        ex = E.differentiate(e, "x")
        ext = E.differentiate(ex, "t")
        for _ in range(4):
            xx, tt = rng.uniform(0.2, 0.8, 2)
            x = lift_variable("x", (xx, tt), (2, 1))
            t = lift_variable("t", (xx, tt), (2, 1))
            j = E.evaluate_generic(e, {"x": x, "t": t})
            want = E.evaluate(ext, {"x": complex(xx), "t": complex(tt)})
            got = j.extract(1, 1)
            assert abs(got - want) < 1e-9 * (1 + abs(want)), text


def test_base_point_independence_of_residual_zero():
    # a true solution stays a solution at every sampled base point
    from intlab.jets import apply_function as af
    rng = np.random.default_rng(2)
    for _ in range(10):
        pt = (rng.uniform(-2, 2), rng.uniform(0.05, 0.8))
        x = lift_variable("x", pt, (3, 1))
        t = lift_variable("t", pt, (3, 1))
        th = af("tanh", x - 4 * t)
        om = -2 * (1 - th * th)
        res = (om.deriv("t", 1).value + om.deriv("x", 3).value
               - 6 * om.value * om.deriv("x", 1).value)
        assert abs(res) < 1e-11


def test_spectral_jet_matches_closed_form_series():
    # cosh(sqrt(lam)(4 lam t - x)) is analytic in lam; its lam-Taylor
    # coefficients about 0 are polynomials in (x, t)
    V = ("x", "t", "lam")
    xx, tt = 0.3, 0.2
    x = Jet.variable("x", V, (xx, tt, 0.0), (2, 1, 2))
    t = Jet.variable("t", V, (xx, tt, 0.0), (2, 1, 2))
    lam = Jet.variable("lam", V, (xx, tt, 0.0), (2, 1, 2))
    psi1 = apply_function("cosh_sqrt", lam * (x - 4 * lam * t) ** 2)
    assert abs(psi1.coef[0, 0, 0] - 1) < 1e-14
    assert abs(psi1.coef[0, 0, 1] - xx ** 2 / 2) < 1e-10
    assert abs(psi1.coef[0, 0, 2] - (xx ** 4 / 24 - 4 * tt * xx)) < 1e-10


def test_deriv_consistency():
    x = lift_variable("x", (0.3, 0.1), (3, 2))
    t = lift_variable("t", (0.3, 0.1), (3, 2))
    g = apply_function("exp", apply_function("sin", x * t))
    gx = g.deriv("x", 1)
    assert abs(gx.extract(0, 0) - g.extract(1, 0)) < 1e-14
    assert abs(gx.extract(2, 1) - g.extract(3, 1)) < 1e-12


def test_extract_out_of_range():
    x = lift_variable("x", P0, (2, 1))
    with pytest.raises(Exception):
        x.extract(3, 0)


def test_alignment_of_mixed_orders():
    x = lift_variable("x", P0, (3, 1))
    a = x.deriv("x", 1)          # orders (2, 1)
    b = x.deriv("t", 1)          # orders (3, 0)
    c = a + b                    # aligned to (2, 0)
    assert c.orders == (2, 0)
    assert abs(c.value - 1.0) < 1e-15
