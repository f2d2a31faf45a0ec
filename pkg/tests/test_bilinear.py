import numpy as np

from intlab import bilinear as B
from intlab import catalog as C
from intlab import equations as Q
from intlab.fields import Field
from intlab.sampling import Region, sample_points

REG = Region({"x": (-2, 2), "t": (0.1, 1)})


def _f(name, text, **params):
    return Field.from_expression(name, text, ("x", "t"), params=params)


def test_first_order_on_exponentials():
    a = _f("a", "exp(x)")
    b = _f("b", "exp(2*x)")
    assert abs(B.hirota_D(1, 0, a, b, (0.0, 0.0)) + 1) < 1e-14


def test_second_order_exponential_identity():
    # D_x^2 e^{kx}.e^{lx} = (k-l)^2 e^{(k+l)x}
    a = _f("a", "exp(x)")
    b = _f("b", "exp(3*x)")
    assert abs(B.hirota_D(2, 0, a, b, (0.0, 0.0)) - 4) < 1e-12
    x0 = 0.4
    want = 4 * np.exp(4 * x0)
    assert abs(B.hirota_D(2, 0, a, b, (x0, 0.0)) - want) < 1e-11 * want


def test_odd_order_self_pairing_vanishes():
    f = _f("f", "exp(sin(x) + 0.3*t)*(x^2 + 1)")
    rng = np.random.default_rng(4)
    for _ in range(20):
        p = (rng.uniform(-1, 1), rng.uniform(0.1, 1))
        for k in (1, 3):
            assert abs(B.hirota_D(k, 0, f, f, p)) < 1e-11


def test_exchange_parity():
    f = _f("f", "exp(sin(x) + 0.3*t)*(x^2 + 1)")
    g = _f("g", "cos(x)*exp(t) + 2")
    rng = np.random.default_rng(8)
    for _ in range(30):
        p = (rng.uniform(-1.5, 1.5), rng.uniform(0.1, 1))
        for (m, n) in ((1, 0), (2, 0), (2, 1), (3, 1)):
            d1 = B.hirota_D(m, n, f, g, p)
            d2 = B.hirota_D(m, n, g, f, p)
            assert abs(d1 - (-1) ** (m + n) * d2) < 1e-11 * (1 + abs(d1))


def test_base_equation_on_exponential_kernel():
    psi = _f("psi", "exp(0.7*x + 1.3*t)")
    raw, _ = B.bilinear_terms("bilin-pkdv", {"psi": psi}, {}, (0.2, 0.4))
    assert abs(raw) < 1e-10


def test_pair_equations_on_cosh_partner():
    psi = C.field("psi-one")
    psi1 = C.field("psi1-cosh", lam=1.0)
    for tag in ("bilin-bt-x", "bilin-bt-t"):
        rep = B.bilinear_scan(tag, {"psi": psi, "psi1": psi1}, {"lam": 1.0},
                              REG, 20, 1e-11)
        assert rep.passed, (tag, rep.max_rel)


def test_pair_detuned_spectral_parameter_fails():
    psi = C.field("psi-one")
    psi1 = C.field("psi1-cosh", lam=1.0)
    rep = B.bilinear_scan("bilin-bt-x", {"psi": psi, "psi1": psi1},
                          {"lam": 1.3}, REG, 10, 1e-11)
    assert not rep.passed


def test_negative_pair():
    psi = C.field("psi-linear")
    psi1 = C.field("psi1-const-imag")
    raw, _ = B.bilinear_terms("bilin-neg-flow", {"psi": psi, "psi1": psi1},
                              {}, (0.3, 0.4))
    assert abs(raw) < 1e-12
    raw, _ = B.bilinear_terms("bilin-neg-constraint",
                              {"psi": psi, "psi_i": psi1}, {"lam_i": 0.0},
                              (0.3, 0.4))
    assert abs(raw) < 1e-12


def test_gauge_covariance():
    psi = C.field("psi-one")
    psi1 = C.field("psi1-cosh", lam=1.0)
    gauge = _f("gauge", "exp(0.4*x - 0.8*t)")

    def times(f1, f2, nm):
        return Field.from_function(
            nm, lambda env: f1.jet(env["x"].point, env["x"].orders)
            * f2.jet(env["x"].point, env["x"].orders), ("x", "t"))

    rep = B.bilinear_scan("bilin-bt-x",
                          {"psi": times(psi, gauge, "pg"),
                           "psi1": times(psi1, gauge, "p1g")},
                          {"lam": 1.0}, REG, 20, 1e-10)
    assert rep.passed


def test_log_derivative_consistency_with_pair_relations():
    psi = C.field("psi-one")
    psi1 = C.field("psi1-cosh", lam=1.0)

    def cole_hopf(f, nm):
        def fn(env):
            pt, orders = env["x"].point, env["x"].orders
            j = f.jet(pt, tuple(k + 1 for k in orders))
            return -2.0 * j.deriv("x", 1) / j
        return Field.from_function(nm, fn, ("x", "t"))

    fl = {"u": cole_hopf(psi, "u"), "u1": cole_hopf(psi1, "u1")}
    for tag in ("bt-x", "bt-t"):
        rep = Q.scan(tag, fl, {"lam": 1.0}, REG, 20, 1e-10)
        assert rep.passed


def test_spectral_coefficients_and_chain():
    psi = C.field("psi-one")
    psi1lam = C.psi1_lambda_field()
    pts = sample_points(REG, 10)
    bars = B.spectral_coefficient_jets(psi1lam, pts[0], (2, 0), 2)
    x0 = pts[0][0].real
    assert abs(bars[0].value - 1.0) < 1e-13
    assert abs(bars[1].value - x0 ** 2 / 2) < 1e-10
    rep = B.second_hierarchy_chain_check(psi, psi1lam, 2, pts)
    assert rep.max_rel < 1e-9


def test_second_flow_equation_exposed():
    # the flow relation of the spectral hierarchy is evaluable even though
    # no catalog family exercises it; constants give a zero left side
    psi = C.field("psi-one")
    one = C.field("psi-one")
    raw, scale = B.bilinear_terms(
        "bilin-2nd-flow", {"psi": psi, "psibar0": one}, {}, (0.2, 0.3))
    assert abs(raw + 1.0) < 1e-14  # D_xD_t 1.1 = 0, minus psibar0^2 = -1


def test_chain_equation_with_explicit_members():
    psi = C.field("psi-one")
    bar1 = Field.from_expression("bar1", "x^2/2", ("x", "t"))
    bar0 = C.field("psi-one")
    raw, _ = B.bilinear_terms("bilin-2nd-chain",
                              {"psi": psi, "psibar_k": bar1,
                               "psibar_km1": bar0}, {}, (0.7, 0.2))
    assert abs(raw) < 1e-13
