"""Named verification suites: each case ties one claim to a machine check.

A case returns a dict {name, pass, informational, metric, note}; a suite
passes when every non-informational case passes.  Informational cases carry
as-printed long expressions whose status is reported, never gating.
"""

from __future__ import annotations

import cmath
from typing import Callable

import numpy as np

from . import bilinear as B
from . import catalog as C
from . import equations as Q
from . import flows as FL
from .fields import Field
from .reporting import ResidualReport
from .sampling import Region, sample_points

__all__ = ["SUITES", "run_suite", "suite_names"]

_REG = Region({"x": (-3.0, 3.0), "t": (0.1, 1.0)})
_REG_NEG = Region({"x": (0.3, 3.0), "t": (0.1, 2.0)})
_REG_RAT = Region({"x": (0.5, 5.0), "t": (0.05, 0.8)})


def _case(name: str, passed: bool, metric: float, tol: float,
          informational: bool = False, note: str = "") -> dict:
    return {
        "name": name,
        "pass": bool(passed),
        "informational": bool(informational),
        "metric": float(metric),
        "tolerance": float(tol),
        "note": note,
    }


def _from_report(name: str, rep: ResidualReport, informational=False,
                 note="") -> dict:
    return _case(name, rep.passed, rep.max_rel, rep.tolerance,
                 informational or rep.informational, note or rep.note)


def _match_case(name: str, pairs, tol: float, relative=True, note="") -> dict:
    worst = 0.0
    for a, b in pairs:
        d = abs(a - b) / (1.0 + abs(b)) if relative else abs(a - b)
        worst = max(worst, d)
    return _case(name, worst < tol, worst, tol, note=note)


def _negcontrol_case(name: str, rep: ResidualReport, note="") -> dict:
    # a negative control passes when the checked residual is decisively nonzero
    return _case(name, not rep.passed and rep.max_rel > 10 * rep.tolerance,
                 rep.max_rel, rep.tolerance, note=note or "expected to fail")


# ---------------------------------------------------------------------------


def _suite_bt_core() -> list[dict]:
    out = []
    tup = C.seed_family(1.0, 0.3, -0.7)
    F = tup.fields()
    for eq, fl in [("pkdv", {"u": tup.u}), ("pkdv", {"u": tup.u1}),
                   ("bt-x", F), ("bt-t", F), ("lax-x", F), ("lax-t", F),
                   ("prolong-v-x", F), ("prolong-v-t", F),
                   ("prolong-g-x", F), ("prolong-g-t", F)]:
        rep = Q.scan(eq, fl, {"lam": tup.lam}, _REG, 30, 1e-10)
        label = eq if "u1" not in [f.name.split(".")[-1] for f in fl.values()] \
            else eq
        out.append(_from_report(f"seed:{eq}:{'+'.join(sorted(fl))}", rep))

    for eps in (-1.0, 0.5, 2.0):
        lv = C.levi_apply(tup, eps)
        out.append(_from_report(f"levi[{eps}]:pkdv",
                                Q.scan("pkdv", {"u": lv.u}, {}, _REG, 30, 1e-9)))
        om = C.kdv_from_pkdv(lv.u)
        out.append(_from_report(f"levi[{eps}]:kdv",
                                Q.scan("kdv", {"w": om}, {}, _REG, 30, 1e-9)))
        ub_p, om_p = C.levi_printed_pair(1.0, 0.3, -0.7, eps)
        pts = sample_points(_REG, 20, lv.u.loci)
        out.append(_match_case(
            f"levi[{eps}]:matches-displayed-closed-form",
            [(lv.u.value(p), ub_p.value(p)) for p in pts], 1e-9))
        out.append(_match_case(
            f"levi[{eps}]:derivative-matches-displayed-closed-form",
            [(om.value(p), om_p.value(p)) for p in pts], 1e-9))

    lv0 = C.levi_apply(tup, 0.0)
    pts = sample_points(_REG, 5)
    exact = max(abs(lv0.u.value(p) - tup.u.value(p)) for p in pts)
    out.append(_case("levi[0]:identity-exact", exact == 0.0, exact, 1e-15))

    lv12 = C.levi_apply(C.levi_apply(tup, 0.4), -0.9)
    lvs = C.levi_apply(tup, -0.5)
    pts = sample_points(_REG, 10, lv12.u.loci + lvs.u.loci)
    out.append(_match_case(
        "levi:one-parameter-group-composition",
        [(lv12.u.value(p), lvs.u.value(p)) for p in pts], 1e-9))
    return out


def _suite_symmetry() -> list[dict]:
    out = []
    tup = C.seed_family(1.0, 0.3, -0.7)
    sigma = Q.nonlocal_symmetry_sigma(tup)
    out.append(_from_report(
        "nonlocal-symmetry:exp(v)",
        Q.scan("sym-pkdv", {"sigma": sigma, "u": tup.u}, {}, _REG, 30, 1e-10)))

    psi = C.field("psi-one")
    psi1 = C.field("psi1-cosh", lam=1.0)
    antider = Field.from_expression(
        "antideriv", "x/2 - sinh(2*sqrt(lam)*(4*lam*t - x))/(4*sqrt(lam))",
        ("x", "t"), params={"lam": 1.0})
    pts = sample_points(_REG, 20)
    for label, sp in (("closed-form", Q.bilinear_symmetry_sigma_psi(psi, psi1, antider)),
                      ("quadrature", Q.bilinear_symmetry_sigma_psi(psi, psi1, x_ref=0.0))):
        use = pts if label == "closed-form" else pts[:5]
        worst = 0.0
        for p in use:
            raw, scale = Q.bilinear_symmetry_residual(sp, psi, p)
            worst = max(worst, abs(raw) / (1.0 + scale))
        out.append(_case(f"bilinear-symmetry:{label}", worst < 1e-9, worst, 1e-9))

    sp = Q.bilinear_symmetry_sigma_psi(psi, psi1, antider)
    t0 = C.seed_family(1.0, 0.0, 0.0)
    s_tuple = Q.nonlocal_symmetry_sigma(t0)
    ratios = [s_tuple.value(p) / Q.cole_hopf_symmetry_map(sp, psi, p)
              for p in pts[:8]]
    spread = float(np.ptp(np.abs(np.array(ratios))))
    out.append(_case(
        "transfer-map:constant-ratio", spread < 1e-9, spread, 1e-9,
        note=f"potential-level sigma = {ratios[0].real:+.6f} x bilinear-mapped sigma "
             "(multiplicative constant from the antiderivative's base point)"))

    rng = np.random.default_rng(7)
    cs = rng.uniform(-1, 1, 7)
    s, s1, s2, s3 = Q.point_symmetry_fields(tup, cs)
    fl = {"sigma": s, "sigma1": s1, "sigma2": s2, "sigma3": s3,
          "u": tup.u, "u1": tup.u1, "v": tup.v}
    for k in range(1, 8):
        rep = Q.scan(f"linearized-{k}", fl, {"lam": 1.0}, _REG, 20, 1e-8)
        out.append(_from_report(f"point-symmetry:linearized-{k}", rep))

    f4 = Q.point_symmetry_fields(tup, [0, 0, 0, 1, 0, 0, 0])
    pts4 = sample_points(_REG, 8)
    pairs = []
    for p in pts4:
        ev = cmath.exp(tup.v.value(p))
        gv = tup.g.value(p)
        for got, want in zip(
                (f4[0].value(p), f4[1].value(p), f4[2].value(p), f4[3].value(p)),
                (-2 * ev, 0.0, -2 * gv, -gv * gv)):
            pairs.append((got, want))
    out.append(_match_case(
        "point-symmetry:c4-only-reduces-to-base-symmetry", pairs, 1e-9,
        note="scaling convention: c4-only case equals -2 x (e^v, 0, g, g^2/2)"))

    out.append(_from_report(
        "schwarzian:seed-g",
        Q.scan("skdv", {"g": tup.g}, {"lam": 1.0}, _REG, 30, 1e-9)))
    out.append(_from_report(
        "schwarzian:transformed-g",
        Q.scan("skdv", {"g": C.levi_apply(tup, 0.5).g}, {"lam": 1.0},
               _REG, 30, 1e-9)))
    return out


def _suite_bilinear() -> list[dict]:
    out = []
    psi_exp = Field.from_expression("psi-exp", "exp(0.7*x + 1.3*t)", ("x", "t"))
    rep = B.bilinear_scan("bilin-pkdv", {"psi": psi_exp}, {}, _REG, 20, 1e-11)
    out.append(_from_report("bilinear-base:exponential-kernel", rep))

    psi = C.field("psi-one")
    psi1 = C.field("psi1-cosh", lam=1.0)
    for tag in ("bilin-bt-x", "bilin-bt-t"):
        rep = B.bilinear_scan(tag, {"psi": psi, "psi1": psi1}, {"lam": 1.0},
                              _REG, 20, 1e-11)
        out.append(_from_report(f"bilinear-pair:{tag}", rep))

    psiL = C.field("psi-linear")
    psi1I = C.field("psi1-const-imag")
    rep = B.bilinear_scan("bilin-neg-flow", {"psi": psiL, "psi1": psi1I}, {},
                          _REG, 20, 1e-12)
    out.append(_from_report("negative-flow-pair:flow", rep))
    rep = B.bilinear_scan("bilin-neg-constraint", {"psi": psiL, "psi_i": psi1I},
                          {"lam_i": 0.0}, _REG, 20, 1e-12)
    out.append(_from_report("negative-flow-pair:constraint", rep))

    rng = np.random.default_rng(3)
    fa = Field.from_expression("fa", "exp(sin(x) + 0.3*t)*(x^2 + 1)", ("x", "t"))
    fb = Field.from_expression("fb", "cos(x)*exp(t) + 2", ("x", "t"))
    worst_par, worst_anti = 0.0, 0.0
    pts = sample_points(_REG, 30)
    for p in pts:
        for (m, n) in ((1, 0), (2, 0), (2, 1), (3, 1)):
            d1 = B.hirota_D(m, n, fa, fb, p)
            d2 = B.hirota_D(m, n, fb, fa, p)
            worst_par = max(worst_par,
                            abs(d1 - (-1.0) ** (m + n) * d2) / (1.0 + abs(d1)))
        for k in (1, 3):
            worst_anti = max(worst_anti, abs(B.hirota_D(k, 0, fa, fa, p)))
    out.append(_case("operator:exchange-parity", worst_par < 1e-11, worst_par, 1e-11))
    out.append(_case("operator:odd-self-antisymmetry", worst_anti < 1e-11,
                     worst_anti, 1e-11))

    gauge = Field.from_expression("gauge", "exp(0.4*x - 0.8*t)", ("x", "t"))

    def _times(f1, f2, nm):
        return Field.from_function(
            nm, lambda env: f1.jet(env["x"].point, env["x"].orders)
            * f2.jet(env["x"].point, env["x"].orders), ("x", "t"))

    rep = B.bilinear_scan("bilin-bt-x",
                          {"psi": _times(psi, gauge, "psi-g"),
                           "psi1": _times(psi1, gauge, "psi1-g")},
                          {"lam": 1.0}, _REG, 20, 1e-10)
    out.append(_from_report("operator:gauge-covariance", rep))

    def cole_hopf(f, nm):
        def fn(env):
            pt, orders = env["x"].point, env["x"].orders
            j = f.jet(pt, tuple(k + 1 for k in orders))
            return -2.0 * j.deriv("x", 1) / j
        return Field.from_function(nm, fn, ("x", "t"))

    fl = {"u": cole_hopf(psi, "u"), "u1": cole_hopf(psi1, "u1")}
    for tag in ("bt-x", "bt-t"):
        rep = Q.scan(tag, fl, {"lam": 1.0}, _REG, 20, 1e-10)
        out.append(_from_report(f"log-derivative-consistency:{tag}", rep))

    pts = sample_points(_REG, 10)
    rep = B.second_hierarchy_chain_check(psi, C.psi1_lambda_field(), 2, pts)
    out.append(_from_report("spectral-chain:orders-0-2", rep))
    return out


def _suite_negative_flow() -> list[dict]:
    out = []
    sols = C.negative_flow_solutions()
    rep = Q.scan("neg1", {"u": sols["u_neg"]}, {"lam1": 0.0}, _REG_NEG, 20, 1e-10)
    out.append(_from_report("first-negative-flow:on-solution", rep))

    pts = sample_points(_REG_NEG, 20, sols["u_neg"].loci)
    worst = 0.0
    for p in pts:
        raw = Q.residual_at("neg1", {"u": sols["u_neg"]}, {"lam1": 0.3}, p)
        expect = -16.0 * 0.3 / (p[0] + p[1]).real ** 4
        worst = max(worst, abs(raw - expect) / abs(expect))
    out.append(_case("first-negative-flow:detuned-control-matches-analytic",
                     worst < 1e-8, worst, 1e-8,
                     note="residual tracks -16*lam1/(x+t)^4"))

    out.append(_from_report("ratio-form",
                            Q.scan("beta-form", {"beta": sols["beta"]}, {},
                                   _REG_NEG, 20, 1e-10)))
    out.append(_from_report("integrated-form",
                            Q.scan("beta-int", {"beta": sols["beta"]},
                                   {"beta0": 0.0}, _REG_NEG, 20, 1e-10)))
    out.append(_from_report("liouville",
                            Q.scan("liouville", {"eta": sols["eta_liouville"]},
                                   {}, _REG_NEG, 20, 1e-12)))
    out.append(_from_report("sine-gordon",
                            Q.scan("sine-gordon", {"eta": sols["eta_sg"]}, {},
                                   _REG_NEG, 20, 1e-10)))

    rng = np.random.default_rng(11)
    pts = sample_points(_REG_NEG, 20)
    worst = 0.0
    for k in range(20):
        kind = k % 3
        if kind == 0:
            txt = f"exp({rng.uniform(-1, 1):.3f}*sin(x) + {rng.uniform(-1, 1):.3f}*t)"
        elif kind == 1:
            a, b, c = rng.uniform(0.1, 0.5, 3)
            txt = (f"{3 + a:.3f} + {b:.3f}*sin({1 + c:.2f}*x + t)"
                   f" + {a:.3f}*cos(x - 2*t)")
        else:
            txt = "-2/(x + t)^2"
        beta = Field.from_expression(f"beta{k}", txt, ("x", "t"))
        worst = max(worst, Q.miura_identity_check(beta, pts).max_rel)
    out.append(_case("miura-identity:20-random-fields", worst < 1e-12, worst, 1e-12))

    psiL = C.field("psi-linear")
    psi1I = C.field("psi1-const-imag")
    rep = B.bilinear_scan("bilin-neg-flow", {"psi": psiL, "psi1": psi1I}, {},
                          _REG, 20, 1e-12)
    out.append(_from_report("bilinear-negative-pair:flow", rep))
    rep = B.bilinear_scan("bilin-neg-constraint", {"psi": psiL, "psi_i": psi1I},
                          {"lam_i": 0.0}, _REG, 20, 1e-12)
    out.append(_from_report("bilinear-negative-pair:constraint", rep))
    return out


def _suite_reductions_pii() -> list[dict]:
    out = []
    Prat = C.field("pii-p-rational")
    Pair = C.field("pii-p-airy")
    Pbes = C.field("pii-p-bessel")
    Pprt = C.field("pii-p-bessel-printed")
    xs = np.linspace(0.8, 3.0, 15)

    def pii_worst(P, alpha):
        worst = 0.0
        for x in xs:
            raw, sc = Q.residual_terms("pii", {"P": P}, {"alpha": alpha}, (x,))
            worst = max(worst, abs(raw) / (1.0 + sc))
        return worst

    for nm, P, al in (("rational", Prat, 1.0), ("airy", Pair, 0.5),
                      ("bessel", Pbes, 0.5)):
        w = pii_worst(P, al)
        out.append(_case(f"painleve-profile:{nm}", w < 1e-10, w, 1e-10))
    wp = pii_worst(Pprt, 0.5)
    out.append(_case("painleve-profile:bessel-as-printed", wp < 1e-10, wp, 1e-10,
                     informational=True,
                     note="verbatim printed Bessel form; exactly twice the "
                          "Airy-form solution, so it misses the equation"))
    out.append(_match_case("airy-vs-bessel-form",
                           [(Pair.value((x,)), Pbes.value((x,))) for x in xs],
                           1e-8, relative=False))

    om1_ref, om63 = C.rational_family()
    out.append(_from_report("rational-member:kdv",
                            Q.scan("kdv", {"w": om1_ref}, {}, _REG_RAT, 30, 1e-9)))
    G0 = C.field("pii-g-rational")
    o1, o2 = C.pii_reconstruct(Prat, G0, a4=-3.0)
    pts = sample_points(_REG_RAT, 20, o1.loci)
    out.append(_match_case("reconstruction:first-member-matches-rational",
                           [(o1.value(p), om1_ref.value(p)) for p in pts], 1e-9))
    rep = Q.scan("kdv", {"w": om63}, {}, _REG_RAT, 30, 1e-8, informational=True,
                 note="verbatim printed long rational form")
    out.append(_from_report("rational-second-member:as-printed", rep,
                            informational=True))
    out.append(_match_case("rational-second-member:pipeline-matches-printed",
                           [(o2.value(p), om63.value(p)) for p in pts], 1e-9,
                           note="agrees with zero quadrature constant"))
    for gc in (0.0, 0.7):
        Gc = C.field("pii-g-rational", gconst=gc)
        _, o2c = C.pii_reconstruct(Prat, Gc, a4=-3.0)
        rep = Q.scan("kdv", {"w": o2c}, {}, _REG_RAT, 20, 1e-9)
        out.append(_from_report(
            f"reconstruction:second-member-kdv[phase-const={gc}]", rep,
            note="antiderivative constant only shifts the kink phase"))
    _, o2p = C.pii_reconstruct(Prat, G0, a4=-3.0, printed_form=True)
    rep = Q.scan("kdv", {"w": o2p}, {}, _REG_RAT, 20, 1e-9, informational=True,
                 note="second member with the printed bracket (sign-garbled "
                      "algebraic part); kept for the record")
    out.append(_from_report("reconstruction:printed-bracket-variant", rep,
                            informational=True))

    om1b, om2b = C.bessel_family()
    regb = Region({"x": (1.6, 9.0), "t": (0.12, 0.95)})
    ptsb = [p for p in sample_points(regb, 60, om1b.loci)
            if 1.05 < (p[0].real - 6 * p[1].real) < 4.95][:12]
    o1b, _ = C.pii_reconstruct(Pbes, None, a4=-2.0)
    out.append(_match_case("bessel-member:matches-reconstruction",
                           [(om1b.value(p), o1b.value(p)) for p in ptsb], 1e-6))
    worst = 0.0
    for p in ptsb:
        raw, sc = Q.residual_terms("kdv", {"w": om1b}, {}, p)
        worst = max(worst, abs(raw) / (1.0 + sc))
    out.append(_case("bessel-member:kdv", worst < 1e-6, worst, 1e-6))
    worst = 0.0
    for p in ptsb:
        raw, sc = Q.residual_terms("kdv", {"w": om2b}, {}, p)
        worst = max(worst, abs(raw) / (1.0 + sc))
    out.append(_case("bessel-second-member:as-printed", worst < 1e-6, worst,
                     1e-6, informational=True,
                     note="verbatim printed quotient form"))
    Gq = FL.quadrature_G(FL.pii_g_integrand(Pbes), 1.0)
    _, o2b_c = C.pii_reconstruct(Pbes, Gq, a4=-2.0)
    worst = 0.0
    for p in ptsb[:6]:
        raw, sc = Q.residual_terms("kdv", {"w": o2b_c}, {}, p)
        worst = max(worst, abs(raw) / (1.0 + sc))
    out.append(_case("bessel-second-member:pipeline-kdv", worst < 1e-6, worst, 1e-6))

    rep = FL.integrate_H_and_map(-3.0, 0.7,
                                 (1.0, 3.0),
                                 FL.pii_field_from_ode(1.0, (-1.0, 1.0), 1.0,
                                                       (1.0, 3.0)))
    out.append(_from_report("reduced-profile:bridge-equation", rep))

    H = FL.h_field_from_p(Prat, 0.7)
    inv = FL.reduction_invariants(H, -3.0, 0.7, 1.7)
    j = H.jet((1.7,), (1,))
    d = abs(inv["U_minus_U1"] - (-j.extract(1) / j.extract(0)))
    out.append(_case("reduced-profile:first-members-differ-by-log-derivative",
                     d < 1e-12, d, 1e-12))

    integ = FL.pii_g_integrand(Prat)
    Gquad = FL.quadrature_G(integ, 1.0)
    worst = 0.0
    for x in (1.4, 2.0, 2.7):
        closed = (cmath.log(x ** 3 + 4.0) - cmath.log(5.0)) / 3.0
        worst = max(worst, abs(Gquad.value((x,)) - closed))
    out.append(_case("phase-quadrature:matches-closed-form", worst < 1e-8,
                     worst, 1e-8))
    return out


def _suite_reductions_elliptic() -> list[dict]:
    out = []
    zs = np.linspace(0.1, 2.0, 20)
    rep = FL.elliptic_W_check(1.0, 2.0, 0.8, zs)
    out.append(_from_report("sn-ansatz:quartic-ode", rep))
    rep = FL.elliptic_W_check(1.0, 2.0, 0.99, zs)
    out.append(_from_report("sn-ansatz:near-soliton-modulus", rep))

    a5, a7 = C.elliptic_constraints(1.0, 2.0, 0.8)
    repb = FL.elliptic_W_check(1.0, 2.0, 0.8, zs, a5=a5 * 1.1, a7=a7)
    out.append(_negcontrol_case("sn-ansatz:perturbed-constraint-control", repb))
    a5p, a7p = C.elliptic_constraints(1.0, 2.0, 0.8, as_printed=True)
    repp = FL.elliptic_W_check(1.0, 2.0, 0.8, zs, a5=a5p, a7=a7p)
    out.append(_case("sn-ansatz:as-printed-quadratic-coupling",
                     repp.max_rel < repp.tolerance, repp.max_rel, repp.tolerance,
                     informational=True,
                     note="printed coupling constant is quadratic in the cubic "
                          "coefficient; the ODE closes only with the cubic power"))

    om3, om4p = C.cnoidal_family()
    regc = Region({"x": (-3.0, 3.0), "t": (0.05, 0.6)})
    rep = Q.scan("kdv", {"w": om3}, {}, regc, 20, 1e-8)
    out.append(_from_report("cnoidal-member:kdv", rep))

    om3n, _ = C.cnoidal_family(n=0.999999)
    lim = 4.0 / 16.0 - 1.0
    vals = [om3n.value(p) for p in ((0.3, 0.2), (-1.0, 0.4))]
    worst = max(abs(v - lim) for v in vals)
    out.append(_case("cnoidal-member:soliton-limit-is-constant", worst < 1e-3,
                     worst, 1e-3))

    pts = sample_points(regc, 12, om4p.loci)
    worst = 0.0
    for p in pts:
        raw, sc = Q.residual_terms("kdv", {"w": om4p}, {}, p)
        worst = max(worst, abs(raw) / (1.0 + sc))
    bd = C.cnoidal_omega4_term_values(pts[0])
    breakdown = "; ".join(f"{k}={v.real:+.4g}{v.imag:+.2g}i" for k, v in bd.items())
    out.append(_case("interaction-member:as-printed", worst < 1e-8, worst, 1e-8,
                     informational=True,
                     note=f"per-term values at first sample point: {breakdown}"))

    om4c = C.cnoidal_constructive()
    pts = sample_points(regc, 15, om4c.loci)
    worst = 0.0
    for p in pts:
        raw, sc = Q.residual_terms("kdv", {"w": om4c}, {}, p)
        worst = max(worst, abs(raw) / (1.0 + sc))
    out.append(_case("interaction-member:pipeline-kdv", worst < 1e-7, worst, 1e-7))
    return out


def _suite_f0f1() -> list[dict]:
    out = []
    st = FL.FlowState(q=[1.0], p=[0.0], c=[-2.0], lam=[1.0])
    sol = FL.integrate_F0(st, 3.0)
    d = abs(sol.y_end[0] - 1.0 / np.cosh(3.0))
    out.append(_case("space-flow:sech-oracle", d < 1e-9, d, 1e-9))

    sol = FL.integrate_F0(st, 2.0, x_eval=[0.5, 1.0, 1.5])
    v0 = FL.f0_first_integral(st)
    worst = max(abs(FL.f0_first_integral(
        FL.FlowState(q=[y[0]], p=[y[1]], c=[-2.0], lam=[1.0])) - v0)
        for y in sol.samples.values())
    out.append(_case("space-flow:first-integral", worst < 1e-9, worst, 1e-9))

    st0 = FL.FlowState(q=[0.0], p=[0.0], c=[-2.0], lam=[1.0])
    z = float(np.max(np.abs(FL.integrate_F1(st0, 0.5, start=0.0).y_end)))
    out.append(_case("time-flow:zero-state", z == 0.0, z, 1e-15))

    rng = np.random.default_rng(5)
    for N, lam in ((1, [1.0]), (2, [1.0, 2.3])):
        stN = FL.FlowState(q=rng.uniform(-0.5, 0.5, N),
                           p=rng.uniform(-0.5, 0.5, N), c=[-1.0] * N, lam=lam)
        a2 = FL.integrate_F1(stN.with_packed(FL.integrate_F0(stN, 0.3).y_end, 0.0),
                             0.05, start=0.0)
        b2 = FL.integrate_F0(stN.with_packed(
            FL.integrate_F1(stN, 0.05, start=0.0).y_end, 0.0), 0.3, start=0.0)
        d = float(np.max(np.abs(a2.y_end - b2.y_end)))
        out.append(_case(f"flows:cross-consistency-N{N}", d < 1e-6, d, 1e-6))

    sts = FL.soliton_state(1.0, x0=0.0)
    rep = FL.reconstruct_and_check_kdv(
        sts, oracle=lambda xs, tj: -2.0 / np.cosh(xs - 4.0 * tj) ** 2)
    out.append(_case("reconstruction:soliton-oracle", rep.oracle_max_err < 1e-6,
                     rep.oracle_max_err, 1e-6))
    out.append(_case("reconstruction:soliton-fd-residual",
                     rep.max_fd_residual < 1e-4 and rep.passed,
                     rep.max_fd_residual, 1e-4))
    coarse = FL.reconstruct_and_check_kdv(
        sts, x_grid=np.linspace(-4, 4, 161), t_grid=np.linspace(0, 0.2, 41))
    rate = float(np.log2(coarse.max_fd_residual / rep.max_fd_residual))
    out.append(_case("reconstruction:fd-convergence-rate", rate >= 3.5, rate, 3.5,
                     note="rate under x,t refinement; 4th-order stencils"))

    st2 = FL.FlowState(q=rng.uniform(-0.5, 0.5, 2), p=rng.uniform(-0.5, 0.5, 2),
                       c=[-1.0, -1.0], lam=[1.0, 2.3])
    rep2 = FL.reconstruct_and_check_kdv(
        st2, x_grid=np.linspace(-4, 4, 161), t_grid=np.linspace(0, 0.2, 41),
        tolerance=1e-3)
    out.append(_case("reconstruction:N2-relative-residual",
                     rep2.max_fd_rel < 1e-3, rep2.max_fd_rel, 1e-3,
                     note="relative to 1 + sum of |terms|; the absolute "
                          "residual refines at 4th order"))

    tup = C.seed_family(1.0, 0.3, -0.7)
    bg = C.levi_apply(tup, -0.5).u
    res = FL.lax_cross_corner(bg, lam=0.8, u1_corner=1.0, corner=(0.2, 0.15),
                              dx=0.5, dt=0.5)
    out.append(_case("riccati-pair:cross-corner-compatibility",
                     res["difference"] < 1e-7 and not res["singular"],
                     res["difference"], 1e-7))

    sol = FL.integrate_PII(1.0, (-1.0, 1.0), 1.0, -1.0)
    loc = abs(sol.t_singular) if sol.singular else float("inf")
    out.append(_case("painleve-flow:pole-detection", sol.singular and loc < 0.1,
                     loc, 0.1, note="movable pole of the rational profile at 0"))
    return out


SUITES: dict[str, Callable[[], list[dict]]] = {
    "bt-core": _suite_bt_core,
    "symmetry": _suite_symmetry,
    "bilinear": _suite_bilinear,
    "negative-flow": _suite_negative_flow,
    "reductions-pii": _suite_reductions_pii,
    "reductions-elliptic": _suite_reductions_elliptic,
    "f0f1": _suite_f0f1,
}


def suite_names() -> list[str]:
    return sorted(SUITES)


def run_suite(name: str) -> dict:
    """Run one suite; overall pass ignores informational cases."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    cases = SUITES[name]()
    overall = all(c["pass"] for c in cases if not c["informational"])
    return {"suite": name, "cases": cases, "overall_pass": overall}
