import cmath

import numpy as np
import pytest

from intlab import catalog as C
from intlab import equations as Q
from intlab import expr as E
from intlab.fields import FieldError
from intlab.sampling import Region, sample_points

REG = Region({"x": (-3, 3), "t": (0.1, 1)})


def test_manifest_expressions_round_trip():
    for name, entry in C.load_manifest().items():
        texts = []
        if "members" in entry:
            texts += list(entry["members"].values())
        elif entry.get("expression", "ODE-backed") != "ODE-backed":
            texts.append(entry["expression"])
        texts += [t for t in entry.get("loci", ())]
        for t in texts:
            once = E.to_text(E.parse(t))
            assert E.to_text(E.parse(once)) == once, (name, t)


def test_manifest_families_satisfy_declared_equations():
    for name, entry in C.load_manifest().items():
        if "members" in entry or entry.get("expression") == "ODE-backed":
            continue
        tags = entry.get("satisfies", [])
        if not tags:
            continue
        fld = C.field(name)
        region = Region({k: tuple(v) for k, v in entry.get(
            "region", {"x": [0.5, 3.0], "t": [0.1, 1.0]}).items()})
        for tag in tags:
            eq = Q.EQUATIONS[tag]
            if len(eq.fields) != 1 or eq.vars != ("x", "t"):
                continue
            params = {k: 0.0 for k in eq.params}
            params.update({k: v for k, v in fld.params.items() if k in eq.params})
            rep = Q.scan(tag, {eq.fields[0]: fld}, params, region, 12, 1e-8)
            assert rep.passed, (name, tag, rep.max_rel)


def test_seed_requires_nonzero_spectral_parameter():
    with pytest.raises(ValueError):
        C.seed_family(0.0)


def test_seed_values_and_limit():
    tup = C.seed_family(1.0, 0.0, 0.0)
    assert abs(tup.u.value((0, 0))) < 1e-15
    assert abs(tup.u1.value((0, 0))) < 1e-15
    assert abs(cmath.exp(tup.v.value((0, 0))) + 1) < 1e-12
    assert abs(tup.g.value((0, 0))) < 1e-15
    assert abs(tup.u1.value((30, 0)) + 2) < 1e-10  # tanh saturation


def test_seed_tuple_residuals():
    tup = C.seed_family(1.0, 0.3, -0.7)
    F = tup.fields()
    for tag in ("pkdv", "bt-x", "bt-t", "prolong-v-x", "prolong-v-t",
                "prolong-g-x", "prolong-g-t"):
        fl = {"u": tup.u} if tag == "pkdv" else F
        rep = Q.scan(tag, fl, {"lam": 1.0}, REG, 20, 1e-10)
        assert rep.passed, (tag, rep.max_rel)


def test_levi_identity_is_exact():
    tup = C.seed_family(1.0, 0.3, -0.7)
    lv0 = C.levi_apply(tup, 0.0)
    for p in ((0.3, 0.2), (-1.1, 0.7)):
        assert np.array_equal(tup.u.jet(p, (3, 1)).coef,
                              lv0.u.jet(p, (3, 1)).coef)
        assert np.array_equal(tup.g.jet(p, (2, 1)).coef,
                              lv0.g.jet(p, (2, 1)).coef)


def test_levi_value_check():
    tup = C.seed_family(1.0, 0.0, 0.0)
    assert abs(C.levi_apply(tup, 1.0).u.value((0, 0)) + 1) < 1e-12


def test_levi_group_composition():
    tup = C.seed_family(1.0, 0.3, -0.7)
    lv12 = C.levi_apply(C.levi_apply(tup, 0.4), -0.9)
    lvs = C.levi_apply(tup, -0.5)
    pts = sample_points(REG, 10, lv12.u.loci + lvs.u.loci)
    for p in pts:
        assert abs(lv12.u.value(p) - lvs.u.value(p)) < 1e-9
        assert abs(lv12.g.value(p) - lvs.g.value(p)) < 1e-9


def test_levi_matches_displayed_forms():
    tup = C.seed_family(1.0, 0.3, -0.7)
    for eps in (-1.0, 0.5, 2.0):
        lv = C.levi_apply(tup, eps)
        ub, omb = C.levi_printed_pair(1.0, 0.3, -0.7, eps)
        om = C.kdv_from_pkdv(lv.u)
        pts = sample_points(REG, 12, lv.u.loci)
        for p in pts:
            assert abs(lv.u.value(p) - ub.value(p)) < 1e-9
            assert abs(om.value(p) - omb.value(p)) < 1e-9 * (1 + abs(omb.value(p)))


def test_kdv_from_pkdv_on_constant():
    tup = C.seed_family(1.0, 0.7, 0.0)
    om = C.kdv_from_pkdv(tup.u)
    assert abs(om.value((0.4, 0.3))) < 1e-15


def test_rational_family_values():
    om1, _ = C.rational_family()
    assert abs(om1.value((1.0, 0.0)) - 1.0) < 1e-14
    rep = Q.scan("kdv", {"w": om1}, {}, Region({"x": (-5, 5), "t": (0.1, 1)}),
                 30, 1e-10)
    assert rep.passed


def test_negative_flow_catalog():
    sols = C.negative_flow_solutions()
    assert set(sols) == {"u_neg", "beta", "eta_liouville", "eta_sg"}
    assert abs(sols["u_neg"].value((1.0, 1.0)) + 1.0) < 1e-15


def test_pii_reconstruct_rational_matches_catalog():
    P = C.field("pii-p-rational")
    G = C.field("pii-g-rational")
    om1_ref, om63 = C.rational_family()
    o1, o2 = C.pii_reconstruct(P, G, a4=-3.0)
    reg = Region({"x": (0.5, 5), "t": (0.05, 0.8)})
    pts = sample_points(reg, 20, o1.loci)
    for p in pts:
        assert abs(o1.value(p) - om1_ref.value(p)) < 1e-9
        assert abs(o2.value(p) - om63.value(p)) < 1e-9 * (1 + abs(om63.value(p)))


def test_pii_reconstruct_zero_profile():
    from intlab.fields import Field
    P0 = Field.from_expression("p0", "0*xi", ("xi",))
    o1, _ = C.pii_reconstruct(P0, None, a4=-1.0, lam=0.8)  # alpha = 0
    assert abs(o1.value((0.7, 0.2)) + 0.8) < 1e-13


def test_pii_reconstruct_second_member_needs_G():
    P = C.field("pii-p-rational")
    _, o2 = C.pii_reconstruct(P, None, a4=-3.0)
    with pytest.raises(FieldError):
        o2.value((1.0, 0.2))


def test_pii_reconstruct_residual_invariant_under_grid_translation():
    P = C.field("pii-p-rational")
    G = C.field("pii-g-rational")
    _, o2 = C.pii_reconstruct(P, G, a4=-3.0)
    r1 = Q.scan("kdv", {"w": o2}, {}, Region({"x": (0.5, 4), "t": (0.05, 0.7)}),
                15, 1e-9)
    r2 = Q.scan("kdv", {"w": o2}, {}, Region({"x": (1.5, 5), "t": (0.15, 0.8)}),
                15, 1e-9)
    assert r1.passed and r2.passed


def test_elliptic_constraints_exponent_variants():
    a5, a7 = C.elliptic_constraints(1.0, 2.0, 0.8)
    a5p, a7p = C.elliptic_constraints(1.0, 2.0, 0.8, as_printed=True)
    assert a5 == a5p
    assert abs(a7 / a7p - 2.0) < 1e-14  # cubic vs quadratic power at a3=2


def test_cnoidal_omega3_solves_kdv_and_limit():
    om3, _ = C.cnoidal_family()
    reg = Region({"x": (-3, 3), "t": (0.05, 0.6)})
    rep = Q.scan("kdv", {"w": om3}, {}, reg, 20, 1e-8)
    assert rep.passed
    om3n, _ = C.cnoidal_family(n=0.999999)
    assert abs(om3n.value((0.3, 0.2)) - (4.0 / 16.0 - 1.0)) < 1e-3


def test_cnoidal_omega4_breakdown_has_five_terms():
    bd = C.cnoidal_omega4_term_values((0.3, 0.2))
    assert len(bd) == 5
    assert all(isinstance(v, complex) for v in bd.values())


def test_field_errors():
    with pytest.raises(KeyError):
        C.field("no-such-family")
    with pytest.raises(FieldError):
        C.field("seed")
    with pytest.raises(FieldError):
        C.field("bessel-omega2-printed")
    with pytest.raises(KeyError):
        C.field("rational-omega1", bogus=1.0)
