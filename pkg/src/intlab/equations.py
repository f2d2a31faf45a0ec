"""Registry of pointwise (non-bilinear) equations and residual machinery.

Each equation evaluates to a list of its additive terms at a point, computed
from jets of the participating fields; the raw residual is the term sum and
the relative residual is |raw| / (1 + sum |term|), so "zero" is judged
against the size of what cancelled.

Tags cover the KdV/potential-KdV pair, the auto-Backlund relations read both
as a transformation and as a nonlinear Lax pair, the prolonged system with
auxiliary fields (v, g), the Schwarzian form, the first negative flow with
its sine-Gordon/Liouville reductions, the seven-relation linearized system,
and the reduced ODEs of the similarity pipelines.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.integrate import quad as _quad

from .fields import Field
from .jets import Jet, JetError, apply_function
from .reporting import PointResidual, ResidualReport
from .sampling import Region, sample_points

__all__ = [
    "Equation", "EQUATIONS", "normalize_tag",
    "residual_terms", "residual_at", "scan",
    "nonlocal_symmetry_sigma", "bilinear_symmetry_sigma_psi",
    "bilinear_symmetry_residual", "cole_hopf_symmetry_map",
    "point_symmetry_fields", "miura_identity_check",
    "schwarzian",
]


@dataclass(frozen=True)
class Equation:
    tag: str
    vars: tuple[str, ...]
    fields: tuple[str, ...]
    params: tuple[str, ...]
    orders: dict[str, tuple[int, ...]]
    terms: Callable[[dict[str, Jet], dict[str, complex]], list[complex]]


def _p(params: Mapping[str, complex], name: str, default: complex | None = None) -> complex:
    if name in params:
        return complex(params[name])
    if default is not None:
        return complex(default)
    raise KeyError(f"missing equation parameter {name!r}")


# --- term functions ---------------------------------------------------------

def _kdv(J, P):
    w = J["w"]
    return [w.extract(0, 1), w.extract(3, 0), -6.0 * w.extract(0, 0) * w.extract(1, 0)]


def _pkdv(J, P):
    u = J["u"]
    return [u.extract(0, 1), u.extract(3, 0), -3.0 * u.extract(1, 0) ** 2]


def _bt_x(J, P):
    u, u1 = J["u"], J["u1"]
    lam = _p(P, "lam")
    du = u.extract(0, 0) - u1.extract(0, 0)
    return [u.extract(1, 0), u1.extract(1, 0), 2.0 * lam, -0.5 * du * du]


def _bt_t(J, P):
    u, u1 = J["u"], J["u1"]
    ux, u1x = u.extract(1, 0), u1.extract(1, 0)
    du = u.extract(0, 0) - u1.extract(0, 0)
    return [
        u.extract(0, 1), u1.extract(0, 1),
        -2.0 * ux ** 2, -2.0 * u1x ** 2, -2.0 * ux * u1x,
        du * (u.extract(2, 0) - u1.extract(2, 0)),
    ]


def _sym_pkdv(J, P):
    s, u = J["sigma"], J["u"]
    return [s.extract(0, 1), s.extract(3, 0), -6.0 * u.extract(1, 0) * s.extract(1, 0)]


def _prolong_v_x(J, P):
    return [J["v"].extract(1, 0), -(J["u"].extract(0, 0) - J["u1"].extract(0, 0))]


def _prolong_v_t(J, P):
    u, u1, v = J["u"], J["u1"], J["v"]
    lam = _p(P, "lam")
    du = u.extract(0, 0) - u1.extract(0, 0)
    return [v.extract(0, 1), -2.0 * du * (u.extract(1, 0) - 2.0 * lam),
            2.0 * u.extract(2, 0)]


def _prolong_g_x(J, P):
    return [J["g"].extract(1, 0), -cmath.exp(J["v"].extract(0, 0))]


def _prolong_g_t(J, P):
    u, u1, v, g = J["u"], J["u1"], J["v"], J["g"]
    lam = _p(P, "lam")
    du = u.extract(0, 0) - u1.extract(0, 0)
    ev = cmath.exp(v.extract(0, 0))
    return [g.extract(0, 1), ev * (2.0 * u.extract(1, 0) + 8.0 * lam - du * du)]


def schwarzian(g: Jet) -> complex:
    """{g; x} = g_xxx/g_x - (3/2)(g_xx/g_x)^2 at the jet's base point."""
    gx = g.extract(1, 0)
    if abs(gx) < 1e-12:
        raise JetError("Schwarzian derivative at a critical point of g")
    return g.extract(3, 0) / gx - 1.5 * (g.extract(2, 0) / gx) ** 2


def _skdv(J, P):
    g = J["g"]
    lam = _p(P, "lam")
    gx = g.extract(1, 0)
    return [g.extract(0, 1), schwarzian(g) * gx, 6.0 * lam * gx]


def _neg1(J, P):
    u = J["u"]
    lam1 = _p(P, "lam1", 0.0)
    ut = u.extract(0, 1)
    return [
        2.0 * u.extract(2, 1) * ut,
        -4.0 * u.extract(1, 0) * ut ** 2,
        -u.extract(1, 1) ** 2,
        -4.0 * lam1 * ut ** 2,
    ]


def _a_quantity(beta: Jet) -> Jet:
    # -beta_xx/(2 beta) + beta_x^2/(4 beta^2)
    bx = beta.deriv("x", 1)
    bxx = beta.deriv("x", 2)
    return -bxx / (2.0 * beta) + (bx * bx) / (4.0 * beta * beta)


def _beta_form(J, P):
    beta = J["beta"]
    A = _a_quantity(beta)
    return [beta.extract(1, 0), -A.extract(0, 1)]


def _beta_int(J, P):
    beta = J["beta"]
    beta0 = _p(P, "beta0", 0.0)
    lnb = apply_function("log", beta.truncate((1, 1)))
    b = beta.extract(0, 0)
    return [b * lnb.extract(1, 1), b * b, -beta0]


def _sine_gordon(J, P):
    eta = J["eta"]
    return [eta.extract(1, 1), -cmath.sin(eta.extract(0, 0))]


def _liouville(J, P):
    eta = J["eta"]
    return [eta.extract(1, 1), -cmath.exp(eta.extract(0, 0))]


def _lin_ctx(J, P):
    u, u1 = J["u"], J["u1"]
    lam = _p(P, "lam")
    return {
        "lam": lam,
        "du": u.extract(0, 0) - u1.extract(0, 0),
        "ux": u.extract(1, 0),
        "uxx": u.extract(2, 0),
        "S": J["sigma"].extract(0, 0) - J["sigma1"].extract(0, 0),
    }


def _linearized_1(J, P):
    s, u = J["sigma"], J["u"]
    return [s.extract(0, 1), s.extract(3, 0), -6.0 * u.extract(1, 0) * s.extract(1, 0)]


def _linearized_2(J, P):
    c = _lin_ctx(J, P)
    return [J["sigma1"].extract(1, 0), J["sigma"].extract(1, 0), -c["S"] * c["du"]]


def _linearized_3(J, P):
    c = _lin_ctx(J, P)
    s = J["sigma"]
    return [
        J["sigma1"].extract(0, 1),
        -s.extract(3, 0),
        2.0 * c["du"] * s.extract(2, 0),
        2.0 * c["S"] * c["uxx"],
        -(4.0 * c["lam"] + c["du"] ** 2 - 2.0 * c["ux"]) * s.extract(1, 0),
        2.0 * c["S"] * c["du"] * (2.0 * c["lam"] - c["ux"]),
    ]


def _linearized_4(J, P):
    return [J["sigma2"].extract(1, 0), -J["sigma"].extract(0, 0),
            J["sigma1"].extract(0, 0)]


def _linearized_5(J, P):
    c = _lin_ctx(J, P)
    s = J["sigma"]
    return [
        J["sigma2"].extract(0, 1),
        2.0 * s.extract(2, 0),
        -2.0 * c["du"] * s.extract(1, 0),
        -2.0 * c["S"] * (c["ux"] - 2.0 * c["lam"]),
    ]


def _linearized_6(J, P):
    ev = cmath.exp(J["v"].extract(0, 0))
    return [J["sigma3"].extract(1, 0), -ev * J["sigma2"].extract(0, 0)]


def _linearized_7(J, P):
    c = _lin_ctx(J, P)
    ev = cmath.exp(J["v"].extract(0, 0))
    s2 = J["sigma2"].extract(0, 0)
    return [
        J["sigma3"].extract(0, 1),
        2.0 * ev * J["sigma"].extract(1, 0),
        -2.0 * ev * c["du"] * c["S"],
        -ev * c["du"] ** 2 * s2,
        2.0 * ev * (4.0 * c["lam"] + c["ux"]) * s2,
    ]


def _reduced_h(J, P):
    H = J["H"]
    a4, a7 = _p(P, "a4"), _p(P, "a7")
    xi = H.point[0]
    h = H.extract(0)
    if abs(h) < 1e-12:
        raise JetError("reduced equation evaluated at a zero of H")
    hp = H.extract(1)
    return [
        H.extract(2),
        -0.5 * hp * hp / h,
        -4.0 * a7 * h * h,
        xi * h,
        a4 * a4 / (32.0 * a7 * a7 * h),
    ]


def _pii(J, P):
    Pj = J["P"]
    alpha = _p(P, "alpha")
    xi = Pj.point[0]
    p0 = Pj.extract(0)
    return [Pj.extract(2), -2.0 * p0 ** 3, -xi * p0, -alpha]


def _elliptic_w(J, P):
    W = J["W"]
    a2, a3 = _p(P, "a2"), _p(P, "a3")
    a5, a7 = _p(P, "a5"), _p(P, "a7")
    w0 = W.extract(0)
    wz = W.extract(1)
    return [wz * wz, -a2 * a2 * w0 ** 4, -a3 * w0 ** 3, a5 * w0 * w0, -a7 * w0]


_XT = ("x", "t")

EQUATIONS: dict[str, Equation] = {}


def _register(tag, vars, fields, params, orders, terms):
    EQUATIONS[tag] = Equation(tag, tuple(vars), tuple(fields), tuple(params),
                              dict(orders), terms)


_register("kdv", _XT, ("w",), (), {"w": (3, 1)}, _kdv)
_register("pkdv", _XT, ("u",), (), {"u": (3, 1)}, _pkdv)
_register("bt-x", _XT, ("u", "u1"), ("lam",), {"u": (1, 0), "u1": (1, 0)}, _bt_x)
_register("bt-t", _XT, ("u", "u1"), (), {"u": (2, 1), "u1": (2, 1)}, _bt_t)
# the Lax reading of the transformation shares the relations, solved for u1
_register("lax-x", _XT, ("u", "u1"), ("lam",), {"u": (1, 0), "u1": (1, 0)}, _bt_x)
_register("lax-t", _XT, ("u", "u1"), (), {"u": (2, 1), "u1": (2, 1)}, _bt_t)
_register("sym-pkdv", _XT, ("sigma", "u"), (), {"sigma": (3, 1), "u": (1, 0)}, _sym_pkdv)
_register("prolong-v-x", _XT, ("u", "u1", "v"), (),
          {"u": (0, 0), "u1": (0, 0), "v": (1, 0)}, _prolong_v_x)
_register("prolong-v-t", _XT, ("u", "u1", "v"), ("lam",),
          {"u": (2, 0), "u1": (0, 0), "v": (0, 1)}, _prolong_v_t)
_register("prolong-g-x", _XT, ("v", "g"), (), {"v": (0, 0), "g": (1, 0)}, _prolong_g_x)
_register("prolong-g-t", _XT, ("u", "u1", "v", "g"), ("lam",),
          {"u": (1, 0), "u1": (0, 0), "v": (0, 0), "g": (0, 1)}, _prolong_g_t)
_register("skdv", _XT, ("g",), ("lam",), {"g": (3, 1)}, _skdv)
_register("neg1", _XT, ("u",), ("lam1",), {"u": (2, 1)}, _neg1)
_register("beta-form", _XT, ("beta",), (), {"beta": (3, 1)}, _beta_form)
_register("beta-int", _XT, ("beta",), ("beta0",), {"beta": (1, 1)}, _beta_int)
_register("sine-gordon", _XT, ("eta",), (), {"eta": (1, 1)}, _sine_gordon)
_register("liouville", _XT, ("eta",), (), {"eta": (1, 1)}, _liouville)

_LIN_FIELDS = ("sigma", "sigma1", "sigma2", "sigma3", "u", "u1", "v")
_LIN_ORDERS = {"sigma": (3, 1), "sigma1": (1, 1), "sigma2": (1, 1),
               "sigma3": (1, 1), "u": (2, 0), "u1": (0, 0), "v": (0, 0)}
for _i, _fn in enumerate(
    (_linearized_1, _linearized_2, _linearized_3, _linearized_4,
     _linearized_5, _linearized_6, _linearized_7), start=1):
    _register(f"linearized-{_i}", _XT, _LIN_FIELDS, ("lam",), _LIN_ORDERS, _fn)

_register("reduced-h", ("xi",), ("H",), ("a4", "a7"), {"H": (2,)}, _reduced_h)
_register("pii", ("xi",), ("P",), ("alpha",), {"P": (2,)}, _pii)
_register("elliptic-w", ("z",), ("W",), ("a2", "a3", "a5", "a7"), {"W": (1,)},
          _elliptic_w)


def normalize_tag(tag: str) -> str:
    key = tag.strip().lower().replace("_", "-")
    if key not in EQUATIONS:
        raise KeyError(f"unknown equation tag {tag!r}")
    return key


def _fetch_jets(eq: Equation, fields: Mapping[str, Field],
                point: Sequence[complex]) -> dict[str, Jet]:
    jets = {}
    for name in eq.fields:
        if name not in fields:
            raise KeyError(f"equation {eq.tag!r} needs field {name!r}")
        jets[name] = fields[name].jet(point, eq.orders[name])
    return jets


def residual_terms(eq: str | Equation, fields: Mapping[str, Field],
                   params: Mapping[str, complex],
                   point: Sequence[complex]) -> tuple[complex, float]:
    """(raw residual, sum of |term|) for one equation at one point."""
    if isinstance(eq, str):
        eq = EQUATIONS[normalize_tag(eq)]
    terms = eq.terms(_fetch_jets(eq, fields, point), dict(params))
    raw = sum(terms)
    scale = float(sum(abs(t) for t in terms))
    return raw, scale


def residual_at(eq: str | Equation, fields: Mapping[str, Field],
                params: Mapping[str, complex],
                point: Sequence[complex]) -> complex:
    return residual_terms(eq, fields, params, point)[0]


def scan(eq: str | Equation, fields: Mapping[str, Field],
         params: Mapping[str, complex], region: Region, count: int,
         tolerance: float, informational: bool = False,
         note: str = "") -> ResidualReport:
    """Residual report over quasi-random nonsingular points of the region."""
    if isinstance(eq, str):
        eq = EQUATIONS[normalize_tag(eq)]
    loci = []
    for name in eq.fields:
        loci.extend(fields[name].loci)
    pts = sample_points(region, count, loci)
    rows = []
    for pt in pts:
        raw, scale = residual_terms(eq, fields, params, pt)
        rel = abs(raw) / (1.0 + scale)
        x = pt[0].real
        t = pt[1].real if len(pt) > 1 else 0.0
        rows.append(PointResidual(x, t, raw, rel))
    return ResidualReport(
        equation=eq.tag,
        fields=tuple(fields[name].name for name in eq.fields),
        params={k: complex(v) for k, v in params.items()},
        tolerance=tolerance,
        points=rows,
        informational=informational,
        note=note,
    )


# ---------------------------------------------------------------------------
# symmetry constructions
# ---------------------------------------------------------------------------

_DEGENERACY_PROBES = ((0.13, 0.07), (0.41, 0.23), (-0.29, 0.11))


def nonlocal_symmetry_sigma(tup) -> Field:
    """The exp(v) symmetry of the potential equation, localized by the
    auxiliary field v of the prolonged system."""
    seen_distinct = False
    for pt in _DEGENERACY_PROBES:
        try:
            if abs(tup.u.value(pt) - tup.u1.value(pt)) > 1e-10:
                seen_distinct = True
                break
        except (JetError, ValueError):
            continue
    if not seen_distinct:
        raise ValueError(
            "degenerate pair: u and u1 coincide, the auxiliary field v is undefined"
        )
    v = tup.v

    def fn(env):
        pt = tuple(env[k].point[i] for i, k in enumerate(("x", "t")))
        orders = env["x"].orders
        return apply_function("exp", v.jet(pt, orders))

    return Field.from_function("sigma=exp(v)", fn, ("x", "t"),
                               params=dict(v.params), loci=v.loci)


def bilinear_symmetry_sigma_psi(psi: Field, psi1: Field,
                                antiderivative: Field | None = None,
                                x_ref: float = 0.0) -> Field:
    """sigma_psi = -(psi/2) * integral of (psi1/psi)^2 dx.

    With ``antiderivative`` given, it is used directly (closed form); else the
    x-antiderivative is built by quadrature from ``x_ref``, with t-derivative
    coefficients obtained by differentiating under the integral sign.
    """
    if antiderivative is not None:
        Q = antiderivative
    else:
        Q = _quadrature_antiderivative(psi, psi1, x_ref)

    def fn(env):
        x = env["x"]
        pt, orders = x.point, x.orders
        return -0.5 * psi.jet(pt, orders) * Q.jet(pt, orders)

    return Field.from_function(f"sigma_psi[{psi.name},{psi1.name}]", fn, ("x", "t"),
                               loci=tuple(psi.loci) + tuple(psi1.loci))


def _quadrature_antiderivative(psi: Field, psi1: Field, x_ref: float) -> Field:
    def integrand_jet(pt, orders):
        a = psi1.jet(pt, orders)
        b = psi.jet(pt, orders)
        r = a / b
        return r * r

    def evaluator(point, orders):
        x0, t0 = point
        # guard: the quadrature path must not cross a zero of psi
        for s in np.linspace(0.0, 1.0, 41):
            xs = x_ref + (x0.real - x_ref) * s
            if abs(psi.value((xs, t0))) < 1e-6:
                raise ValueError(
                    f"quadrature path [{x_ref}, {x0.real}] crosses a zero of psi"
                )
        Kx, Kt = orders
        coef = np.zeros((Kx + 1, Kt + 1), dtype=complex)
        for j in range(Kt + 1):
            def rej(s, _j=j):
                g = integrand_jet((s, t0), (0, Kt))
                return g.coef[0, _j].real

            def imj(s, _j=j):
                g = integrand_jet((s, t0), (0, Kt))
                return g.coef[0, _j].imag

            re_val = _quad(rej, x_ref, x0.real, limit=200)[0]
            im_val = _quad(imj, x_ref, x0.real, limit=200)[0]
            coef[0, j] = re_val + 1j * im_val
        if Kx >= 1:
            inner = integrand_jet(point, (Kx - 1, Kt))
            for i in range(1, Kx + 1):
                for j in range(Kt + 1):
                    coef[i, j] = inner.coef[i - 1, j] / i
        return Jet(("x", "t"), point, orders, coef)

    return Field(f"int[({psi1.name}/{psi.name})^2 dx]", ("x", "t"), evaluator)


def bilinear_symmetry_residual(sigma_psi: Field, psi: Field,
                               point: Sequence[complex]) -> tuple[complex, float]:
    """Residual of the linearized bilinear equation (D_x^4 + D_x D_t) s.psi = 0."""
    from .bilinear import hirota_D

    t1 = hirota_D(4, 0, sigma_psi, psi, point)
    t2 = hirota_D(1, 1, sigma_psi, psi, point)
    return t1 + t2, abs(t1) + abs(t2)


def cole_hopf_symmetry_map(sigma_psi: Field, psi: Field,
                           point: Sequence[complex]) -> complex:
    """2 psi_x sigma_psi / psi^2 - 2 sigma_psi_x / psi at a point.

    This is the potential-level symmetry induced by the bilinear-level one;
    comparing it with exp(v) exposes the multiplicative constant coming from
    the antiderivative's base point.
    """
    sp = sigma_psi.jet(point, (1, 0))
    ps = psi.jet(point, (1, 0))
    return (2.0 * ps.extract(1, 0) * sp.extract(0, 0) / ps.extract(0, 0) ** 2
            - 2.0 * sp.extract(1, 0) / ps.extract(0, 0))


def point_symmetry_fields(tup, coeffs: Sequence[complex]):
    """The four symmetry components generated by the seven-parameter point
    symmetry algebra of the prolonged system.

    ``coeffs`` are (c1..c7); returns fields (sigma, sigma1, sigma2, sigma3)
    built as X f_x + T f_t - F for each dependent field.
    """
    c1, c2, c3, c4, c5, c6, c7 = [complex(c) for c in coeffs]
    lam = complex(tup.lam)
    u, u1, v, g = tup.u, tup.u1, tup.v, tup.g

    def make(component: str) -> Field:
        def fn(env):
            x, t = env["x"], env["t"]
            pt, orders = x.point, x.orders
            bumped = tuple(k + 1 for k in orders)
            uj = u.jet(pt, bumped)
            u1j = u1.jet(pt, bumped)
            vj = v.jet(pt, bumped)
            gj = g.jet(pt, bumped)
            X = c1 * (x + 12.0 * lam * t) + c5
            T = 3.0 * c1 * t + c2
            if component == "sigma":
                F = -c1 * (2.0 * lam * x + uj) + 2.0 * c4 * apply_function("exp", vj) + c3
                f = uj
            elif component == "sigma1":
                F = -c1 * (2.0 * lam * x + u1j) + c3
                f = u1j
            elif component == "sigma2":
                F = -c1 + 2.0 * c4 * gj + c6
                f = vj
            else:
                F = c4 * gj * gj + c6 * gj + c7
                f = gj
            return X * f.deriv("x", 1) + T * f.deriv("t", 1) - F

        return Field.from_function(component, fn, ("x", "t"))

    return (make("sigma"), make("sigma1"), make("sigma2"), make("sigma3"))


def miura_identity_check(beta: Field, points: Sequence[Sequence[complex]],
                         tolerance: float = 1e-12) -> ResidualReport:
    """A = -theta_x - theta^2 with theta = beta_x/(2 beta): an algebraic
    identity for smooth nonvanishing beta, checked as a residual."""
    rows = []
    for pt in points:
        b = beta.jet(pt, (2, 0))
        if abs(b.value) < 1e-9:
            raise ValueError(f"beta vanishes near point {pt}")
        theta = b.deriv("x", 1) / (2.0 * b)
        lhs = _a_quantity(b).extract(0, 0)
        rhs = (-theta.deriv("x", 1) - theta * theta).extract(0, 0)
        raw = lhs - rhs
        rel = abs(raw) / (1.0 + abs(lhs) + abs(rhs))
        rows.append(PointResidual(complex(pt[0]).real, complex(pt[1]).real, raw, rel))
    return ResidualReport("miura-identity", (beta.name,), {}, tolerance, rows)
