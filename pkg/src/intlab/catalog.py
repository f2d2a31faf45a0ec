"""Closed-form solution families and the constructive maps between them.

Families defined by a single expression live in ``data/catalog.json`` (one
manifest entry per family: expression text, default parameters, singular
loci, which equations it satisfies).  Families that need composition with
univariate ODE/quadrature-backed functions (the similarity reductions) are
built here as jet-composing closures.

Printed long-form expressions that the source derivations only determine up
to possible transcription slips are kept verbatim under ``*-printed`` names
and are always checked informationally, next to the constructive pipeline
that re-derives them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .fields import Field, FieldError
from .jets import Jet, apply_function

__all__ = [
    "ProlongedTuple", "SeedTuple",
    "load_manifest", "field", "field_names",
    "seed_family", "levi_apply", "levi_printed_pair", "kdv_from_pkdv",
    "rational_family", "negative_flow_solutions", "bessel_family",
    "elliptic_constraints", "cnoidal_family", "cnoidal_omega4_term_values",
    "pii_reconstruct", "psi1_lambda_field",
]

_MANIFEST = None


def load_manifest() -> dict:
    global _MANIFEST
    if _MANIFEST is None:
        text = resources.files("intlab.data").joinpath("catalog.json").read_text()
        _MANIFEST = json.loads(text)
    return _MANIFEST


def field_names() -> list[str]:
    return sorted(load_manifest())


def field(name: str, **overrides: complex) -> Field:
    """Instantiate a manifest family with parameter overrides."""
    entry = load_manifest().get(name)
    if entry is None:
        raise KeyError(f"unknown catalog family {name!r}")
    if "members" in entry:
        raise FieldError(f"{name!r} is a tuple family; use seed_family()")
    if entry.get("expression", "ODE-backed") == "ODE-backed":
        raise FieldError(
            f"{name!r} is builder-backed; use the matching catalog function"
        )
    params = {k: complex(v) for k, v in entry.get("parameters", {}).items()}
    unknown = set(overrides) - set(params)
    if unknown:
        raise KeyError(f"{name!r} has no parameters {sorted(unknown)}")
    params.update({k: complex(v) for k, v in overrides.items()})
    return Field.from_expression(name, entry["expression"], entry["variables"],
                                 params=params, loci=entry.get("loci", ()))


@dataclass(frozen=True)
class ProlongedTuple:
    """A (u, u1, v, g) tuple solving the prolonged system at parameter lam."""
    u: Field
    u1: Field
    v: Field
    g: Field
    lam: complex
    c: complex = 0.0
    c0: complex = 0.0

    def fields(self) -> dict[str, Field]:
        return {"u": self.u, "u1": self.u1, "v": self.v, "g": self.g}


SeedTuple = ProlongedTuple


def seed_family(lam: complex = 1.0, c: complex = 0.0, c0: complex = 0.0) -> SeedTuple:
    """The trivial-background tuple: u = c with its kink partner and the
    auxiliary pair (v, g) integrating the prolongation relations."""
    lam = complex(lam)
    if lam == 0:
        raise ValueError("seed family requires lam != 0 (sqrt(lam) appears)")
    entry = load_manifest()["seed"]
    params = {"lam": lam, "c": complex(c), "c0": complex(c0)}
    members = {
        key: Field.from_expression(f"seed.{key}", text, entry["variables"],
                                   params=params)
        for key, text in entry["members"].items()
    }
    return SeedTuple(members["u"], members["u1"], members["v"], members["g"],
                     lam, complex(c), complex(c0))


def levi_apply(tup: ProlongedTuple, eps: complex) -> ProlongedTuple:
    """One step of the finite transformation

        u -> u + 2 eps e^v / (2 - eps g),   v -> v + 2 ln(2/(2 - eps g)),
        g -> 2 g / (2 - eps g),             u1 unchanged,

    a one-parameter group in eps with poles where eps g = 2."""
    eps = complex(eps)
    u, u1, v, g = tup.u, tup.u1, tup.v, tup.g

    def _jets(env, orders_pad=0):
        x = env["x"]
        return x.point, x.orders

    def ubar_fn(env):
        pt, orders = _jets(env)
        uj = u.jet(pt, orders)
        if eps == 0:
            return uj
        vj = v.jet(pt, orders)
        gj = g.jet(pt, orders)
        return uj + 2.0 * eps * apply_function("exp", vj) / (2.0 - eps * gj)

    def vbar_fn(env):
        pt, orders = _jets(env)
        vj = v.jet(pt, orders)
        if eps == 0:
            return vj
        gj = g.jet(pt, orders)
        return vj + 2.0 * (np.log(2.0) - apply_function("log", 2.0 - eps * gj))

    def gbar_fn(env):
        pt, orders = _jets(env)
        gj = g.jet(pt, orders)
        if eps == 0:
            return gj
        return 2.0 * gj / (2.0 - eps * gj)

    pole = Field.from_function(
        f"2-eps*g[eps={eps.real:g}]",
        lambda env: 2.0 - eps * g.jet(env["x"].point, env["x"].orders),
        ("x", "t"),
    )
    loci = tup.u.loci + ((pole,) if eps != 0 else ())
    name = f"levi[eps={eps.real:g}]"
    ubar = Field.from_function(f"{name}.u", ubar_fn, ("x", "t"), loci=loci)
    vbar = Field.from_function(f"{name}.v", vbar_fn, ("x", "t"), loci=loci)
    gbar = Field.from_function(f"{name}.g", gbar_fn, ("x", "t"), loci=loci)
    return ProlongedTuple(ubar, u1, vbar, gbar, tup.lam, tup.c, tup.c0)


_ZETA = "sqrt(lam)*(4*lam*t - x)"

_UBAR_TEXT = (
    f"c - 8*sqrt(lam)*eps*cosh({_ZETA})^2/"
    f"(8*sqrt(lam) - eps*(sinh(2*({_ZETA})) - 2*sqrt(lam)*(x - 12*lam*t - 2*c0)))"
)

_OMEGABAR_TEXT = (
    f"16*lam*eps*((cosh(2*({_ZETA})) + 1)*eps"
    f" + sqrt(lam)*sinh(2*({_ZETA}))*(4 + eps*(x - 12*lam*t - 2*c0)))/"
    f"(8*sqrt(lam) - eps*(sinh(2*({_ZETA})) - 2*sqrt(lam)*(x - 12*lam*t - 2*c0)))^2"
)


def levi_printed_pair(lam: complex, c: complex, c0: complex,
                      eps: complex) -> tuple[Field, Field]:
    """The displayed closed forms of the once-transformed solution and its
    x-derivative, for cross-checking the constructive transformation."""
    params = {"lam": complex(lam), "c": complex(c), "c0": complex(c0),
              "eps": complex(eps)}
    denom = (f"8*sqrt(lam) - eps*(sinh(2*({_ZETA}))"
             f" - 2*sqrt(lam)*(x - 12*lam*t - 2*c0))")
    ubar = Field.from_expression("levi-ubar-printed", _UBAR_TEXT, ("x", "t"),
                                 params=params, loci=[denom])
    omegabar = Field.from_expression("levi-omegabar-printed", _OMEGABAR_TEXT,
                                     ("x", "t"), params=params, loci=[denom])
    return ubar, omegabar


def kdv_from_pkdv(u: Field) -> Field:
    """omega = u_x, the KdV-level solution under a pKdV-level one."""
    out = u.diff("x", 1)
    return Field(f"dx({u.name})", out.vars, out.evaluator, out.params, out.loci)


def rational_family(lam: complex = 1.0, c2: complex = 0.0,
                    c5: complex = 0.0) -> tuple[Field, Field]:
    """The two rational KdV solutions of the alpha=1 similarity reduction:
    the pole-squared family (free parameters) and the verbatim printed long
    rational form (parameters frozen as printed)."""
    omega1 = field("rational-omega1", lam=lam, c2=c2, c5=c5)
    omega2 = field("rational-omega2-printed")
    return omega1, omega2


def negative_flow_solutions() -> dict[str, Field]:
    return {
        "u_neg": field("neg-u"),
        "beta": field("neg-beta"),
        "eta_liouville": field("eta-liouville"),
        "eta_sg": field("eta-sine-gordon"),
    }


def psi1_lambda_field() -> Field:
    """cosh-kernel partner as a field over (x, t, lam): lifting it with a
    lam axis at lam=0 yields the coefficient chain of the spectral expansion."""
    entry = load_manifest()["psi1-cosh"]
    return Field.from_expression("psi1-cosh(lam)", entry["expression"],
                                 ("x", "t", "lam"))


# ---------------------------------------------------------------------------
# Bessel-quotient family (the alpha = 1/2 similarity reduction)
# ---------------------------------------------------------------------------

def _bessel_pair(env):
    x, t = env["x"], env["t"]
    X = x - 6.0 * t
    theta = (np.sqrt(6.0) / 9.0) * X ** 1.5 / apply_function("sqrt", t)
    J1 = apply_function("bessel_j", theta, (1.0 / 3.0,))
    J2 = apply_function("bessel_j", theta, (-2.0 / 3.0,))
    return X, J1, J2


def _bessel_omega2_pieces(env):
    x, t = env["x"], env["t"]
    X, J1, J2 = _bessel_pair(env)
    st = apply_function("sqrt", t)
    c13, c23 = 2.0 ** (1.0 / 3.0), 2.0 ** (2.0 / 3.0)
    c56, c16 = 2.0 ** (5.0 / 6.0), 2.0 ** (1.0 / 6.0)
    r3, r6 = np.sqrt(3.0), np.sqrt(6.0)
    A = x * X * X  # x (x-6t)^2, the recurring cubic weight
    psi_terms = [
        32.0 * st * X ** 4 * ((A - 12.0 * t) * J1 ** 6 + A * J2 ** 6),
        128.0 * r6 * t * X ** 5 * apply_function("sqrt", X) * (J1 ** 5 * J2 + J2 ** 5 * J1),
        96.0 * st * X ** 4 * ((A - 4.0 * t) * J1 ** 4 * J2 ** 2 + A * J2 ** 4 * J1 ** 2),
        -72.0 * c13 * st * X * X * ((A - 4.0 * t) * J1 ** 4 + A * J2 ** 4),
        256.0 * r6 * t * X ** 5 * apply_function("sqrt", X) * J1 ** 3 * J2 ** 3,
        -192.0 * r3 * c56 * t * X ** 3 * apply_function("sqrt", X) * (J1 ** 3 * J2 + J2 ** 3 * J1),
        54.0 * c23 * x * st * X * X * (J1 * J1 + J2 * J2),
        -144.0 * c13 * x * st * X ** 4 * J1 * J1 * J2 * J2,
        144.0 * r3 * c16 * t * X * apply_function("sqrt", X) * J1 * J2,
        -27.0 * x * st,
    ]
    omega_fac1 = c23 * 2.0 * X * X * (J1 * J1 + J2 * J2) - 3.0  # 2^(5/3) = 2*2^(2/3)
    omega_fac2 = (8.0 * c13 * X ** 4 * (J1 * J1 - J2 * J2) ** 2
                  - 12.0 * c23 * X * X * (J1 * J1 + J2 * J2) + 9.0)
    Omega = 6.0 * t * st * omega_fac1 * omega_fac2
    return psi_terms, Omega


def bessel_family() -> tuple[Field, Field]:
    """The printed pair of KdV solutions built from Bessel quotients on the
    wedge x - 6t > 0, t > 0 (parameters frozen as printed)."""
    omega1 = field("bessel-omega1")

    def omega2_fn(env):
        psi_terms, Omega = _bessel_omega2_pieces(env)
        Psi = psi_terms[0]
        for term in psi_terms[1:]:
            Psi = Psi + term
        return -Psi / Omega

    def omega_locus(env):
        _, Omega = _bessel_omega2_pieces(env)
        return Omega

    loci = tuple(omega1.loci) + (
        Field.from_function("bessel-omega2.denominator", omega_locus, ("x", "t")),
    )
    omega2 = Field.from_function("bessel-omega2-printed", omega2_fn, ("x", "t"),
                                 loci=loci)
    return omega1, omega2


# ---------------------------------------------------------------------------
# cnoidal family (the travelling-wave similarity reduction)
# ---------------------------------------------------------------------------

def elliptic_constraints(a2: complex, a3: complex, n: complex,
                         as_printed: bool = False) -> tuple[complex, complex]:
    """(a5, a7) closing the quartic first-order ODE for the sn ansatz.

    The a7 closing the ODE is cubic in a3; ``as_printed=True`` returns the
    quadratic-in-a3 variant that appears in print (it fails the ODE whenever
    a3 != 1 and is kept only for negative controls / reporting).
    """
    a2, a3, n = complex(a2), complex(a3), complex(n)
    a5 = a3 ** 2 * (1.0 - 5.0 * n ** 2) / (16.0 * n ** 2 * a2 ** 2)
    power = 2 if as_printed else 3
    a7 = a3 ** power * (n ** 2 - 1.0) / (32.0 * n ** 2 * a2 ** 4)
    return a5, a7


def _cnoidal_Y(env, a2, a3, lam, n):
    x, t = env["x"], env["t"]
    phase = (a3 * (192.0 * lam * a2 ** 2 * n ** 2 - 5.0 * a3 ** 2 * n ** 2 + a3 ** 2)
             * t / (128.0 * n ** 3 * a2 ** 3) - a3 * x / (4.0 * a2 * n))
    return apply_function("jacobi_sn", phase, (n,))


def _cnoidal_omega4_terms(env, a2, a3, a6, lam, n):
    t = env["t"]
    Y = _cnoidal_Y(env, a2, a3, lam, n)
    root = (apply_function("sqrt", Y * Y - 1.0)
            * apply_function("sqrt", n * n * Y * Y - 1.0))
    log_arg = (2.0 * n) / (2.0 * n * n * Y * Y + 2.0 * n * root - n * n - 1.0)
    R2 = (a3 ** 3 * (n * n - 1.0) * (t + a6) / (64.0 * a2 ** 3 * n * n)
          + 0.25 * apply_function("log", log_arg)
          + 0.5 * n * apply_function("elliptic_f", Y, (n,)))
    th = apply_function("tanh", R2)
    return [
        a3 ** 2 * (Y + 1.0) ** 2 / (32.0 * a2 ** 2) * th * th,
        a3 ** 2 * root / (16.0 * n * a2 ** 2) * th,
        2.0 * a3 ** 2 * (Y * Y - 2.0 * Y) / a2 ** 2,
        (-a3 ** 2 * (n * n + 1.0) / (n * n * a2 ** 2)) * (Y ** 0),
        (-64.0 * lam) * (Y ** 0),
    ]


def cnoidal_family(a2: complex = 1.0, a3: complex = 2.0, a6: complex = 0.0,
                   lam: complex = 1.0, n: complex = 0.8) -> tuple[Field, Field]:
    """The printed cnoidal solution and the printed cnoidal-kink interaction
    form.  The first is exact; the second is informational as printed."""
    a2, a3, a6 = complex(a2), complex(a3), complex(a6)
    lam, n = complex(lam), complex(n)
    omega3 = field("cnoidal-omega3", a2=a2, a3=a3, lam=lam, n=n)

    def omega4_fn(env):
        terms = _cnoidal_omega4_terms(env, a2, a3, a6, lam, n)
        out = terms[0]
        for term in terms[1:]:
            out = out + term
        return out

    def locus_minus(env):
        return _cnoidal_Y(env, a2, a3, lam, n) - 1.0

    def locus_plus(env):
        return _cnoidal_Y(env, a2, a3, lam, n) + 1.0

    loci = (
        Field.from_function("cnoidal.Y-1", locus_minus, ("x", "t")),
        Field.from_function("cnoidal.Y+1", locus_plus, ("x", "t")),
    )
    omega4 = Field.from_function("cnoidal-omega4-printed", omega4_fn, ("x", "t"),
                                 loci=loci)
    return omega3, omega4


def cnoidal_omega4_term_values(point, a2=1.0, a3=2.0, a6=0.0, lam=1.0, n=0.8):
    """Values of the five printed interaction-form terms at a point, for the
    informational per-term magnitude breakdown."""
    labels = ("tanh^2 term", "tanh term", "Y^2-2Y term", "constant-in-Y term",
              "flat term")
    env = {
        "x": Jet.variable("x", ("x", "t"), point, (0, 0)),
        "t": Jet.variable("t", ("x", "t"), point, (0, 0)),
    }
    terms = _cnoidal_omega4_terms(env, complex(a2), complex(a3), complex(a6),
                                  complex(lam), complex(n))
    return {lab: term.value for lab, term in zip(labels, terms)}


def cnoidal_constructive(a2: complex = 1.0, a3: complex = 2.0, a6: complex = 0.0,
                         lam: complex = 1.0, n: complex = 0.8) -> Field:
    """The cnoidal-kink interaction member rebuilt from the reduction itself.

    Differentiating the travelling-wave ansatz and using the reduced
    relations (the two G-proportional terms cancel against the drift
    constant) leaves

        omega4 = U1' + (W'/W)' - a2 W' tanh(B) - (a2^2/2) W^2 sech^2(B),
        B = (a2 a7 / 2) (t + a6 + G(z)),  G' = W/a7,  z = x - k t,

    with U1' = a7/(2W) - lam - a5/4 and k = 6 lam + a5/2.  This is the
    pipeline counterpart of the printed interaction form.
    """
    from .flows import quadrature_G

    a2, a3, a6 = complex(a2), complex(a3), complex(a6)
    lam, n = complex(lam), complex(n)
    a5, a7 = elliptic_constraints(a2, a3, n)
    k = 6.0 * lam + a5 / 2.0
    W = Field.from_expression(
        "cnoidal.W", "a3/(4*a2^2)*(jacobi_sn(a3*z/(4*a2*n), n) - 1)", ("z",),
        params={"a2": a2, "a3": a3, "n": n})
    Wova7 = Field.from_expression(
        "cnoidal.W/a7", "a3/(4*a2^2*a7)*(jacobi_sn(a3*z/(4*a2*n), n) - 1)",
        ("z",), params={"a2": a2, "a3": a3, "n": n, "a7": a7})
    G = quadrature_G(Wova7, 0.0)

    def fn(env):
        x, t = env["x"], env["t"]
        z = x - k * t
        K = sum(x.orders)
        aW = W.jet((z.value,), (K + 2,)).coef
        Wc = z.compose(aW[: K + 1])
        dW = np.array([(kk + 1) * aW[kk + 1] for kk in range(K + 1)], dtype=complex)
        Wz = z.compose(dW)
        ddW = np.array([(kk + 1) * (kk + 2) * aW[kk + 2] for kk in range(K + 1)],
                       dtype=complex)
        Wzz = z.compose(ddW)
        aG = G.jet((z.value,), (K,)).coef
        Gc = z.compose(aG)
        B = (a2 * a7 / 2.0) * (t + a6 + Gc)
        th = apply_function("tanh", B)
        sech2 = 1.0 - th * th
        u1z = a7 / (2.0 * Wc) - lam - a5 / 4.0
        return (u1z + (Wzz * Wc - Wz * Wz) / (Wc * Wc)
                - a2 * Wz * th - (a2 * a2 / 2.0) * Wc * Wc * sech2)

    def locus(env):
        x, t = env["x"], env["t"]
        z = x - k * t
        K = sum(x.orders)
        aW = W.jet((z.value,), (K,)).coef
        return z.compose(aW)

    return Field.from_function(
        "cnoidal-omega4-constructive", fn, ("x", "t"),
        loci=(Field.from_function("cnoidal.W(z)", locus, ("x", "t")),))


# ---------------------------------------------------------------------------
# similarity reconstruction from a Painleve-II profile
# ---------------------------------------------------------------------------

def pii_reconstruct(P: Field, G: Field | None, a4: complex, c2: complex = 0.0,
                    c5: complex = 0.0, lam: complex = 1.0,
                    printed_form: bool = False) -> tuple[Field, Field]:
    """Rebuild the two KdV solutions carried by a second-Painleve profile.

    ``P`` is the profile over xi (must solve P'' = 2P^3 + xi P + alpha with
    alpha = -(a4+1)/2); ``G`` is an antiderivative of 1/(2P' + 2P^2 + xi)
    (only needed for the second member; its additive constant shifts the
    kink phase and is reported, not assumed away).

    The first member is (P' + P^2)/(3t+c2)^(2/3) - lam.  The second member
    is obtained by differentiating the similarity ansatz itself, which gives
    the bracket

        -P' + P^2 - 2 a4 P/F + a4^2/F^2
        + (2 a4 P/F - a4^2/F^2) tanh R1 - (a4^2/(2F^2)) sech^2 R1

    over (3t+c2)^(2/3), minus lam; the widely-quoted variant with the
    algebraic part sign-flipped and a trailing +lam (``printed_form=True``)
    does not solve the equation and is kept for informational reports only.
    """
    a4, c2, c5, lam = complex(a4), complex(c2), complex(c5), complex(lam)

    def _xi(env):
        x, t = env["x"], env["t"]
        denom = 3.0 * t + c2
        xi = (x - 6.0 * lam * t + c5 - 6.0 * c2 * lam) * denom ** (-1.0 / 3.0)
        return xi, denom

    def _compose(fld, xi, nderiv=0):
        K = sum(xi.orders)
        a = fld.jet((xi.value,), (K + nderiv,)).coef
        out = [xi.compose(a[: K + 1])]
        for d in range(1, nderiv + 1):
            a = np.array([(k + 1) * a[k + 1] for k in range(len(a) - 1)],
                         dtype=complex)
            out.append(xi.compose(a[: K + 1]))
        return out

    def omega1_fn(env):
        xi, denom = _xi(env)
        Pc, Pxi = _compose(P, xi, 1)
        return (Pxi + Pc * Pc) * denom ** (-2.0 / 3.0) - lam

    def omega2_fn(env):
        if G is None:
            raise FieldError("the second reconstructed member needs G")
        xi, denom = _xi(env)
        Pc, Pxi = _compose(P, xi, 1)
        Gc, = _compose(G, xi)
        F = 2.0 * Pxi + 2.0 * Pc * Pc + xi
        R1 = a4 * (apply_function("log", denom) + 3.0 * Gc) / 6.0
        th = apply_function("tanh", R1)
        sech2 = 1.0 - th * th
        core = 2.0 * a4 * Pc / F - a4 * a4 / (F * F)
        if printed_form:
            bracket = (-(a4 * a4) / (2.0 * F * F) * sech2 + core * th
                       + 2.0 * a4 * Pc / F + Pxi - Pc * Pc)
            return bracket * denom ** (-2.0 / 3.0) + lam
        bracket = (-(a4 * a4) / (2.0 * F * F) * sech2 + core * th
                   - 2.0 * a4 * Pc / F + a4 * a4 / (F * F) - Pxi + Pc * Pc)
        return bracket * denom ** (-2.0 / 3.0) - lam

    def pole_locus(env):
        xi, _ = _xi(env)
        Pc, Pxi = _compose(P, xi, 1)
        return 2.0 * Pxi + 2.0 * Pc * Pc + xi

    def time_locus(env):
        return 3.0 * env["t"] + c2

    def lift_locus(Lxi: Field) -> Field:
        def fn(env):
            xi, _ = _xi(env)
            out, = _compose(Lxi, xi)
            return out

        return Field.from_function(f"{Lxi.name}(xi)", fn, ("x", "t"))

    loci = (
        Field.from_function("similarity.F", pole_locus, ("x", "t")),
        Field.from_function("similarity.3t+c2", time_locus, ("x", "t")),
    ) + tuple(lift_locus(L) for L in tuple(P.loci) + tuple(G.loci if G else ()))
    tag = "printed" if printed_form else "omega2"
    omega1 = Field.from_function(f"similarity.omega1[{P.name}]", omega1_fn,
                                 ("x", "t"), loci=loci)
    omega2 = Field.from_function(f"similarity.{tag}[{P.name}]", omega2_fn,
                                 ("x", "t"), loci=loci)
    return omega1, omega2
