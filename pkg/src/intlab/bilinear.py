"""Hirota bilinear operator and the bilinear equation registry.

``D_x^m D_t^n a.b`` is evaluated directly from its defining antisymmetrized
binomial expansion over jet coefficients of the two arguments, which is
exact at the truncation orders in use and works uniformly for closed-form
and ODE-backed fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Mapping, Sequence

from .fields import Field
from .jets import Jet
from .reporting import PointResidual, ResidualReport
from .sampling import Region, sample_points

__all__ = [
    "hirota_D", "hirota_D_jets", "BilinearEquation", "BILINEAR_EQUATIONS",
    "bilinear_terms", "bilinear_residual", "bilinear_scan",
    "second_hierarchy_chain_check", "spectral_coefficient_jets",
]


def hirota_D_jets(m: int, n: int, ja: Jet, jb: Jet) -> complex:
    total = 0.0 + 0.0j
    for i in range(m + 1):
        ci = comb(m, i)
        for j in range(n + 1):
            sign = -1.0 if ((m - i) + (n - j)) % 2 else 1.0
            total += (ci * comb(n, j) * sign
                      * ja.extract(i, j) * jb.extract(m - i, n - j))
    return total


def hirota_D(m: int, n: int, a: Field, b: Field, point: Sequence[complex]) -> complex:
    """D_x^m D_t^n a.b at a point."""
    ja = a.jet(point, (m, n))
    jb = b.jet(point, (m, n))
    return hirota_D_jets(m, n, ja, jb)


@dataclass(frozen=True)
class BilinearEquation:
    tag: str
    fields: tuple[str, ...]
    params: tuple[str, ...]
    terms: Callable[[Mapping[str, Field], Mapping[str, complex], tuple], list[complex]]
    variadic: bool = False  # arity grows with the hierarchy depth N


def _bilin_pkdv(F, P, pt):
    psi = F["psi"]
    return [hirota_D(4, 0, psi, psi, pt), hirota_D(1, 1, psi, psi, pt)]


def _bilin_bt_x(F, P, pt):
    psi, psi1 = F["psi"], F["psi1"]
    lam = complex(P["lam"])
    return [hirota_D(2, 0, psi, psi1, pt),
            -lam * psi.value(pt) * psi1.value(pt)]


def _bilin_bt_t(F, P, pt):
    psi, psi1 = F["psi"], F["psi1"]
    lam = complex(P["lam"])
    return [hirota_D(0, 1, psi, psi1, pt),
            hirota_D(3, 0, psi, psi1, pt),
            3.0 * lam * hirota_D(1, 0, psi, psi1, pt)]


def _members(F: Mapping[str, Field], prefix: str) -> list[Field]:
    out = []
    k = 1
    while f"{prefix}{k}" in F:
        out.append(F[f"{prefix}{k}"])
        k += 1
    if not out:
        raise KeyError(f"no fields named {prefix}1..{prefix}N supplied")
    return out


def _bilin_neg_flow(F, P, pt):
    # t plays the negative hierarchy time here
    psi = F["psi"]
    terms = [hirota_D(1, 1, psi, psi, pt)]
    for m in _members(F, "psi"):
        terms.append(-m.value(pt) ** 2)
    return terms


def _bilin_neg_constraint(F, P, pt):
    psi, psii = F["psi"], F["psi_i"]
    lam_i = complex(P["lam_i"])
    return [hirota_D(2, 0, psi, psii, pt),
            -lam_i * psi.value(pt) * psii.value(pt)]


def _coeff_members(F: Mapping[str, Field]) -> list[Field]:
    out = []
    k = 0
    while f"psibar{k}" in F:
        out.append(F[f"psibar{k}"])
        k += 1
    if not out:
        raise KeyError("no fields named psibar0..psibarN supplied")
    return out


def _bilin_2nd_flow(F, P, pt):
    psi = F["psi"]
    bars = _coeff_members(F)
    N = len(bars) - 1
    terms = [hirota_D(1, 1, psi, psi, pt)]
    for k in range(N + 1):
        terms.append(-bars[k].value(pt) * bars[N - k].value(pt))
    return terms


def _bilin_2nd_chain(F, P, pt):
    psi, bk = F["psi"], F["psibar_k"]
    terms = [hirota_D(2, 0, psi, bk, pt)]
    if "psibar_km1" in F:
        terms.append(-psi.value(pt) * F["psibar_km1"].value(pt))
    return terms


BILINEAR_EQUATIONS: dict[str, BilinearEquation] = {
    "bilin-pkdv": BilinearEquation("bilin-pkdv", ("psi",), (), _bilin_pkdv),
    "bilin-bt-x": BilinearEquation("bilin-bt-x", ("psi", "psi1"), ("lam",), _bilin_bt_x),
    "bilin-bt-t": BilinearEquation("bilin-bt-t", ("psi", "psi1"), ("lam",), _bilin_bt_t),
    "bilin-neg-flow": BilinearEquation("bilin-neg-flow", ("psi", "psi1"), (),
                                       _bilin_neg_flow, variadic=True),
    "bilin-neg-constraint": BilinearEquation("bilin-neg-constraint",
                                             ("psi", "psi_i"), ("lam_i",),
                                             _bilin_neg_constraint),
    "bilin-2nd-flow": BilinearEquation("bilin-2nd-flow", ("psi", "psibar0"), (),
                                       _bilin_2nd_flow, variadic=True),
    "bilin-2nd-chain": BilinearEquation("bilin-2nd-chain",
                                        ("psi", "psibar_k"), (), _bilin_2nd_chain),
}


def bilinear_terms(tag: str, fields: Mapping[str, Field],
                   params: Mapping[str, complex],
                   point: Sequence[complex]) -> tuple[complex, float]:
    eq = BILINEAR_EQUATIONS[tag]
    terms = eq.terms(fields, params, tuple(point))
    raw = sum(terms)
    return raw, float(sum(abs(t) for t in terms))


def bilinear_residual(tag: str, fields: Mapping[str, Field],
                      params: Mapping[str, complex],
                      point: Sequence[complex]) -> complex:
    return bilinear_terms(tag, fields, params, point)[0]


def bilinear_scan(tag: str, fields: Mapping[str, Field],
                  params: Mapping[str, complex], region: Region, count: int,
                  tolerance: float, informational: bool = False,
                  note: str = "") -> ResidualReport:
    loci = []
    for f in fields.values():
        loci.extend(f.loci)
    pts = sample_points(region, count, loci)
    rows = []
    for pt in pts:
        raw, scale = bilinear_terms(tag, fields, params, pt)
        rel = abs(raw) / (1.0 + scale)
        rows.append(PointResidual(pt[0].real, pt[1].real if len(pt) > 1 else 0.0,
                                  raw, rel))
    return ResidualReport(tag, tuple(f.name for f in fields.values()),
                          {k: complex(v) for k, v in params.items()},
                          tolerance, rows, informational=informational, note=note)


# ---------------------------------------------------------------------------
# spectral-parameter expansion chain
# ---------------------------------------------------------------------------

def spectral_coefficient_jets(psi1_lam: Field, point: Sequence[complex],
                              x_orders: tuple[int, int], K: int) -> list[Jet]:
    """(x, t)-jets of the Taylor coefficients of psi1 in the spectral
    parameter about 0: psi1 = sum_k coeff_k(x,t) lam^k, truncated at K."""
    big = psi1_lam.jet((point[0], point[1], 0.0), (*x_orders, K))
    out = []
    for k in range(K + 1):
        coef = big.coef[:, :, k].copy()
        out.append(Jet(("x", "t"), tuple(point), x_orders, coef))
    return out


def second_hierarchy_chain_check(psi: Field, psi1_lam: Field, K: int,
                                 points: Sequence[Sequence[complex]],
                                 tolerance: float = 1e-9) -> ResidualReport:
    """Check D_x^2 psi . coeff_k = psi coeff_(k-1) for k = 0..K (coeff_-1 = 0).

    The coefficients come from a spectral-parameter jet of ``psi1_lam`` at 0,
    so this verifies that the lam-expansion of the bilinear constraint closes
    order by order.
    """
    rows = []
    for pt in points:
        bars = spectral_coefficient_jets(psi1_lam, pt, (2, 0), K)
        jpsi = psi.jet(pt, (2, 0))
        for k in range(K + 1):
            lhs = hirota_D_jets(2, 0, jpsi, bars[k])
            rhs = jpsi.value * bars[k - 1].value if k >= 1 else 0.0
            raw = lhs - rhs
            rel = abs(raw) / (1.0 + abs(lhs) + abs(rhs))
            rows.append(PointResidual(complex(pt[0]).real, complex(pt[1]).real,
                                      raw, rel))
    return ResidualReport("bilin-2nd-chain", (psi.name, psi1_lam.name),
                          {"K": complex(K)}, tolerance, rows)
