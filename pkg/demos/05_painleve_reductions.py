"""Similarity reductions through the second Painleve transcendent.

One similarity ansatz of the prolonged system reduces to P'' = 2P^3 +
xi P + alpha; each profile P generates two KdV solutions.  This script runs
the rational branch (alpha = 1) and the Airy/Bessel branch (alpha = 1/2)
end to end, cross-checks the printed closed forms against the constructive
pipeline, and shows the reporting for the long as-printed expressions, two
of which carry transcription slips.
"""

import numpy as np

from intlab import catalog as C
from intlab import equations as Q
from intlab import flows as FL
from intlab.sampling import Region, sample_points

reg = Region({"x": (0.5, 5), "t": (0.05, 0.8)})

###############################################################################
# alpha = 1: the rational branch P = -1/xi

Prat = C.field("pii-p-rational")
G = C.field("pii-g-rational")       # closed-form phase antiderivative
om1_ref, om63 = C.rational_family()
o1, o2 = C.pii_reconstruct(Prat, G, a4=-3.0)

pts = sample_points(reg, 10, o1.loci)
print("rational branch (alpha = 1)")
print("  first member vs displayed pole form:",
      max(abs(o1.value(p) - om1_ref.value(p)) for p in pts))
print("  second member vs as-printed long rational:",
      max(abs(o2.value(p) - om63.value(p)) for p in pts))
rep = Q.scan("kdv", {"w": om63}, {}, reg, 20, 1e-8)
print("  as-printed long rational solves the equation:", rep.max_rel)

# Shifting the phase antiderivative by a constant moves along a solution
# family rather than off it:
for gc in (0.0, 0.7):
    _, o2c = C.pii_reconstruct(Prat, C.field("pii-g-rational", gconst=gc),
                               a4=-3.0)
    rep = Q.scan("kdv", {"w": o2c}, {}, reg, 12, 1e-9)
    print(f"  phase constant {gc}: residual {rep.max_rel:.2e}")

###############################################################################
# alpha = 1/2: Airy form vs Bessel form of the same profile

Pair = C.field("pii-p-airy")
Pbes = C.field("pii-p-bessel")
Pprt = C.field("pii-p-bessel-printed")
xs = np.linspace(0.8, 3.0, 7)
print("\nAiry/Bessel branch (alpha = 1/2)")
print("  Airy form vs Bessel form:",
      max(abs(Pair.value((x,)) - Pbes.value((x,))) for x in xs))
print("  as-printed Bessel variant / Airy form at xi=1.5:",
      (Pprt.value((1.5,)) / Pair.value((1.5,))).real,
      " (the printed variant is double the solution)")

om1b, om2b = C.bessel_family()
regb = Region({"x": (1.6, 9.0), "t": (0.12, 0.95)})
ptsb = [p for p in sample_points(regb, 60, om1b.loci)
        if 1.05 < (p[0].real - 6 * p[1].real) < 4.95][:8]
worst = max(abs(Q.residual_terms("kdv", {"w": om1b}, {}, p)[0]) for p in ptsb)
print("  printed Bessel-quotient first member, raw residual:", worst)

worst = 0.0
for p in ptsb:
    raw, sc = Q.residual_terms("kdv", {"w": om2b}, {}, p)
    worst = max(worst, abs(raw) / (1 + sc))
print("  printed second member (informational):", worst, "-- fails as printed")

Gq = FL.quadrature_G(FL.pii_g_integrand(Pbes), 1.0)
_, o2b = C.pii_reconstruct(Pbes, Gq, a4=-2.0)
worst = 0.0
for p in ptsb[:5]:
    raw, sc = Q.residual_terms("kdv", {"w": o2b}, {}, p)
    worst = max(worst, abs(raw) / (1 + sc))
print("  pipeline second member:", worst, "-- the construction itself is fine")

###############################################################################
# The bridge profile H and its reduced second-order equation

P = FL.pii_field_from_ode(1.0, (-1.0, 1.0), 1.0, (1.0, 3.0))
rep = FL.integrate_H_and_map(-3.0, 0.7, (1.0, 3.0), P)
print("\nreduced-profile bridge residual (ODE-backed P):", rep.max_rel)
inv = FL.reduction_invariants(FL.h_field_from_p(P, 0.7), -3.0, 0.7, 1.7)
print("profile invariants at xi=1.7:",
      {k: round(complex(v).real, 6) for k, v in inv.items()})
