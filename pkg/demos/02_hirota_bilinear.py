"""Hirota bilinear operator and the bilinear equation family.

The bilinear derivative D_x^m D_t^n a.b is evaluated straight from its
antisymmetrized-binomial definition over jet coefficients.  The script
demonstrates its algebraic properties, checks the bilinear form of the
potential equation and of the transformation pair on the cosh kernel, and
walks the spectral-parameter expansion chain coefficient by coefficient.
"""

from intlab import bilinear as B
from intlab import catalog as C
from intlab.fields import Field
from intlab.sampling import Region, sample_points

region = Region({"x": (-2, 2), "t": (0.1, 1)})

###############################################################################
# Operator basics on exponentials (everything is computable by hand here)

a = Field.from_expression("a", "exp(x)", ("x", "t"))
b = Field.from_expression("b", "exp(2*x)", ("x", "t"))
print("D_x e^x . e^(2x) at 0      =", B.hirota_D(1, 0, a, b, (0.0, 0.0)),
      "(expected -1)")
b3 = Field.from_expression("b3", "exp(3*x)", ("x", "t"))
print("D_x^2 e^x . e^(3x) at 0    =", B.hirota_D(2, 0, a, b3, (0.0, 0.0)),
      "(expected (1-3)^2 = 4)")

f = Field.from_expression("f", "exp(sin(x) + 0.3*t)*(x^2 + 1)", ("x", "t"))
print("D_x^3 f . f (odd order)    =", abs(B.hirota_D(3, 0, f, f, (0.4, 0.2))),
      "(antisymmetry)")

###############################################################################
# The potential equation in bilinear form annihilates every plain exponential

psi_exp = Field.from_expression("psi", "exp(0.7*x + 1.3*t)", ("x", "t"))
raw, _ = B.bilinear_terms("bilin-pkdv", {"psi": psi_exp}, {}, (0.2, 0.4))
print("\nbilinear base form on exp(ax+bt):", abs(raw))

###############################################################################
# The transformation pair in bilinear variables: psi = 1 with the cosh kernel

psi = C.field("psi-one")
psi1 = C.field("psi1-cosh", lam=1.0)
for tag in ("bilin-bt-x", "bilin-bt-t"):
    rep = B.bilinear_scan(tag, {"psi": psi, "psi1": psi1}, {"lam": 1.0},
                          region, 20, 1e-11)
    print(f"{tag} on (1, cosh kernel): {rep.max_rel:.2e}")

# and the first negative-hierarchy pair with constant partner:
psiL, psi1I = C.field("psi-linear"), C.field("psi1-const-imag")
raw, _ = B.bilinear_terms("bilin-neg-flow", {"psi": psiL, "psi1": psi1I},
                          {}, (0.3, 0.4))
print("negative pair flow relation (x+t, i*sqrt(2)):", abs(raw))

###############################################################################
# Spectral expansion: the cosh kernel is analytic in the spectral parameter,
# and its Taylor coefficients obey D_x^2 psi . c_k = psi c_(k-1)

psi1lam = C.psi1_lambda_field()
pt = (0.7, 0.3)
bars = B.spectral_coefficient_jets(psi1lam, pt, (2, 0), 2)
print("\nspectral coefficients at", pt)
print("  c_0 =", bars[0].value, " (expected 1)")
print("  c_1 =", bars[1].value, f" (expected x^2/2 = {0.7**2/2})")
print("  c_2 =", bars[2].value,
      f" (expected x^4/24 - 4tx = {0.7**4/24 - 4*0.3*0.7:.6f})")
rep = B.second_hierarchy_chain_check(psi, psi1lam, 2,
                                     sample_points(region, 10))
print("chain residual through order 2:", rep.max_rel)
