"""Truncated multivariate Taylor (jet) arithmetic.

A ``Jet`` stores the Taylor coefficients of a complex-valued function about a
base point, truncated at per-variable orders.  All PDE residuals in this
package are evaluated by building the fields as jets and reading off mixed
partial derivatives, so the coefficients must stay exact to roundoff for
polynomial data.  Function application goes through univariate Taylor series
of the outer function about the jet's value (Horner composition), with the
series supplied inline for elementary functions and by :mod:`intlab.specfun`
for the special ones.

The usual setup is two variables ``("x", "t")``; a third axis is used when a
field is expanded in a spectral parameter.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.signal import convolve as _convolve

from . import specfun

__all__ = [
    "Jet",
    "JetError",
    "JetDivisionError",
    "lift_variable",
    "lift_constant",
    "apply_function",
    "extract_derivative",
    "FUNCTION_TAGS",
    "EPS_DIV",
]

EPS_DIV = 1e-12


class JetError(ValueError):
    pass


class JetDivisionError(JetError):
    """Division by a jet whose value at the base point is below EPS_DIV."""

    def __init__(self, point):
        self.point = point
        super().__init__(f"jet division by near-zero value at base point {point}")


class Jet:
    __slots__ = ("vars", "point", "orders", "coef")

    def __init__(self, vars: tuple[str, ...], point: tuple[complex, ...],
                 orders: tuple[int, ...], coef: np.ndarray):
        self.vars = tuple(vars)
        self.point = tuple(complex(p) for p in point)
        self.orders = tuple(int(k) for k in orders)
        self.coef = np.asarray(coef, dtype=complex)
        if self.coef.shape != tuple(k + 1 for k in self.orders):
            raise JetError("coefficient table shape does not match orders")

    # -- construction -------------------------------------------------------

    @staticmethod
    def constant(value: complex, vars: Sequence[str], point: Sequence[complex],
                 orders: Sequence[int]) -> "Jet":
        coef = np.zeros(tuple(k + 1 for k in orders), dtype=complex)
        coef[(0,) * len(tuple(orders))] = value
        return Jet(tuple(vars), tuple(point), tuple(orders), coef)

    @staticmethod
    def variable(name: str, vars: Sequence[str], point: Sequence[complex],
                 orders: Sequence[int]) -> "Jet":
        vars = tuple(vars)
        if name not in vars:
            raise JetError(f"variable {name!r} not among jet axes {vars}")
        i = vars.index(name)
        coef = np.zeros(tuple(k + 1 for k in orders), dtype=complex)
        coef[(0,) * len(vars)] = point[i]
        if orders[i] >= 1:
            idx = [0] * len(vars)
            idx[i] = 1
            coef[tuple(idx)] = 1.0
        return Jet(vars, tuple(point), tuple(orders), coef)

    # -- bookkeeping --------------------------------------------------------

    @property
    def value(self) -> complex:
        return complex(self.coef[(0,) * len(self.vars)])

    def _align(self, other: "Jet") -> tuple["Jet", "Jet"]:
        """Truncate both jets to their common (elementwise minimum) orders."""
        if self.vars != other.vars:
            raise JetError("jet axes mismatch")
        if any(abs(a - b) > 0 for a, b in zip(self.point, other.point)):
            raise JetError("jet base points differ")
        if self.orders == other.orders:
            return self, other
        orders = tuple(min(a, b) for a, b in zip(self.orders, other.orders))
        return self.truncate(orders), other.truncate(orders)

    def truncate(self, orders: tuple[int, ...]) -> "Jet":
        if orders == self.orders:
            return self
        if any(k > K for k, K in zip(orders, self.orders)):
            raise JetError("cannot truncate to higher orders")
        sl = tuple(slice(0, k + 1) for k in orders)
        return Jet(self.vars, self.point, orders, self.coef[sl].copy())

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(complex(other), self.vars, self.point, self.orders)

    def copy_with(self, coef: np.ndarray) -> "Jet":
        return Jet(self.vars, self.point, self.orders, coef)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self._align(other)
        return a.copy_with(a.coef + b.coef)

    __radd__ = __add__

    def __neg__(self):
        return self.copy_with(-self.coef)

    def __sub__(self, other):
        other = self._coerce(other)
        a, b = self._align(other)
        return a.copy_with(a.coef - b.coef)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self.copy_with(self.coef * complex(other))
        a, b = self._align(other)
        full = _convolve(a.coef, b.coef, method="direct")
        sl = tuple(slice(0, k + 1) for k in a.orders)
        return a.copy_with(full[sl])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self.copy_with(self.coef / complex(other))
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def reciprocal(self) -> "Jet":
        z0 = self.value
        if abs(z0) <= EPS_DIV:
            raise JetDivisionError(self.point)
        K = sum(self.orders)
        coeffs = np.empty(K + 1, dtype=complex)
        coeffs[0] = 1.0 / z0
        for k in range(1, K + 1):
            coeffs[k] = -coeffs[k - 1] / z0
        return self.compose(coeffs)

    def __pow__(self, p):
        if isinstance(p, int) or (isinstance(p, float) and p.is_integer()):
            p = int(p)
            if p == 0:
                return Jet.constant(1.0, self.vars, self.point, self.orders)
            if p < 0:
                return self.reciprocal() ** (-p)
            out = self
            for _ in range(p - 1):
                out = out * self
            return out
        # fractional/complex exponent through the binomial series about the value
        z0 = self.value
        if abs(z0) <= EPS_DIV:
            raise JetDivisionError(self.point)
        K = sum(self.orders)
        a = np.empty(K + 1, dtype=complex)
        a[0] = z0 ** complex(p)
        for k in range(1, K + 1):
            a[k] = a[k - 1] * (complex(p) - (k - 1)) / (k * z0)
        return self.compose(a)

    # -- composition and extraction -----------------------------------------

    def compose(self, series: np.ndarray) -> "Jet":
        """f(self) where ``series[k] = f^(k)(self.value)/k!``.

        Horner evaluation in the increment w = self - value, truncated at the
        total order of the jet.
        """
        K = sum(self.orders)
        series = np.asarray(series, dtype=complex)
        if len(series) < K + 1:
            raise JetError("composition series shorter than total jet order")
        w = self.copy_with(self.coef.copy())
        w.coef[(0,) * len(self.vars)] = 0.0
        acc = Jet.constant(series[K], self.vars, self.point, self.orders)
        for k in range(K - 1, -1, -1):
            acc = acc * w + series[k]
        return acc

    def deriv(self, name: str, k: int = 1) -> "Jet":
        """Jet of the k-th partial derivative (orders along ``name`` shrink by k)."""
        if k == 0:
            return self
        ax = self.vars.index(name)
        K = self.orders[ax]
        if k > K:
            raise JetError(f"derivative order {k} exceeds truncation {K} in {name!r}")
        idx = [slice(None)] * len(self.vars)
        idx[ax] = slice(k, K + 1)
        shifted = self.coef[tuple(idx)].copy()
        fac = np.array([math.factorial(i + k) / math.factorial(i) for i in range(K - k + 1)])
        shape = [1] * len(self.vars)
        shape[ax] = K - k + 1
        shifted *= fac.reshape(shape)
        orders = list(self.orders)
        orders[ax] = K - k
        return Jet(self.vars, self.point, tuple(orders), shifted)

    def extract(self, *multi: int) -> complex:
        """Mixed partial derivative i!*j!*...*c[i,j,...]."""
        if len(multi) != len(self.vars):
            raise JetError("extraction index arity mismatch")
        for m, K in zip(multi, self.orders):
            if m < 0 or m > K:
                raise JetError(f"derivative order {multi} out of range {self.orders}")
        scale = 1.0
        for m in multi:
            scale *= math.factorial(m)
        return complex(self.coef[tuple(multi)] * scale)


# ---------------------------------------------------------------------------
# module-level conveniences mirroring the engine surface
# ---------------------------------------------------------------------------

def lift_variable(name: str, point, orders, vars=("x", "t")) -> Jet:
    return Jet.variable(name, vars, point, orders)


def lift_constant(value, point, orders, vars=("x", "t")) -> Jet:
    return Jet.constant(value, vars, point, orders)


def extract_derivative(j: Jet, *multi: int) -> complex:
    return j.extract(*multi)


# ---------------------------------------------------------------------------
# univariate Taylor series of the supported function tags
# ---------------------------------------------------------------------------

def _taylor_exp(z0, K):
    a = np.empty(K + 1, dtype=complex)
    a[0] = cmath.exp(z0)
    for k in range(1, K + 1):
        a[k] = a[k - 1] / k
    return a

def _taylor_log(z0, K):
    if z0 == 0:
        raise JetError("log of zero base value")
    a = np.empty(K + 1, dtype=complex)
    a[0] = cmath.log(z0)
    for k in range(1, K + 1):
        a[k] = (-1.0) ** (k - 1) / (k * z0 ** k)
    return a

def _taylor_circular(z0, K, fs):
    # fs = 4-cycle of derivatives at z0, e.g. (sin, cos, -sin, -cos)
    a = np.empty(K + 1, dtype=complex)
    fac = 1.0
    for k in range(K + 1):
        if k:
            fac *= k
        a[k] = fs[k % len(fs)] / fac
    return a

def _taylor_sin(z0, K):
    s, c = cmath.sin(z0), cmath.cos(z0)
    return _taylor_circular(z0, K, (s, c, -s, -c))

def _taylor_cos(z0, K):
    s, c = cmath.sin(z0), cmath.cos(z0)
    return _taylor_circular(z0, K, (c, -s, -c, s))

def _taylor_sinh(z0, K):
    s, c = cmath.sinh(z0), cmath.cosh(z0)
    return _taylor_circular(z0, K, (s, c))

def _taylor_cosh(z0, K):
    s, c = cmath.sinh(z0), cmath.cosh(z0)
    return _taylor_circular(z0, K, (c, s))

def _taylor_tan_like(f0, K, sign):
    # f' = 1 + sign*f^2 drives the coefficient recurrence
    a = np.zeros(K + 1, dtype=complex)
    a[0] = f0
    for k in range(K):
        sq = np.dot(a[: k + 1], a[k::-1][: k + 1])
        a[k + 1] = ((1.0 if k == 0 else 0.0) + sign * sq) / (k + 1)
    return a

def _taylor_tan(z0, K):
    return _taylor_tan_like(cmath.tan(z0), K, +1.0)

def _taylor_tanh(z0, K):
    return _taylor_tan_like(cmath.tanh(z0), K, -1.0)

def _taylor_sqrt(z0, K):
    if z0 == 0:
        raise JetError("sqrt series at zero base value")
    a = np.empty(K + 1, dtype=complex)
    a[0] = cmath.sqrt(z0)
    for k in range(1, K + 1):
        a[k] = a[k - 1] * (0.5 - (k - 1)) / (k * z0)
    return a

def _taylor_arctan(z0, K):
    # integrate the series of 1/(1+z^2)
    a = np.zeros(K + 1, dtype=complex)
    a[0] = cmath.atan(z0)
    if K == 0:
        return a
    den = np.zeros(K, dtype=complex)
    den[0] = 1.0 + z0 * z0
    if K >= 2:
        den[1] = 2.0 * z0
    if K >= 3:
        den[2] = 1.0
    g = np.zeros(K, dtype=complex)
    g[0] = 1.0 / den[0]
    for k in range(1, K):
        g[k] = -np.dot(den[1 : k + 1], g[k - 1 :: -1][: k]) / den[0]
    for k in range(1, K + 1):
        a[k] = g[k - 1] / k
    return a


_ELEMENTARY: dict[str, Callable] = {
    "exp": _taylor_exp,
    "log": _taylor_log,
    "sin": _taylor_sin,
    "cos": _taylor_cos,
    "tan": _taylor_tan,
    "sinh": _taylor_sinh,
    "cosh": _taylor_cosh,
    "tanh": _taylor_tanh,
    "sqrt": _taylor_sqrt,
    "arctan": _taylor_arctan,
}

# tag -> (number of leading constant parameters, series provider, value fn)
_SPECIAL: dict[str, tuple] = {
    "jacobi_sn": ("mod", lambda z0, K, n: specfun.taylor_jacobi("sn", z0, n, K)),
    "jacobi_cn": ("mod", lambda z0, K, n: specfun.taylor_jacobi("cn", z0, n, K)),
    "jacobi_dn": ("mod", lambda z0, K, n: specfun.taylor_jacobi("dn", z0, n, K)),
    "elliptic_f": ("mod", lambda z0, K, n: specfun.taylor_elliptic_f(z0, n, K)),
    "bessel_j": ("order", lambda z0, K, nu: specfun.taylor_bessel_j(nu, z0, K)),
    "airy_ai": (None, lambda z0, K: specfun.taylor_airy("Ai", z0, K)),
    "airy_bi": (None, lambda z0, K: specfun.taylor_airy("Bi", z0, K)),
    "airy_ai_prime": (None, lambda z0, K: specfun.taylor_airy("Ai'", z0, K)),
    "airy_bi_prime": (None, lambda z0, K: specfun.taylor_airy("Bi'", z0, K)),
    "cosh_sqrt": (None, lambda z0, K: specfun.taylor_cosh_sqrt(z0, K)),
    "sinhc_sqrt": (None, lambda z0, K: specfun.taylor_sinhc_sqrt(z0, K)),
}

FUNCTION_TAGS = tuple(_ELEMENTARY) + tuple(_SPECIAL)


def apply_function(tag: str, arg: Jet, params: Iterable[complex] = ()) -> Jet:
    """Lift the named univariate function onto a jet argument.

    ``params`` carries the function's constant parameters (elliptic modulus,
    Bessel order); they cannot be jets.
    """
    params = tuple(complex(p) for p in params)
    K = sum(arg.orders)
    if tag in _ELEMENTARY:
        if params:
            raise JetError(f"{tag} takes no parameters")
        series = _ELEMENTARY[tag](arg.value, K)
    elif tag in _SPECIAL:
        _, provider = _SPECIAL[tag]
        series = provider(arg.value, K, *params)
    else:
        raise JetError(f"unknown function tag {tag!r}")
    return arg.compose(series)
