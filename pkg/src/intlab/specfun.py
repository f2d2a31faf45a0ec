"""Complex-capable special functions with Taylor-series support.

Every function here does two jobs: produce a value at a complex point, and
produce the truncated Taylor series of itself about a complex point (the
``taylor_*`` providers).  The series are what the jet engine composes with,
so each provider returns coefficients ``a[k] = f^(k)(z0)/k!``.

Jacobi elliptic functions use the descending Landen transformation written
as rational recurrences in the (sn, cn, dn) triple, which keeps them
single-valued for complex arguments.  Bessel J and Airy functions delegate
point values to scipy and build series from their defining ODEs.
"""

from __future__ import annotations

import cmath

import numpy as np
from scipy import special as _sp

__all__ = [
    "SpecialFunctionError",
    "jacobi_elliptic",
    "jacobi_trio",
    "elliptic_f_incomplete",
    "elliptic_f_derivative",
    "bessel_j",
    "bessel_j_derivative",
    "airy",
    "cosh_sqrt",
    "sinhc_sqrt",
    "taylor_jacobi",
    "taylor_elliptic_f",
    "taylor_bessel_j",
    "taylor_airy",
    "taylor_cosh_sqrt",
    "taylor_sinhc_sqrt",
]

_LANDEN_TOL = 1e-14
_LANDEN_MAX_ITER = 64
_BRANCH_TOL = 1e-6


class SpecialFunctionError(ValueError):
    """Raised for domain errors and non-convergent special-function input."""


# ---------------------------------------------------------------------------
# small truncated power-series helpers (dense complex coefficient arrays)
# ---------------------------------------------------------------------------

def _ser_mul(a: np.ndarray, b: np.ndarray, K: int) -> np.ndarray:
    out = np.zeros(K + 1, dtype=complex)
    for i, ai in enumerate(a[: K + 1]):
        if ai == 0:
            continue
        jmax = K - i
        out[i : i + jmax + 1] += ai * b[: jmax + 1]
    return out

def _ser_recip(a: np.ndarray, K: int) -> np.ndarray:
    if a[0] == 0:
        raise SpecialFunctionError("series reciprocal of series with zero constant term")
    out = np.zeros(K + 1, dtype=complex)
    out[0] = 1.0 / a[0]
    for k in range(1, K + 1):
        out[k] = -np.dot(a[1 : k + 1], out[k - 1 :: -1][: k]) / a[0]
    return out

def _ser_pow(a: np.ndarray, alpha: complex, K: int) -> np.ndarray:
    # (a0 + w)^alpha via the binomial recurrence  k a0 c_k = sum (alpha(k-j)-j) a_{k-j} c_j
    if a[0] == 0:
        raise SpecialFunctionError("series power with zero constant term")
    out = np.zeros(K + 1, dtype=complex)
    out[0] = a[0] ** alpha
    for k in range(1, K + 1):
        s = 0.0 + 0.0j
        for j in range(k):
            s += (alpha * (k - j) - j) * a[k - j] * out[j]
        out[k] = s / (k * a[0])
    return out


# ---------------------------------------------------------------------------
# Jacobi elliptic functions, modulus convention: sn(u, n) with parameter m = n^2
# ---------------------------------------------------------------------------

def jacobi_trio(u: complex, n: complex) -> tuple[complex, complex, complex]:
    """(sn, cn, dn) at complex ``u`` for modulus ``n`` via descending Landen.

    Each Landen step maps the triple at (u/(1+mu), mu) rationally to the
    triple at (u, n), with mu = (1-n')/(1+n'), so no square-root branch is
    ever taken of a function value.
    """
    u = complex(u)
    n = complex(n)
    if n == 0:
        return cmath.sin(u), cmath.cos(u), 1.0 + 0.0j
    if n == 1:
        t = cmath.tanh(u)
        s = 1.0 / cmath.cosh(u)
        return t, s, s
    mus = []
    k = n
    for _ in range(_LANDEN_MAX_ITER):
        kp = cmath.sqrt(1.0 - k * k)
        mu = (1.0 - kp) / (1.0 + kp)
        mus.append(mu)
        if abs(mu) < _LANDEN_TOL:
            break
        k = mu
    else:
        raise SpecialFunctionError(f"Landen chain did not converge for modulus {n}")
    v = u
    for mu in mus:
        v = v / (1.0 + mu)
    s, c, d = cmath.sin(v), cmath.cos(v), 1.0 + 0.0j
    for mu in reversed(mus):
        denom = 1.0 + mu * s * s
        s, c, d = (1.0 + mu) * s / denom, c * d / denom, (1.0 - mu * s * s) / denom
    return s, c, d


def jacobi_elliptic(kind: str, u: complex, n: complex) -> complex:
    """sn/cn/dn value; ``n`` is the elliptic modulus (parameter m = n**2)."""
    trio = jacobi_trio(u, n)
    try:
        return trio[("sn", "cn", "dn").index(kind)]
    except ValueError:
        raise SpecialFunctionError(f"unknown Jacobi kind {kind!r}") from None


def taylor_jacobi(kind: str, u0: complex, n: complex, K: int) -> np.ndarray:
    """Taylor coefficients of sn/cn/dn about u0, from sn'=cn dn etc."""
    s0, c0, d0 = jacobi_trio(u0, n)
    m = complex(n) ** 2
    s = np.zeros(K + 2, dtype=complex)
    c = np.zeros(K + 2, dtype=complex)
    d = np.zeros(K + 2, dtype=complex)
    s[0], c[0], d[0] = s0, c0, d0
    for k in range(K + 1):
        cd = np.dot(c[: k + 1], d[k::-1][: k + 1])
        sd = np.dot(s[: k + 1], d[k::-1][: k + 1])
        sc = np.dot(s[: k + 1], c[k::-1][: k + 1])
        s[k + 1] = cd / (k + 1)
        c[k + 1] = -sd / (k + 1)
        d[k + 1] = -m * sc / (k + 1)
    table = {"sn": s, "cn": c, "dn": d}
    if kind not in table:
        raise SpecialFunctionError(f"unknown Jacobi kind {kind!r}")
    return table[kind][: K + 1]


# ---------------------------------------------------------------------------
# incomplete elliptic integral of the first kind (Carlson symmetric form)
# ---------------------------------------------------------------------------

def _check_branch_points(Y: complex, n: complex) -> None:
    pts = [1.0, -1.0]
    if n != 0:
        pts += [1.0 / n, -1.0 / n]
    if min(abs(Y - p) for p in pts) < _BRANCH_TOL:
        raise SpecialFunctionError(
            f"argument {Y} within {_BRANCH_TOL} of an elliptic branch point"
        )


def elliptic_f_incomplete(Y: complex, n: complex) -> complex:
    """F(Y, n) = integral_0^Y dt / (sqrt(1-t^2) sqrt(1-n^2 t^2)).

    Evaluated through Carlson's symmetric R_F, which is stable as Y -> 1.
    """
    Y = complex(Y)
    n = complex(n)
    _check_branch_points(Y, n)
    rf = _sp.elliprf(1.0 - Y * Y, 1.0 - n * n * Y * Y, 1.0)
    return complex(Y * rf)


def elliptic_f_derivative(Y: complex, n: complex) -> complex:
    """dF/dY = ((1-Y^2)(1-n^2 Y^2))^(-1/2), principal branch per factor."""
    _check_branch_points(Y, n)
    return 1.0 / (cmath.sqrt(1.0 - Y * Y) * cmath.sqrt(1.0 - n * n * Y * Y))


def taylor_elliptic_f(Y0: complex, n: complex, K: int) -> np.ndarray:
    a = np.zeros(K + 1, dtype=complex)
    a[0] = elliptic_f_incomplete(Y0, n)
    if K == 0:
        return a
    # series of the integrand (1-Y^2)^(-1/2) (1-n^2 Y^2)^(-1/2), then integrate
    p1 = np.zeros(K, dtype=complex)
    p2 = np.zeros(K, dtype=complex)
    p1[0] = 1.0 - Y0 * Y0
    p2[0] = 1.0 - n * n * Y0 * Y0
    if K >= 2:
        p1[1] = -2.0 * Y0
        p2[1] = -2.0 * n * n * Y0
    if K >= 3:
        p1[2] = -1.0
        p2[2] = -n * n
    g = _ser_mul(_ser_pow(p1, -0.5, K - 1), _ser_pow(p2, -0.5, K - 1), K - 1)
    for k in range(1, K + 1):
        a[k] = g[k - 1] / k
    return a


# ---------------------------------------------------------------------------
# Bessel J of real (fractional) order, complex argument
# ---------------------------------------------------------------------------

def _real_order(nu) -> float:
    nu = complex(nu)
    if abs(nu.imag) > 1e-14:
        raise SpecialFunctionError("Bessel order must be real")
    return float(nu.real)


def bessel_j(nu: float, z: complex) -> complex:
    val = complex(_sp.jv(_real_order(nu), complex(z)))
    if not (np.isfinite(val.real) and np.isfinite(val.imag)):
        raise SpecialFunctionError(f"J_{nu}({z}) did not converge")
    return val


def bessel_j_derivative(nu: float, z: complex) -> complex:
    """J'_nu = (J_(nu-1) - J_(nu+1)) / 2."""
    return 0.5 * (bessel_j(nu - 1.0, z) - bessel_j(nu + 1.0, z))


def taylor_bessel_j(nu: float, z0: complex, K: int) -> np.ndarray:
    """Series about z0 != 0 from z^2 w'' + z w' + (z^2 - nu^2) w = 0."""
    nu = _real_order(nu)
    z0 = complex(z0)
    if z0 == 0:
        raise SpecialFunctionError("Bessel series expansion point must be nonzero")
    a = np.zeros(K + 3, dtype=complex)
    a[0] = bessel_j(nu, z0)
    a[1] = bessel_j_derivative(nu, z0)
    # w'' = p(z) w' + q(z) w with p = -1/z, q = nu^2/z^2 - 1, both expanded at z0
    p = np.array([-((-1.0) ** k) / z0 ** (k + 1) for k in range(K + 1)], dtype=complex)
    q = np.array(
        [nu * nu * ((-1.0) ** k) * (k + 1) / z0 ** (k + 2) for k in range(K + 1)],
        dtype=complex,
    )
    q[0] -= 1.0
    for k in range(K + 1):
        conv_p = sum(p[j] * (k + 1 - j) * a[k + 1 - j] for j in range(k + 1))
        conv_q = np.dot(q[: k + 1], a[k::-1][: k + 1])
        a[k + 2] = (conv_p + conv_q) / ((k + 2) * (k + 1))
    return a[: K + 1]


# ---------------------------------------------------------------------------
# Airy Ai, Bi and their first derivatives
# ---------------------------------------------------------------------------

_AIRY_KINDS = ("Ai", "Bi", "Ai'", "Bi'")


def airy(kind: str, z: complex) -> complex:
    ai, aip, bi, bip = _sp.airy(complex(z))
    table = {"Ai": ai, "Bi": bi, "Ai'": aip, "Bi'": bip}
    if kind not in table:
        raise SpecialFunctionError(f"unknown Airy kind {kind!r}")
    return complex(table[kind])


def _airy_base_series(w0: complex, w0p: complex, z0: complex, K: int) -> np.ndarray:
    # w'' = z w  =>  (k+2)(k+1) a_{k+2} = z0 a_k + a_{k-1}
    a = np.zeros(K + 1, dtype=complex)
    a[0] = w0
    if K >= 1:
        a[1] = w0p
    for k in range(K - 1):
        prev = a[k - 1] if k >= 1 else 0.0
        a[k + 2] = (z0 * a[k] + prev) / ((k + 2) * (k + 1))
    return a


def taylor_airy(kind: str, z0: complex, K: int) -> np.ndarray:
    ai, aip, bi, bip = _sp.airy(complex(z0))
    if kind == "Ai":
        return _airy_base_series(ai, aip, z0, K)
    if kind == "Bi":
        return _airy_base_series(bi, bip, z0, K)
    if kind in ("Ai'", "Bi'"):
        w0, w0p = (ai, aip) if kind == "Ai'" else (bi, bip)
        base = _airy_base_series(w0, w0p, z0, K + 1)
        return np.array([(k + 1) * base[k + 1] for k in range(K + 1)], dtype=complex)
    raise SpecialFunctionError(f"unknown Airy kind {kind!r}")


# ---------------------------------------------------------------------------
# entire auxiliaries cosh(sqrt(w)) and sinh(sqrt(w))/sqrt(w)
#
# Both are entire in w, which is what makes spectral-parameter expansions
# around 0 legitimate; their series are computed termwise from
# cosh(sqrt(w)) = sum w^m/(2m)!  and  sinh(sqrt(w))/sqrt(w) = sum w^m/(2m+1)!.
# ---------------------------------------------------------------------------

def _entire_sqrt_series(w0: complex, K: int, odd: bool) -> np.ndarray:
    w0 = complex(w0)
    a = np.zeros(K + 1, dtype=complex)
    for k in range(K + 1):
        # term_m = C(m,k) w0^(m-k) / (2m)!  (or (2m+1)! for the odd kind), m >= k
        o = 1 if odd else 0
        term = 1.0 / _factorial(2 * k + o)
        total = term
        m = k
        while True:
            # advances C(m,k)/(2m+o)! -> C(m+1,k)/(2m+2+o)!
            term = term * w0 * (m + 1) / ((m + 1 - k) * (2 * m + 1 + o) * (2 * m + 2 + o))
            total += term
            m += 1
            if abs(term) < 1e-30 + 1e-21 * abs(total) or m > k + 220:
                break
        a[k] = total
    return a


def _factorial(k: int) -> float:
    return float(_sp.factorial(k, exact=True))


def cosh_sqrt(w: complex) -> complex:
    """cosh(sqrt(w)); entire in w (the branch of the root cancels)."""
    r = cmath.sqrt(complex(w))
    return cmath.cosh(r)


def sinhc_sqrt(w: complex) -> complex:
    """sinh(sqrt(w))/sqrt(w); entire in w, value 1 at w=0."""
    w = complex(w)
    if abs(w) < 1e-12:
        return 1.0 + w / 6.0 + w * w / 120.0
    r = cmath.sqrt(w)
    return cmath.sinh(r) / r


def taylor_cosh_sqrt(w0: complex, K: int) -> np.ndarray:
    return _entire_sqrt_series(w0, K, odd=False)


def taylor_sinhc_sqrt(w0: complex, K: int) -> np.ndarray:
    return _entire_sqrt_series(w0, K, odd=True)
