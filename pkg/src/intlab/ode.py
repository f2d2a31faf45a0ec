"""Adaptive embedded Runge-Kutta integration for complex-valued systems.

Dormand-Prince 5(4) with PI step-size control and first-same-as-last reuse.
Step collapse below ``H_MIN_FACTOR`` (or state blow-up) is classified as a
movable singularity: the trajectory is truncated and flagged rather than
raised, since Riccati and Painleve poles are expected, meaningful events.

Dense output is cubic Hermite on accepted steps; when sample points are
supplied via ``t_eval`` the integrator clamps steps to hit them exactly, so
sampled values carry no interpolation error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = ["ODESolution", "integrate", "OdeError"]

H_MIN_FACTOR = 1e-10
BLOWUP = 1e8

_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
                187 / 2100, 1 / 40])


class OdeError(RuntimeError):
    pass


@dataclass
class ODESolution:
    ts: np.ndarray
    ys: np.ndarray          # shape (len(ts), dim), complex
    fs: np.ndarray          # derivatives at the nodes (for Hermite evaluation)
    singular: bool = False
    t_singular: float | None = None
    nsteps: int = 0
    nfev: int = 0
    rtol: float = 0.0
    atol: float = 0.0
    samples: dict = field(default_factory=dict)  # t_eval -> y rows

    @property
    def t_end(self) -> float:
        return float(self.ts[-1])

    @property
    def y_end(self) -> np.ndarray:
        return self.ys[-1]

    def __call__(self, t: float) -> np.ndarray:
        """Dense evaluation by cubic Hermite on the accepted step containing t."""
        ts = self.ts
        lo, hi = (ts[0], ts[-1]) if ts[0] <= ts[-1] else (ts[-1], ts[0])
        if not (lo - 1e-12 <= t <= hi + 1e-12):
            raise OdeError(f"dense evaluation at {t} outside [{lo}, {hi}]")
        order = np.argsort(ts)
        idx = int(np.searchsorted(ts[order], t))
        idx = max(1, min(idx, len(ts) - 1))
        i0, i1 = order[idx - 1], order[idx]
        t0, t1 = ts[i0], ts[i1]
        h = t1 - t0
        if h == 0:
            return self.ys[i0]
        s = (t - t0) / h
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return (h00 * self.ys[i0] + h * h10 * self.fs[i0]
                + h01 * self.ys[i1] + h * h11 * self.fs[i1])


def _error_norm(err: np.ndarray, y0: np.ndarray, y1: np.ndarray,
                rtol: float, atol: float) -> float:
    scale = atol + rtol * np.maximum(np.abs(y0), np.abs(y1))
    return float(np.sqrt(np.mean(np.abs(err / scale) ** 2)))


def integrate(f: Callable[[float, np.ndarray], np.ndarray], t0: float, t1: float,
              y0: Sequence[complex], rtol: float = 1e-10, atol: float = 1e-12,
              t_eval: Sequence[float] | None = None,
              max_steps: int = 200_000) -> ODESolution:
    """Integrate y' = f(t, y) from t0 to t1 (either direction)."""
    y = np.asarray(y0, dtype=complex).copy()
    t = float(t0)
    t1 = float(t1)
    direction = 1.0 if t1 >= t else -1.0
    span = abs(t1 - t)
    if span == 0:
        f0 = np.asarray(f(t, y), dtype=complex)
        return ODESolution(np.array([t]), y[None, :].copy(), f0[None, :],
                           rtol=rtol, atol=atol)

    targets = []
    if t_eval is not None:
        targets = sorted((float(s) for s in t_eval), reverse=(direction < 0))
        for s in targets:
            if (s - t) * direction < -1e-12 or (t1 - s) * direction < -1e-12:
                raise OdeError(f"t_eval point {s} outside integration span")

    fval = np.asarray(f(t, y), dtype=complex)
    nfev = 1
    h = direction * min(span / 10.0, 0.1, max(span * rtol ** 0.25, 1e-6))
    ts = [t]
    ys = [y.copy()]
    fs = [fval.copy()]
    samples: dict[float, np.ndarray] = {}
    err_prev = 1.0
    singular = False
    t_sing = None
    nsteps = 0
    ti = 0  # next target index
    crawl = 0  # consecutive accepted steps far below the span scale

    while (t1 - t) * direction > 1e-14 * max(1.0, abs(t1)):
        if nsteps >= max_steps:
            raise OdeError(f"exceeded {max_steps} steps at t={t}")
        h = direction * min(abs(h), abs(t1 - t))
        clipped_to = None
        if ti < len(targets):
            nxt = targets[ti]
            if (nxt - t) * direction > 1e-14 and abs(nxt - t) <= abs(h) + 1e-14:
                h = nxt - t
                clipped_to = nxt
        if abs(h) < H_MIN_FACTOR * max(1.0, abs(t)):
            singular = True
            t_sing = t
            break

        k = np.empty((7, len(y)), dtype=complex)
        k[0] = fval
        for i in range(1, 7):
            yi = y + h * (_A[i] @ k[:i])
            k[i] = f(t + _C[i] * h, yi)
        nfev += 6
        y5 = y + h * (_B5 @ k)
        y4 = y + h * (_B4 @ k)
        err = _error_norm(y5 - y4, y, y5, rtol, atol)

        if err <= 1.0:
            t = t + h
            if clipped_to is not None and abs(t - clipped_to) < 1e-13 * max(1.0, abs(t)):
                t = clipped_to
            y = y5
            fval = k[6].copy()  # FSAL: stage 7 is f(t+h, y5)
            ts.append(t)
            ys.append(y.copy())
            fs.append(fval.copy())
            nsteps += 1
            if clipped_to is not None:
                samples[clipped_to] = y.copy()
                ti += 1
            if np.max(np.abs(y)) > BLOWUP:
                singular = True
                t_sing = t
                break
            # sustained micro-steps signal a singularity being crawled across
            crawl = crawl + 1 if (clipped_to is None and abs(h) < 1e-7 * span) else 0
            if crawl >= 50:
                singular = True
                t_sing = t
                break
            fac = 0.9 * err ** (-0.7 / 5.0) * err_prev ** (0.4 / 5.0) if err > 0 else 5.0
            err_prev = max(err, 1e-10)
            h = h * min(5.0, max(0.2, fac))
        else:
            h = h * min(1.0, max(0.2, 0.9 * err ** (-0.2)))

    sol = ODESolution(np.array(ts), np.array(ys), np.array(fs),
                      singular=singular, t_singular=t_sing,
                      nsteps=nsteps, nfev=nfev, rtol=rtol, atol=atol,
                      samples=samples)
    return sol
