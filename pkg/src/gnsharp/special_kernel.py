"""Scalar special functions used by the rest of the package.

Thin validated wrappers around :mod:`scipy.special`: Gamma on the real
axis and along vertical lines, Pochhammer symbols, Bessel J and the
radial Fourier kernel J_nu(s)/s^nu, Macdonald K and 2F1 at negative
argument.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special as sp

from .errors import DomainError, PoleError

GAMMA_OVERFLOW = 171.6243769563027
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def _is_nonpositive_integer(x) -> bool:
    return x <= 0 and float(x) == math.floor(x)


def gamma_real(x: float) -> float:
    """Gamma function on the real line."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x}")
    if x > GAMMA_OVERFLOW:
        raise OverflowError(f"Gamma({x}) overflows double precision")
    return float(sp.gamma(x))


def log_gamma_vertical(z):
    """Branch-continuous log Gamma for complex arguments.

    Uses the principal branch of log Gamma, which is analytic off the
    negative real axis, so values along any vertical line vary continuously.
    Accepts scalars or arrays.
    """
    z = np.asarray(z, dtype=complex)
    bad = (z.imag == 0) & (z.real <= 0) & (z.real == np.floor(z.real))
    if np.any(bad):
        raise PoleError("log Gamma evaluated at a pole")
    out = sp.loggamma(z)
    # vertical lines left of 0 cross the branch cut: continue from above
    lower = (z.real < 0) & (z.imag < 0)
    if np.any(lower):
        upper_edge = sp.loggamma(z.real[lower] + 1e-300j).imag
        out[lower] += 2j * upper_edge
    return out[()] if out.ndim == 0 else out


def pochhammer(z: float, ell: int) -> float:
    """Rising factorial (z)_ell = z (z+1) ... (z+ell-1)."""
    if ell < 0 or int(ell) != ell:
        raise DomainError("Pochhammer index must be a nonnegative integer")
    out = 1.0
    for i in range(int(ell)):
        out *= z + i
    return out


def bessel_j(order: float, x):
    """Bessel J_nu(x) for nu >= -1/2 and x >= 0."""
    if order < -0.5:
        raise DomainError(f"Bessel order {order} < -1/2 is not supported")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("Bessel J argument must be nonnegative")
    if order == -0.5:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.sqrt(2.0 / (np.pi * x)) * np.cos(x)
    elif order == 0.5:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(x == 0, 0.0, np.sqrt(2.0 / (np.pi * x)) * np.sin(x))
    else:
        out = sp.jv(order, x)
    return out[()] if out.ndim == 0 else out


def bessel_kernel(order: float, s):
    """Radial Fourier kernel J_nu(s)/s^nu, finite at s = 0.

    For s < 1e-4 the ascending series is used; at s = 0 the value is
    1/(2^nu Gamma(nu+1)).
    """
    if order < -0.5:
        raise DomainError(f"Bessel order {order} < -1/2 is not supported")
    s = np.asarray(s, dtype=float)
    out = np.empty_like(s)
    small = s < 1e-4
    if np.any(small):
        q = -(s[small] ** 2) / 4.0
        c0 = 1.0 / (2.0**order * gamma_real(order + 1))
        out[small] = c0 * (1.0 + q / (order + 1) * (1.0 + q / (2 * (order + 2))))
    big = ~small
    if np.any(big):
        sb = s[big]
        if order == -0.5:
            out[big] = _SQRT_2_OVER_PI * np.cos(sb)
        elif order == 0.5:
            out[big] = _SQRT_2_OVER_PI * np.sin(sb) / sb
        else:
            out[big] = sp.jv(order, sb) / sb**order
    return out[()] if out.ndim == 0 else out


def bessel_k(order: float, x):
    """Macdonald function K_mu(x) for x > 0, symmetric in mu."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("Macdonald function needs a positive argument")
    mu = abs(float(order))
    if mu == 0.5:
        out = np.sqrt(np.pi / (2 * x)) * np.exp(-x)
    else:
        out = sp.kv(mu, x)
    return out[()] if out.ndim == 0 else out


def hyp2f1_neg(a: float, b: float, c: float, rho2):
    """Gauss 2F1(a, b; c; -rho2) for rho2 >= 0.

    The Pfaff transformation maps the argument to rho2/(1+rho2) in [0, 1),
    where the series-based evaluator is well conditioned.
    """
    if _is_nonpositive_integer(c):
        raise PoleError(f"2F1 is undefined for c = {c}")
    rho2 = np.asarray(rho2, dtype=float)
    if np.any(rho2 < 0):
        raise DomainError("2F1 helper expects rho^2 >= 0")
    w = rho2 / (1.0 + rho2)
    out = (1.0 + rho2) ** (-a) * sp.hyp2f1(a, c - b, c, w)
    if not np.all(np.isfinite(out)):
        raise DomainError("2F1 evaluation diverged")
    return out[()] if out.ndim == 0 else out
