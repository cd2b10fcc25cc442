"""Maximizer and trial profiles in position and Fourier space.

The central object is the position-space profile of the radial Fourier
datum xi^(2a-d)/(1 + xi^(2b)), b > a > 0:

    F(rho) = int_0^inf xi^(2a-1) [J_nu(rho xi)/(rho xi)^nu] / (1 + xi^(2b)) d xi,  nu = d/2 - 1.

It is evaluated by oscillatory quadrature, as a Fox H function of
(rho/2)^2, or, for rational b = N/M, as a Meijer G function of
(rho/2N)^(2N).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable

import numpy as np
from scipy import special as sp

from . import mellin_barnes as mb
from .config import DEFAULT_CONFIG, QuadratureConfig
from .errors import DomainError, ParameterError, RegimeError
from .radial_ops import RadialProfile, RadialRule, hankel_inverse_ft, hankel_inverse_ft_sector, macdonald_transform
from .special_kernel import gamma_real, hyp2f1_neg

METHODS = ("quadrature", "fox_h", "meijer_g")
MAX_G_DENOMINATOR = 12
MIN_EPS = 1e-3


def _exact(x):
    """Keep ints and Fractions exact; leave other reals as floats."""
    if isinstance(x, Rational):
        return Fraction(x)
    return float(x)


def rational_of(x, max_den: int = 1000):
    """Fraction equal to x (within 1e-12 for floats), or None."""
    if isinstance(x, Rational):
        return Fraction(x)
    frac = Fraction(float(x)).limit_denominator(max_den)
    return frac if abs(float(frac) - float(x)) <= 1e-12 * max(1.0, abs(float(x))) else None


@dataclass(frozen=True)
class ProfileAB:
    """Fourier datum xi^(2a-d)/(1 + xi^(2b)) in dimension d, with b > a > 0."""

    a: float
    b: float
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", _exact(self.a))
        object.__setattr__(self, "b", _exact(self.b))
        if int(self.d) != self.d or self.d < 1:
            raise ParameterError(f"dimension must be a positive integer, got {self.d}")
        object.__setattr__(self, "d", int(self.d))
        if not 0 < self.a < self.b:
            raise ParameterError(f"need b > a > 0, got a={self.a}, b={self.b}")

    def b_ratio(self):
        """(N, M) with b = N/M in lowest terms, or None if b is not rational."""
        frac = rational_of(self.b)
        return None if frac is None else (frac.numerator, frac.denominator)

    def fourier(self) -> RadialProfile:
        a, b, d = float(self.a), float(self.b), self.d
        return RadialProfile(lambda x: x ** (2 * a - d) / (1 + x ** (2 * b)),
                             decay="algebraic", decay_power=2 * b - 2 * a + d, nonnegative=True)


def profile_value_at_zero(spec: ProfileAB) -> float:
    a, b, d = float(spec.a), float(spec.b), spec.d
    return math.pi / (2 ** (d / 2) * gamma_real(d / 2) * b * math.sin(math.pi * a / b))


def h_spec_for_profile(spec: ProfileAB):
    """(H spec, prefactor); the profile is prefactor * H((rho/2)^2)."""
    a, b, d = spec.a, spec.b, spec.d
    shifted = 1 - a / b
    scale = 1 / b
    h = mb.HFunctionSpec(
        upper_left=((shifted, scale),),
        lower_left=((0, 1), (shifted, scale)),
        lower_right=((1 - Fraction(d, 2), 1),),
    )
    return h, 1.0 / (2 ** (d / 2) * float(b))


def g_spec_for_profile(spec: ProfileAB, N: int, M: int):
    """(simplified G spec, prefactor, argument map) for b = N/M."""
    a, d = spec.a, spec.d
    if rational_of(spec.b) != Fraction(N, M):
        raise ParameterError(f"b = {spec.b} is not {N}/{M}")
    aN = a / N if isinstance(a, Fraction) else float(a) / N
    upper = [1 - aN - Fraction(ell, M) for ell in range(M)]
    lower = [Fraction(h, N) for h in range(N)] + [-aN + Fraction(h, M) for h in range(1, M + 1)]
    lower_star = [1 - Fraction(d, 2 * N) - Fraction(ell, N) for ell in range(N)]
    g = mb.simplify_g(mb.GFunctionSpec(a=upper, b=lower, b_star=lower_star))
    pref = M / (2 ** (d / 2 + M - 1) * math.pi ** (M - 1) * N ** (d / 2))
    return g, pref, (lambda rho: (np.asarray(rho, dtype=float) / (2 * N)) ** (2 * N))


def default_method(spec: ProfileAB) -> str:
    ratio = spec.b_ratio()
    return "meijer_g" if ratio is not None and ratio[0] <= MAX_G_DENOMINATOR else "fox_h"


def profile_ab(spec: ProfileAB, rho, method: str | None = None, cfg: QuadratureConfig | None = None):
    """Position-space profile at rho >= 0 (scalar or array)."""
    cfg = cfg or DEFAULT_CONFIG
    method = method or default_method(spec)
    if method not in METHODS:
        raise ParameterError(f"unknown method {method!r}")
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise DomainError("rho must be nonnegative")
    if method == "quadrature":
        fourier = spec.fourier()
        flat = [hankel_inverse_ft(fourier, spec.d, float(r), cfg) for r in rho.ravel()]
        out = np.asarray(flat).reshape(rho.shape)
    elif method == "fox_h":
        h, pref = h_spec_for_profile(spec)
        out = pref * np.asarray(mb.eval_h(h, (rho / 2) ** 2, cfg))
    else:
        ratio = spec.b_ratio()
        if ratio is None:
            raise ParameterError(f"meijer_g needs rational b, got {spec.b}")
        g, pref, argmap = g_spec_for_profile(spec, *ratio)
        out = pref * np.asarray(mb.eval_g(g, argmap(rho), cfg))
    out = np.asarray(out, dtype=float)
    return out[()] if out.ndim == 0 else out


def _linf_spec(j, n, d) -> ProfileAB:
    j, n = _exact(j), _exact(n)
    if not (0 <= j and j + Fraction(d, 2) < n):
        raise RegimeError(f"the sup-norm maximizer needs 0 <= j and j + d/2 < n, got j={j}, n={n}, d={d}")
    return ProfileAB((j + d) / 2, n, d)


def f_linf(j, n, d: int, rho, method: str | None = None, cfg: QuadratureConfig | None = None):
    """Sup-norm maximizer F_jn: Fourier datum xi^j/(1 + xi^(2n))."""
    return profile_ab(_linf_spec(j, n, d), rho, method, cfg)


def l_profile(j, n, d: int, rho, method: str | None = None, cfg: QuadratureConfig | None = None):
    """Profile L_jn: Fourier datum xi^(2j)/(1 + xi^(2n))."""
    j, n = _exact(j), _exact(n)
    if not (0 <= j and 2 * j + d < 2 * n):
        raise RegimeError(f"L profile needs 2j + d < 2n, got j={j}, n={n}, d={d}")
    return profile_ab(ProfileAB(j + Fraction(d, 2), n, d), rho, method, cfg)


def elementary_form(d: int, j, n) -> Callable:
    """Closed forms of the three elementary sup-norm maximizers."""
    root = math.sqrt(2)
    if (d, j, n) == (1, 0, 1):
        return lambda rho: math.sqrt(math.pi / 2) * np.exp(-np.asarray(rho, dtype=float))
    if (d, j, n) == (1, 0, 2):
        def f(rho):
            r = np.asarray(rho, dtype=float) / root
            return math.sqrt(math.pi) / 2 * (np.cos(r) + np.sin(r)) * np.exp(-r)
        return f
    if (d, j, n) == (3, 0, 2):
        def f(rho):
            rho = np.asarray(rho, dtype=float)
            r = rho / root
            safe = np.where(rho == 0, 1.0, rho)
            return np.where(rho == 0, math.sqrt(math.pi) / 2,
                            math.sqrt(math.pi / 2) * np.exp(-r) * np.sin(r) / safe)
        return f
    raise ParameterError(f"no elementary form for d={d}, (j, n)=({j}, {n})")


def theta1_linf_member(j, n, d) -> bool:
    return n < j / 2 + d / 2


def theta1_l2_member(j, n, d) -> bool:
    return n < j / 2 + d / 4


def theta1_maximizer(j, n, d: int, rho):
    """Hypergeometric maximizer of the theta = 1 inequality."""
    j, n = float(j), float(n)
    if not (0 <= j <= n < j + d / 2):
        raise RegimeError(f"theta = 1 needs 0 <= j <= n < j + d/2, got j={j}, n={n}, d={d}")
    if not theta1_linf_member(j, n, d):
        raise RegimeError("no closed-form maximizer when n >= j/2 + d/2")
    p, q = d / 2 - j / 2, d / 2 - n + j / 2
    pref = gamma_real(p) * gamma_real(q) / (2**j * gamma_real(d / 2) * gamma_real(d / 2 - n + j))
    rho = np.asarray(rho, dtype=float)
    if j == 0:
        out = (1 + rho**2) ** -(d / 2 - n)
    else:
        out = pref * np.asarray(hyp2f1_neg(p, q, d / 2, rho**2))
    out = np.asarray(out, dtype=float)
    return out[()] if out.ndim == 0 else out


def theta1_maximizer_fourier(j, n, d: int, rho):
    """Same maximizer through the Macdonald transform of K_(n-j)(xi)/xi^n."""
    const = 2 ** (n + 1 - d / 2) / (2**j * gamma_real(d / 2 - n + j))
    return const * macdonald_transform(n - j, n, d, rho)


def _check_eps(eps):
    if np.any(np.asarray(eps) < MIN_EPS):
        raise DomainError(f"eps must be at least {MIN_EPS}")


def trial_minus_fourier(j, n, eps: float) -> RadialProfile:
    """Fourier profile xi^(n-j) K_(n-j)(xi) / (xi^2 + eps^2)^(n - j/2)."""
    _check_eps(eps)
    j, n, eps = float(j), float(n), float(eps)
    mu = n - j
    if mu < 0:
        raise ParameterError("trial family needs n >= j")
    power = n - j / 2
    at_zero = 2 ** (mu - 1) * gamma_real(mu) / eps ** (2 * power) if mu > 0 else None
    return RadialProfile(lambda x: x**mu * sp.kv(mu, x) / (x * x + eps * eps) ** power,
                         value_at_zero=at_zero)


def trial_ray(j, n, eps) -> Callable:
    """Analytic continuation of xi^n K_(n-j)(xi)/(xi^2 + eps^2)^(n - j/2), batched over eps.

    This is the j-th derivative image of the trial profile. Returns z -> array (len(z), len(eps)).
    """
    eps = np.atleast_1d(np.asarray(eps, dtype=float))
    _check_eps(eps)
    j, n = float(j), float(n)
    mu, power = n - j, n - j / 2

    def analytic(z):
        z = np.asarray(z, dtype=complex)
        base = z**n * sp.kv(mu, z)
        return base[:, None] / (z[:, None] ** 2 + eps[None, :] ** 2) ** power

    return analytic


def ray_rule(n, cfg: QuadratureConfig | None = None) -> RadialRule:
    cfg = cfg or DEFAULT_CONFIG
    top = max(80.0, (40.0 + 3.0 * float(n)) / math.cos(cfg.contour_angle))
    return RadialRule.geometric(1e-12, top)


def m_profile_grid(j, n, eps, d: int, rho, cfg: QuadratureConfig | None = None) -> np.ndarray:
    """Hankel transform of the j-th derivative trial image: shape (len(rho), len(eps))."""
    cfg = cfg or DEFAULT_CONFIG
    return hankel_inverse_ft_sector(trial_ray(j, n, eps), d, np.atleast_1d(rho), ray_rule(n, cfg),
                                    cfg.contour_angle, workers=cfg.worker_count())


def m_profile(j, n, eps: float, d: int, rho, cfg: QuadratureConfig | None = None):
    """Position-space j-th derivative of the trial profile at rho (scalar or array)."""
    rho_arr = np.asarray(rho, dtype=float)
    out = m_profile_grid(j, n, [eps], d, rho_arr.ravel(), cfg)[:, 0].reshape(rho_arr.shape)
    return out[()] if out.ndim == 0 else out
