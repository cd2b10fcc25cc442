"""Radial integrals, Hankel-kernel transforms and L^r norms in dimension d.

Conventions: for a radial function G(|k|) on R^d,

    radial_integral(G)      = c_d int_0^inf xi^(d-1) G(xi) d xi,  c_d = 2 pi^(d/2)/Gamma(d/2)
    hankel_inverse_ft(G)(r) = int_0^inf xi^(d-1) J_nu(r xi)/(r xi)^nu G(xi) d xi,  nu = d/2 - 1

so that the second is the unitary inverse Fourier transform of G.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate, optimize
from scipy import special as sp

from .config import DEFAULT_CONFIG, QuadratureConfig
from .errors import DivergenceError, DomainError, ParameterError, ToleranceError
from .special_kernel import bessel_kernel, gamma_real, hyp2f1_neg, pochhammer

__all__ = [
    "QuadratureConfig",
    "RadialProfile",
    "RadialRule",
    "sphere_area",
    "radial_integral",
    "beta_integral",
    "beta_integral_integer",
    "i_jn",
    "hankel_inverse_ft",
    "hankel_inverse_ft_sector",
    "lr_norm_radial",
    "lr_norm_samples",
    "macdonald_transform",
    "macdonald_l1_admissible",
    "macdonald_l2_admissible",
    "wynn_epsilon",
]

_DECAYS = ("exponential", "algebraic", "oscillatory-algebraic")


@dataclass
class RadialProfile:
    """A real radial function on [0, inf), evaluated through a callable.

    `eval` should accept numpy arrays. `decay_power` is the exponent p of a
    |f| <= C x^-p bound for the algebraic classes. `nonnegative` marks a
    profile whose Fourier data are nonnegative, so its sup sits at 0.
    """

    eval: Callable
    value_at_zero: float | None = None
    decay: str = "exponential"
    decay_power: float = math.inf
    nonnegative: bool = False

    def __post_init__(self):
        if self.decay not in _DECAYS:
            raise ParameterError(f"unknown decay class {self.decay!r}")
        if self.decay != "exponential" and not math.isfinite(self.decay_power):
            raise ParameterError("algebraic decay needs a finite decay_power")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.asarray(self.eval(x), dtype=float)
        if out.shape != x.shape:
            out = out.reshape(x.shape) if out.size == x.size else np.broadcast_to(out, x.shape).copy()
        if self.value_at_zero is not None:
            out = np.where(x == 0, self.value_at_zero, out)
        return out

    def validate(self, points=(1e2, 1e3, 1e4)):
        """Spot-check the decay bound at three large abscissae."""
        vals = np.abs(self(np.asarray(points, dtype=float)))
        if not np.all(np.isfinite(vals)):
            raise ParameterError("profile is not finite at large abscissae")
        if self.decay == "exponential":
            ok = vals[-1] <= 1e-30 or vals[-1] <= vals[0] * 1e-12
        else:
            scaled = vals * np.asarray(points) ** self.decay_power
            ok = scaled[-1] <= 10 * max(scaled[0], 1e-300) or vals[-1] <= 1e-300
        if not ok:
            raise ParameterError("profile does not obey its declared decay class")


def sphere_area(d: int) -> float:
    """Surface area 2 pi^(d/2)/Gamma(d/2) of the unit sphere in R^d."""
    return 2 * math.pi ** (d / 2) / gamma_real(d / 2)


class RadialRule:
    """Fixed composite Gauss-Legendre rule on [0, hi] for batched integrals."""

    def __init__(self, nodes, weights):
        self.nodes = np.asarray(nodes, dtype=float)
        self.weights = np.asarray(weights, dtype=float)

    @classmethod
    def geometric(cls, lo: float, hi: float, ratio: float = 1.3, order: int = 20) -> "RadialRule":
        """Panels [0, lo], then edges lo*ratio^k up to hi."""
        x, w = leggauss(order)
        edges = [0.0, lo]
        while edges[-1] * ratio < hi:
            edges.append(edges[-1] * ratio)
        edges.append(hi)
        e = np.asarray(edges)
        a, b = e[:-1, None], e[1:, None]
        nodes = (a + (b - a) * (x[None, :] + 1) / 2).ravel()
        wts = ((b - a) * w[None, :] / 2).ravel()
        return cls(nodes, wts)

    @classmethod
    def log_panels(cls, head: float, hi: float, width: float = 0.2, order: int = 20) -> "RadialRule":
        """Uniform panels on [0, head], then panels of fixed width in log(x)."""
        x, w = leggauss(order)
        n_head = max(1, int(math.ceil(head / 0.125)))
        e = np.linspace(0.0, head, n_head + 1)
        a, b = e[:-1, None], e[1:, None]
        n1 = (a + (b - a) * (x[None, :] + 1) / 2).ravel()
        w1 = ((b - a) * w[None, :] / 2).ravel()
        le = np.arange(math.log(head), math.log(hi) + 1e-12, width)
        if le[-1] < math.log(hi):
            le = np.append(le, math.log(hi))
        a, b = le[:-1, None], le[1:, None]
        u = (a + (b - a) * (x[None, :] + 1) / 2).ravel()
        wu = ((b - a) * w[None, :] / 2).ravel()
        return cls(np.concatenate([n1, np.exp(u)]), np.concatenate([w1, wu * np.exp(u)]))

    def integrate(self, f):
        return np.tensordot(self.weights, f(self.nodes), axes=(0, 0))


def _check_integrable(profile: RadialProfile, power_weight: float, what: str):
    if profile.decay != "exponential" and profile.decay_power <= power_weight:
        raise DivergenceError(f"{what}: decay x^-{profile.decay_power} is not integrable")


def radial_integral(G: RadialProfile, d: int, cfg: QuadratureConfig | None = None) -> float:
    """c_d int_0^inf xi^(d-1) G(xi) d xi."""
    cfg = cfg or DEFAULT_CONFIG
    _check_integrable(G, d, "radial integral")
    f = lambda x: x ** (d - 1) * float(G(x))
    opts = dict(epsabs=0.0, epsrel=max(cfg.rel_tol * 1e-2, 1e-13), limit=500)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        total = integrate.quad(f, 0.0, 1.0, **opts)[0]
        total += integrate.quad(f, 1.0, np.inf, **opts)[0]
    return sphere_area(d) * total


def beta_integral(a: float, b: float, u: float) -> float:
    """int_0^inf xi^(2au-1)/(1+xi^(2b))^u d xi = Gamma(au/b) Gamma(u-au/b)/(2b Gamma(u))."""
    if not (b > a > 0 and u > 0):
        raise DomainError("beta integral needs b > a > 0 and u > 0")
    m = a * u / b
    return math.exp(math.lgamma(m) + math.lgamma(u - m) - math.lgamma(u)) / (2 * b)


def beta_integral_integer(a: float, b: float, u: int) -> float:
    """Integer-u form pi (1-au/b)_(u-1)/(2b (u-1)! sin(pi au/b)), with its integer limit."""
    if not (b > a > 0) or u < 1 or int(u) != u:
        raise DomainError("integer beta integral needs b > a > 0 and integer u >= 1")
    u = int(u)
    m = a * u / b
    mi = round(m)
    if abs(m - mi) < 1e-12 and 1 <= mi <= u - 1:
        ratio = (-1) ** (mi + 1) * math.prod(1 - mi + i for i in range(u - 1) if i != mi - 1)
    else:
        ratio = math.pi * pochhammer(1 - m, u - 1) / math.sin(math.pi * m)
    return ratio / (2 * b * math.factorial(u - 1))


def i_jn(j: float, n: float, d: int) -> float:
    """c_d int xi^(d-1) xi^(2j)/(1+xi^(2n)) = pi^(d/2+1)/(Gamma(d/2) n sin(pi (j/n + d/2n)))."""
    if not (n > 0 and j >= 0):
        raise DomainError("i_jn needs n > 0 and j >= 0")
    th = j / n + d / (2 * n)
    if th >= 1:
        raise DivergenceError("i_jn diverges for j/n + d/2n >= 1")
    return math.pi ** (d / 2 + 1) / (gamma_real(d / 2) * n * math.sin(math.pi * th))


def wynn_epsilon(seq) -> float:
    """Wynn epsilon extrapolation of a sequence of partial sums."""
    s = [float(x) for x in seq]
    if len(s) < 3:
        return s[-1]
    prev = [0.0] * (len(s) + 1)
    cur = list(s)
    best = s[-1]
    k = 0
    while len(cur) > 1:
        nxt = []
        for i in range(len(cur) - 1):
            diff = cur[i + 1] - cur[i]
            if diff == 0:
                # converged column
                return cur[i + 1] if k % 2 == 0 else best
            nxt.append(prev[i + 1] + 1.0 / diff)
        prev, cur = cur, nxt
        k += 1
        if k % 2 == 0:
            best = cur[-1]
    return best


_GL32 = leggauss(32)


def _gl(f, lo, hi):
    x, w = _GL32
    xs = lo + (hi - lo) * (x + 1) / 2
    return float(np.dot(w, f(xs))) * (hi - lo) / 2


def _kernel_zeros(nu: float, count: int) -> np.ndarray:
    """First positive zeros of J_nu."""
    k = np.arange(1, count + 1)
    if nu == -0.5:
        return (k - 0.5) * math.pi
    if nu == 0.5:
        return k * math.pi
    if float(nu).is_integer() and nu >= 0:
        return sp.jn_zeros(int(nu), count)
    beta = (k + nu / 2 - 0.25) * math.pi
    mu = 4 * nu * nu
    z = beta - (mu - 1) / (8 * beta)
    for _ in range(6):
        z = z - sp.jv(nu, z) / (0.5 * (sp.jv(nu - 1, z) - sp.jv(nu + 1, z)))
    return z


def hankel_inverse_ft(G: RadialProfile, d: int, rho: float, cfg: QuadratureConfig | None = None) -> float:
    """int_0^inf xi^(d-1) [J_nu(rho xi)/(rho xi)^nu] G(xi) d xi, nu = d/2 - 1.

    The integral is split at the zeros of the kernel; the alternating panel
    sums of algebraically decaying profiles are accelerated with Wynn's
    epsilon algorithm.
    """
    cfg = cfg or DEFAULT_CONFIG
    nu = d / 2 - 1
    if rho < 0:
        raise DomainError("rho must be nonnegative")
    if rho == 0:
        _check_integrable(G, d, "Hankel transform at 0")
        return float(bessel_kernel(nu, 0.0)) * radial_integral(G, d, cfg) / sphere_area(d)
    if G.decay != "exponential" and G.decay_power <= (d - 1) / 2:
        raise DivergenceError("profile decays too slowly for an oscillatory Hankel integral")

    def f(x):
        x = np.asarray(x, dtype=float)
        return x ** (d - 1) * bessel_kernel(nu, rho * x) * G(x)

    opts = dict(epsabs=0.0, epsrel=1e-12, limit=400)
    # head: everything up to a few multiples of the profile's unit scale
    zeros = _kernel_zeros(nu, 64)
    head_end = max(4.0, 1.0)
    k0 = int(np.searchsorted(zeros / rho, head_end))
    while k0 >= zeros.size:
        zeros = _kernel_zeros(nu, 2 * zeros.size)
        k0 = int(np.searchsorted(zeros / rho, head_end))
    edge = zeros[k0] / rho
    pts = [p for p in (0.5, 1.0, 2.0) if p < edge]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        total = integrate.quad(f, 0.0, edge, points=pts or None, **opts)[0]

    need = k0 + 1 + cfg.max_panels
    zeros = _kernel_zeros(nu, min(need, 200000))
    partial = []
    lo = edge
    small_run = 0
    for k in range(k0 + 1, zeros.size):
        hi = zeros[k] / rho
        piece = _gl(f, lo, hi)
        total += piece
        partial.append(total)
        lo = hi
        if G.decay == "exponential":
            small_run = small_run + 1 if abs(piece) <= 1e-17 * max(abs(total), 1e-300) else 0
            if small_run >= 3:
                return total
        elif len(partial) >= cfg.osc_accel_terms:
            est1 = wynn_epsilon(partial[-cfg.osc_accel_terms:])
            est2 = wynn_epsilon(partial[-cfg.osc_accel_terms + 2:])
            scale = max(abs(est1), cfg.abs_tol)
            if abs(est1 - est2) <= cfg.rel_tol * scale:
                return est1
            if len(partial) > 8 * cfg.osc_accel_terms:
                break
    if G.decay == "exponential":
        return total
    raise ToleranceError(f"oscillatory Hankel tail did not converge at rho={rho}")


def hankel_inverse_ft_sector(analytic: Callable, d: int, rho, rule: RadialRule,
                             angle: float = math.pi / 4, workers: int = 1) -> np.ndarray:
    """Batched Hankel-kernel transform along the ray xi = t e^(i angle).

    `analytic(z)` must return an array of shape (len(z), k): k profiles
    that are real on the positive axis, analytic in the sector
    0 <= arg z <= angle and decaying there. Writing J = Re H^(1), the
    transform equals the real part of the rotated integral, where the
    kernel decays like exp(-rho t sin(angle)). Values at rho = 0 are the
    real-axis moments. Returns shape (len(rho), k). Blocks of rho are
    spread over `workers` threads; each block is computed identically
    whatever the worker count.
    """
    nu = d / 2 - 1
    rho = np.asarray(rho, dtype=float)
    phase = np.exp(1j * angle)
    z = rule.nodes * phase
    wz = rule.weights * phase
    vals = np.asarray(analytic(z))
    base = (z ** (d - 1) * wz)[:, None] * vals
    out = np.empty((rho.size, vals.shape[1]))
    zero = rho == 0
    if np.any(zero):
        real_vals = np.asarray(analytic(rule.nodes.astype(complex))).real
        mom = (rule.weights * rule.nodes ** (d - 1)) @ real_vals
        out[zero] = float(bessel_kernel(nu, 0.0)) * mom
    pos = np.nonzero(~zero)[0]

    def block(idx):
        x = rho[idx, None] * z[None, :]
        if nu == -0.5:
            ker = math.sqrt(2 / math.pi) * np.exp(1j * x)
        elif nu == 0.5:
            ker = -1j * math.sqrt(2 / math.pi) * np.exp(1j * x) / x
        else:
            # scaled Hankel function: the unscaled one is unreliable near underflow
            ker = sp.hankel1e(nu, x) * np.exp(1j * x) / x ** nu
        out[idx] = (ker @ base).real

    blocks = [pos[start:start + 256] for start in range(0, pos.size, 256)]
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(block, blocks))
    else:
        for idx in blocks:
            block(idx)
    return out


def lr_norm_samples(values, rho, weights, r: float, d: int) -> np.ndarray:
    """(c_d sum w rho^(d-1) |F|^r)^(1/r) for tabulated values (columns = profiles)."""
    values = np.asarray(values, dtype=float)
    if math.isinf(r):
        return np.max(np.abs(values), axis=0)
    a = np.abs(values)
    with np.errstate(divide="ignore"):
        powered = np.where(a > 0, np.exp(r * np.log(np.where(a > 0, a, 1.0))), 0.0)
    w = np.asarray(weights) * np.asarray(rho) ** (d - 1)
    total = np.tensordot(w, powered, axes=(0, 0))
    return (sphere_area(d) * total) ** (1.0 / r)


def _sup_norm(F: RadialProfile, rho_max: float) -> float:
    if F.value_at_zero is not None and F.nonnegative:
        return abs(F.value_at_zero)
    grid = np.concatenate([[0.0], np.geomspace(1e-4, rho_max, 255)])
    vals = np.abs(F(grid))
    best = float(vals.max())
    for i in np.argsort(vals)[::-1][:3]:
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, grid.size - 1)]
        if hi <= lo:
            continue
        res = optimize.minimize_scalar(lambda x: -abs(float(F(x))), bounds=(lo, hi),
                                       method="bounded", options={"xatol": 1e-12 * max(hi, 1.0)})
        best = max(best, -float(res.fun))
    return best


def lr_norm_radial(F: RadialProfile, r: float, d: int, cfg: QuadratureConfig | None = None,
                   rho_scale: float = 1.0, rho_max: float | None = None) -> float:
    """(c_d int_0^inf rho^(d-1) |F(rho)|^r d rho)^(1/r), or the sup norm for r = inf.

    `rho_scale` is a length over which F varies appreciably; panels are
    never wider than it.
    """
    cfg = cfg or DEFAULT_CONFIG
    if math.isinf(r):
        if rho_max is None:
            rho_max = rho_scale * (50.0 if F.decay == "exponential" else 1000.0)
        return _sup_norm(F, rho_max)
    if r < 1:
        raise DomainError("r must be >= 1")
    if F.decay != "exponential" and F.decay_power * r <= d:
        raise DivergenceError("|F|^r is not integrable against rho^(d-1)")
    x, w = leggauss(20)

    def panel(lo, hi):
        xs = lo + (hi - lo) * (x + 1) / 2
        vals = np.abs(F(xs))
        return float(np.dot(w, xs ** (d - 1) * vals**r)) * (hi - lo) / 2, float(vals[-1]), xs[-1]

    total = 0.0
    lo = 0.0
    width = rho_scale / 8
    quiet = 0
    for _ in range(cfg.max_panels):
        hi = lo + width
        piece, last_val, last_x = panel(lo, hi)
        total += piece
        lo = hi
        width = min(width * 1.25, rho_scale) if lo >= rho_scale else width
        if F.decay == "exponential":
            quiet = quiet + 1 if piece <= 1e-17 * max(total, 1e-300) else 0
            if quiet >= 4:
                break
        else:
            p = F.decay_power
            tail = last_val**r * last_x**d / (p * r - d)
            if tail <= cfg.rel_tol * 1e-2 * max(total, 1e-300) and lo > 10 * rho_scale:
                total += tail
                break
            if lo > 20 * rho_scale:
                width = max(width, 0.25 * lo)
    else:
        raise ToleranceError("L^r norm integration did not reach its tail")
    return (sphere_area(d) * total) ** (1.0 / r)


def macdonald_l1_admissible(mu: float, sigma: float, d: int) -> bool:
    return abs(mu) + sigma < d


def macdonald_l2_admissible(mu: float, sigma: float, d: int) -> bool:
    return 2 * (abs(mu) + sigma) < d


def macdonald_transform(mu: float, sigma: float, d: int, rho):
    """Closed-form Hankel transform of K_mu(xi)/xi^sigma in dimension d."""
    if not macdonald_l1_admissible(mu, sigma, d):
        raise DomainError("Macdonald transform needs |mu| + sigma < d")
    mu = abs(mu)
    p = d / 2 + mu / 2 - sigma / 2
    q = d / 2 - mu / 2 - sigma / 2
    pref = gamma_real(p) * gamma_real(q) / (2 ** (sigma + 1 - d / 2) * gamma_real(d / 2))
    rho = np.asarray(rho, dtype=float)
    if mu == sigma:
        out = 2 ** (d / 2 - mu - 1) * gamma_real(d / 2 - mu) / (1 + rho**2) ** (d / 2 - mu)
    else:
        out = pref * hyp2f1_neg(p, q, d / 2, rho**2)
    out = np.asarray(out, dtype=float)
    return out[()] if out.ndim == 0 else out
