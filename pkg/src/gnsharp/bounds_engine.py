"""Sharp constants and two-sided bounds for the L^2 Gagliardo-Nirenberg and Sobolev inequalities.

With ||.|| the L^2 norm and D^s the Fourier multiplier |k|^s on R^d:

    Gagliardo-Nirenberg:  ||D^j f||_r <= G ||f||^(1-theta) ||D^n f||^theta
    Sobolev:              ||D^j f||_r <= S (||f||^2 + ||D^n f||^2)^(1/2)

where 1/r = 1/2 - (theta n - j)/d. For n > 0 the two constants are related
by S = sqrt((1-theta)^(1-theta) theta^theta) G, so every S value below is
that factor times the matching G value.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import optimize
from scipy import special as sp

from . import maximizer_profiles as mp
from .config import DEFAULT_CONFIG, QuadratureConfig
from .errors import DomainError, NumericalError, ParameterError, RegimeError
from .radial_ops import (RadialProfile, RadialRule, hankel_inverse_ft, lr_norm_radial, lr_norm_samples,
                         radial_integral, sphere_area)
from .special_kernel import gamma_real

FLOAT_TOL = 1e-12
INF = math.inf


def _num(x):
    if isinstance(x, Rational):
        return Fraction(x)
    x = float(x)
    if not math.isfinite(x):
        raise ParameterError(f"parameters must be finite, got {x}")
    return x


def _theta_linf(j, n, d: int):
    if isinstance(j, Fraction) and isinstance(n, Fraction):
        return j / n + Fraction(d, 2) / n
    return float(j) / float(n) + d / (2 * float(n))


def _eq(x, y) -> bool:
    """Exact on rationals, 1e-12 tolerance otherwise."""
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    return abs(float(x) - float(y)) <= FLOAT_TOL


def _le(x, y) -> bool:
    return x <= y or _eq(x, y)


def _lt(x, y) -> bool:
    return x < y and not _eq(x, y)


def power00(base: float, expo: float) -> float:
    """base**expo with 0^0 = 1."""
    return 1.0 if expo == 0 else float(base) ** float(expo)


def gn_sobolev_factor(theta, t=2) -> float:
    """[(1-theta)^(1-theta) theta^theta]^(1/t); equals 1 for t = inf."""
    theta = float(theta)
    if not 0 <= theta <= 1:
        raise DomainError("theta must lie in [0, 1]")
    if t < 1:
        raise DomainError("t must be >= 1")
    if math.isinf(t):
        return 1.0
    return (power00(1 - theta, 1 - theta) * power00(theta, theta)) ** (1.0 / t)


@dataclass(frozen=True)
class GnsParams:
    """Dimension d, derivative orders j <= n, interpolation exponent theta."""

    d: int
    j: object
    n: object
    theta: object
    t: float = 2

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ParameterError(f"dimension must be a positive integer, got {self.d}")
        object.__setattr__(self, "d", int(self.d))
        for name in ("j", "n", "theta"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        j, n, theta, d = self.j, self.n, self.theta, self.d
        if j < 0 or n < 0:
            raise ParameterError("j and n must be nonnegative")
        if not (_le(0, theta) and _le(theta, 1)):
            raise ParameterError(f"violated 0 <= theta <= 1 (theta = {theta})")
        s = self.excess
        if not _le(0, s):
            raise ParameterError(f"violated theta*n - j >= 0 (theta*n - j = {s})")
        if not _le(s, Fraction(d, 2)):
            raise ParameterError(f"violated theta*n - j <= d/2 (theta*n - j = {s}, d/2 = {d / 2})")
        if _eq(theta, 1) and _eq(n, j + Fraction(d, 2)):
            raise ParameterError("violated theta != 1 when n = j + d/2")

    @property
    def excess(self):
        """theta*n - j."""
        return self.theta * self.n - self.j

    @property
    def r(self):
        """Exponent r with 1/r = 1/2 - (theta n - j)/d; inf at the sup-norm endpoint."""
        inv = Fraction(1, 2) - self.excess / self.d
        if _eq(inv, 0):
            return INF
        return 1 / inv

    @property
    def theta_linf(self):
        """j/n + d/(2n), the theta of the sup-norm case (None for n = 0)."""
        return None if self.n == 0 else _theta_linf(self.j, self.n, self.d)

    def floats(self):
        return self.d, float(self.j), float(self.n), float(self.theta)


class RegimeKind(enum.Enum):
    HOLDER = "holder"
    THETA_ONE = "theta_one"
    LINFINITY = "linfinity"
    GENERAL = "general"


@dataclass(frozen=True)
class Regime:
    kind: RegimeKind
    plus: bool
    plusplus: bool
    minusminus: bool
    r: object


def classify(params: GnsParams) -> Regime:
    """Primary regime plus the applicability flags of each bound family."""
    j, n, theta, d = params.j, params.n, params.theta, params.d
    s = params.excess
    half_d = Fraction(d, 2)
    if _eq(s, 0):
        kind = RegimeKind.HOLDER
    elif _eq(theta, 1):
        kind = RegimeKind.THETA_ONE
    elif _eq(s, half_d):
        kind = RegimeKind.LINFINITY
    else:
        kind = RegimeKind.GENERAL
    plus = _lt(s, half_d)
    plusplus = _lt(theta, 1)
    minusminus = False
    if n > 0 and _le(j, n):
        tl = params.theta_linf
        minusminus = _lt(tl, 1) and _le(j / n, theta) and _le(theta, tl)
    return Regime(kind, plus, plusplus, minusminus, params.r)


def _params(j, n, theta, d) -> GnsParams:
    return GnsParams(d, j, n, theta)


# ---------------------------------------------------------------- exact values

def sharp_holder(params: GnsParams):
    """(G, S) when j = theta n."""
    if not _eq(params.excess, 0):
        raise RegimeError("the Holder case needs j = theta n")
    if params.n == 0:
        return 1.0, 1 / math.sqrt(2)
    return 1.0, gn_sobolev_factor(params.theta)


def _theta1_constant(s: float, d: int) -> float:
    """(4 pi)^(-s/2) sqrt(Gamma(d/2 - s)/Gamma(d/2 + s)) (Gamma(d)/Gamma(d/2))^(s/d)."""
    if s == 0:
        return 1.0
    log = (-s / 2 * math.log(4 * math.pi)
           + 0.5 * (math.lgamma(d / 2 - s) - math.lgamma(d / 2 + s))
           + s / d * (math.lgamma(d) - math.lgamma(d / 2)))
    return math.exp(log)


def sharp_theta1(j, n, d: int) -> float:
    """Sharp constant of the theta = 1 inequality (G and S coincide for n > 0)."""
    j, n = float(j), float(n)
    if not (0 <= j <= n < j + d / 2):
        raise DomainError(f"theta = 1 needs 0 <= j <= n < j + d/2, got j={j}, n={n}, d={d}")
    return _theta1_constant(n - j, d)


def sharp_linf(j, n, d: int):
    """(theta, S, G) for the sup-norm case r = inf."""
    j, n = _num(j), _num(n)
    if not n > 0 or j < 0:
        raise RegimeError("the sup-norm case needs n > 0 and j >= 0")
    theta = _theta_linf(j, n, d)
    if not _lt(theta, 1):
        raise RegimeError(f"the sup-norm case needs j/n + d/(2n) < 1, got {float(theta)}")
    th = float(theta)
    S = 1 / (2 ** (d / 2) * math.pi ** (d / 4 - 0.5) * math.sqrt(gamma_real(d / 2) * float(n) * math.sin(math.pi * th)))
    return theta, S, S / gn_sobolev_factor(th)


def optimal_lambda(theta, t, norm_l2: float, norm_dn: float, d: int, p, q, n) -> float:
    """Rescaling turning a Gagliardo-Nirenberg maximizer into a Sobolev maximizer."""
    theta = float(theta)
    expo = d / float(p) - d / float(q) + float(n)
    if expo == 0:
        raise DomainError("d/p - d/q + n must be nonzero")
    if theta <= 0 or theta >= 1:
        if math.isinf(t):
            return (norm_l2 / norm_dn) ** (1 / expo)
        raise DomainError("limit case: the optimal scale tends to 0 or infinity for theta in {0, 1}")
    return ((theta / (1 - theta)) ** (1 / t) * norm_l2 / norm_dn) ** (1 / expo)


# ---------------------------------------------------------------- upper bounds

def upper_plus(j, n, theta, d: int):
    """(G_plus, S_plus), valid when theta n - j < d/2."""
    p = _params(j, n, theta, d)
    if not classify(p).plus:
        raise RegimeError("upper bound G_plus needs theta n - j < d/2")
    if p.n == 0:
        return 1.0, 1 / math.sqrt(2)
    g = _theta1_constant(float(p.excess), d)
    return g, gn_sobolev_factor(p.theta) * g


def _f_factor(j: float, n: float, theta: float, d: int) -> float:
    s = theta * n - j
    if s == 0:
        return gn_sobolev_factor(theta)
    log = (math.lgamma(d * (1 - theta) / (2 * s)) + math.lgamma(d * theta / (2 * s))
           - math.log(n) - math.lgamma(d / 2) - math.lgamma(d / (2 * s)))
    return math.exp(s / d * log)


def upper_plusplus(j, n, theta, d: int):
    """(S_plusplus, G_plusplus), valid when theta < 1."""
    p = _params(j, n, theta, d)
    if not classify(p).plusplus:
        raise RegimeError("upper bound G_plusplus needs theta < 1")
    if p.n == 0:
        return 1 / math.sqrt(2), 1.0
    _, jf, nf, th = p.floats()
    s = 0.0 if _eq(p.excess, 0) else float(p.excess)
    x = 2 * s / d
    E = power00(1 - x, d / 4 - s / 2) / power00(1 + x, d / 4 + s / 2)
    S = E * _f_factor(jf, nf, th, d) / math.pi ** (s / 2)
    return S, S / gn_sobolev_factor(th)


# ---------------------------------------------------------------- lower bounds

def _trial_norms(j, n, d, eps):
    """L^2 norms of the trial profile and of |k|^n times it, for each eps."""
    mu = n - j
    rule = RadialRule.geometric(1e-12, 80.0)
    xi = rule.nodes
    k2 = (xi**mu * sp.kv(mu, xi)) ** 2
    den = (xi[None, :] ** 2 + eps[:, None] ** 2) ** (2 * n - j)
    cd = sphere_area(d)
    U = np.sqrt(cd * ((rule.weights * xi ** (d - 1) * k2)[None, :] / den).sum(axis=1))
    V = np.sqrt(cd * ((rule.weights * xi ** (2 * n + d - 1) * k2)[None, :] / den).sum(axis=1))
    return U, V


def lower_minus_curve(j, n, theta, d: int, eps, cfg: QuadratureConfig | None = None) -> np.ndarray:
    """Trial quotient ||D^j h_eps||_r / (||h_eps||^(1-theta) ||D^n h_eps||^theta) for each eps."""
    cfg = cfg or DEFAULT_CONFIG
    p = _params(j, n, theta, d)
    _, jf, nf, th = p.floats()
    eps = np.atleast_1d(np.asarray(eps, dtype=float))
    U, V = _trial_norms(jf, nf, d, eps)
    r = p.r
    if math.isinf(r):
        # the trial data are positive, so the sup sits at the origin
        Y = np.abs(mp.m_profile_grid(jf, nf, eps, d, [0.0], cfg)[0])
    else:
        rule = RadialRule.log_panels(0.5, cfg.rho_max)
        M = mp.m_profile_grid(jf, nf, eps, d, rule.nodes, cfg)
        Y = lr_norm_samples(M, rule.nodes, rule.weights, float(r), d)
    return Y / (U ** (1 - th) * V**th)


def lower_minus(j, n, theta, d: int, cfg: QuadratureConfig | None = None, eps_grid=None):
    """(G_minus, best_eps, S_minus): best trial quotient over the eps grid."""
    cfg = cfg or DEFAULT_CONFIG
    p = _params(j, n, theta, d)
    if p.n == 0:
        return 1.0, None, 1 / math.sqrt(2)
    eps = cfg.eps_grid() if eps_grid is None else np.asarray(eps_grid, dtype=float)
    curve = lower_minus_curve(j, n, theta, d, eps, cfg)
    k = int(np.argmax(curve))  # first maximum: ties go to the smaller eps
    g, best = float(curve[k]), float(eps[k])
    if cfg.refine_eps and eps.size > 1:
        lo, hi = eps[max(k - 1, 0)], eps[min(k + 1, eps.size - 1)]
        lo = max(lo, mp.MIN_EPS)
        res = optimize.minimize_scalar(lambda e: -float(lower_minus_curve(j, n, theta, d, [e], cfg)[0]),
                                       bounds=(lo, hi), method="bounded", options={"xatol": 1e-6})
        if -res.fun > g:
            g, best = float(-res.fun), float(res.x)
    return g, best, gn_sobolev_factor(p.theta) * g


def _log_span_rule(lo: float, hi: float, width: float = 0.2):
    x, w = leggauss(20)
    edges = np.arange(math.log(lo), math.log(hi) + 1e-12, width)
    if edges[-1] < math.log(hi):
        edges = np.append(edges, math.log(hi))
    a, b = edges[:-1, None], edges[1:, None]
    u = (a + (b - a) * (x[None, :] + 1) / 2).ravel()
    wu = ((b - a) * w[None, :] / 2).ravel()
    return np.exp(u), wu * np.exp(u)


def _profile_lr_norm(evalf, r: float, d: int, hi0: float, max_hi: float = 1e6) -> float:
    """L^r norm of a tabulated radial profile, extending the range until the tail is negligible."""
    rule = RadialRule.log_panels(1.0, hi0)
    total = float(np.sum(rule.weights * rule.nodes ** (d - 1) * np.abs(evalf(rule.nodes)) ** r))
    lo = hi0
    while lo < max_hi:
        nodes, wts = _log_span_rule(lo, 4 * lo)
        extra = float(np.sum(wts * nodes ** (d - 1) * np.abs(evalf(nodes)) ** r))
        total += extra
        lo *= 4
        if extra <= 1e-14 * total:
            break
    else:
        raise NumericalError("L^r norm tail did not become negligible")
    return (sphere_area(d) * total) ** (1 / r)


def i_norm(j, n, theta, d: int, cfg: QuadratureConfig | None = None) -> float:
    """||L_jn||_r, closed form at the sup-norm endpoint."""
    p = _params(j, n, theta, d)
    _, jf, nf, _ = p.floats()
    tl = float(p.theta_linf)
    r = p.r
    if math.isinf(r):
        return math.pi / (2 ** (d / 2) * gamma_real(d / 2) * nf * math.sin(math.pi * tl))
    hi0 = 64.0 / math.sin(math.pi / (2 * nf)) if nf > 1 else 64.0
    return _profile_lr_norm(lambda rho: mp.l_profile(p.j, p.n, d, rho, cfg=cfg), float(r), d, hi0)


def lower_minusminus(j, n, theta, d: int, cfg: QuadratureConfig | None = None):
    """(S_minusminus, G_minusminus), valid for j/n <= theta <= j/n + d/(2n) < 1."""
    p = _params(j, n, theta, d)
    if not classify(p).minusminus:
        raise RegimeError("lower bound G_minusminus needs n > 0 and j/n <= theta <= j/n + d/(2n) < 1")
    _, jf, nf, th = p.floats()
    tl = float(p.theta_linf)
    I = i_norm(j, n, theta, d, cfg)
    ratio = (gamma_real(d / 2) * nf * math.sin(math.pi * tl) * power00(1 - th, 1 - th) * power00(th, th)
             / (power00(1 - tl, 1 - th) * power00(tl, th)))
    S = I / math.pi ** (d / 4 + 0.5) * math.sqrt(ratio)
    return S, S / gn_sobolev_factor(th)


# ---------------------------------------------------------------- auxiliary constants

def ab_helpers(j, n, d: int):
    """(A, B): squared L^2 norms of the sup-norm maximizer and of its n-th derivative."""
    j, n = float(j), float(n)
    if not n > 0:
        raise DomainError("n must be positive")
    tl = j / n + d / (2 * n)
    if not 0 < tl < 1:
        raise DomainError("A and B need j/n + d/(2n) < 1")
    den = gamma_real(d / 2) * n * math.sin(math.pi * tl)
    return math.pi ** (d / 2 + 1) * (1 - tl) / den, math.pi ** (d / 2 + 1) * tl / den


def riesz_constant(n, d: int) -> float:
    """Z_n = Gamma(d/2 - n/2) / (2^n pi^(d/2) Gamma(n/2)), 0 < n < d."""
    n = float(n)
    if not 0 < n < d:
        raise DomainError("Riesz constant needs 0 < n < d")
    return gamma_real(d / 2 - n / 2) / (2**n * math.pi ** (d / 2) * gamma_real(n / 2))


def hls_constant(n, d: int) -> float:
    """Sharp Hardy-Littlewood-Sobolev constant N_n, 0 < n < d/2."""
    n = float(n)
    if not 0 < n < d / 2:
        raise DomainError("HLS constant needs 0 < n < d/2")
    return (math.pi ** ((d - n) / 2) * gamma_real(n / 2) / gamma_real(d / 2 - n / 2)
            * math.sqrt(gamma_real(d / 2 - n) / gamma_real(d / 2 + n))
            * (gamma_real(d) / gamma_real(d / 2)) ** (n / d))


def hausdorff_young_constant(p, d: int) -> float:
    """Sharp constant of ||F f||_p' <= C_p ||f||_p for the unitary transform, 1 <= p <= 2."""
    p = float(p)
    if not 1 <= p <= 2:
        raise DomainError("Hausdorff-Young needs 1 <= p <= 2")
    inv_p = 1 / p
    inv_pp = 1 - inv_p
    ratio = power00(inv_pp, inv_pp) / power00(inv_p, inv_p)
    return (2 * math.pi) ** (-(d * inv_p - d / 2)) * ratio ** (d / 2)


# ---------------------------------------------------------------- envelope

@dataclass
class BoundsReport:
    params: GnsParams
    regime: Regime
    exact_g: float | None = None
    exact_s: float | None = None
    exact_reason: str | None = None
    g_plus: float | None = None
    s_plus: float | None = None
    g_plusplus: float | None = None
    s_plusplus: float | None = None
    g_minus: float | None = None
    s_minus: float | None = None
    best_eps: float | None = None
    g_minusminus: float | None = None
    s_minusminus: float | None = None
    best_lower_g: float = field(default=0.0)
    best_upper_g: float = field(default=INF)
    best_lower_s: float = field(default=0.0)
    best_upper_s: float = field(default=INF)

    def best_lower_source(self) -> str | None:
        cands = [(v, k) for k, v in (("g_minus", self.g_minus), ("g_minusminus", self.g_minusminus)) if v is not None]
        return max(cands)[1] if cands else None

    def best_upper_source(self) -> str | None:
        cands = [(v, k) for k, v in (("g_plus", self.g_plus), ("g_plusplus", self.g_plusplus)) if v is not None]
        return min(cands)[1] if cands else None

    def as_dict(self) -> dict:
        out = asdict(self)
        out["regime"] = {"kind": self.regime.kind.value, "plus": self.regime.plus,
                         "plusplus": self.regime.plusplus, "minusminus": self.regime.minusminus}
        return out


def best_bounds(params: GnsParams, cfg: QuadratureConfig | None = None, with_minus: bool = True) -> BoundsReport:
    """Every applicable bound, exact values where known, and the best envelope."""
    cfg = cfg or DEFAULT_CONFIG
    reg = classify(params)
    d, j, n, theta = params.d, params.j, params.n, params.theta
    rep = BoundsReport(params=params, regime=reg)
    factor = 1 / math.sqrt(2) if n == 0 else gn_sobolev_factor(theta)
    if reg.kind is RegimeKind.HOLDER:
        rep.exact_g, rep.exact_s = sharp_holder(params)
        rep.exact_reason = "holder"
    elif reg.kind is RegimeKind.THETA_ONE:
        rep.exact_g = rep.exact_s = sharp_theta1(j, n, d)
        rep.exact_reason = "theta_one"
    elif reg.kind is RegimeKind.LINFINITY:
        _, rep.exact_s, rep.exact_g = sharp_linf(j, n, d)
        rep.exact_reason = "linfinity"
    if reg.plus:
        rep.g_plus, rep.s_plus = upper_plus(j, n, theta, d)
    if reg.plusplus:
        rep.s_plusplus, rep.g_plusplus = upper_plusplus(j, n, theta, d)
    if reg.minusminus:
        rep.s_minusminus, rep.g_minusminus = lower_minusminus(j, n, theta, d, cfg)
    if with_minus and rep.exact_g is None:
        rep.g_minus, rep.best_eps, rep.s_minus = lower_minus(j, n, theta, d, cfg)
    lowers = [v for v in (rep.g_minus, rep.g_minusminus, rep.exact_g) if v is not None]
    uppers = [v for v in (rep.g_plus, rep.g_plusplus, rep.exact_g) if v is not None]
    rep.best_lower_g = max(lowers) if lowers else 0.0
    rep.best_upper_g = min(uppers) if uppers else INF
    if rep.exact_g is not None:
        # bounds that touch the exact value differ from it only by rounding
        rep.best_lower_g = rep.best_upper_g = rep.exact_g
    rep.best_lower_s = factor * rep.best_lower_g if n != 0 else (rep.exact_s or 0.0)
    rep.best_upper_s = factor * rep.best_upper_g if n != 0 else (rep.exact_s or INF)
    if rep.best_lower_g > rep.best_upper_g * (1 + 1e-9):
        raise NumericalError(f"lower bound {rep.best_lower_g} exceeds upper bound {rep.best_upper_g}")
    return rep


# ---------------------------------------------------------------- trial quotients

def _scaled(h: RadialProfile, power: float, square: bool) -> RadialProfile:
    """xi^power h(xi) (or xi^power h(xi)^2) with the decay class carried along."""
    if square:
        ev = lambda x: x**power * h(x) ** 2
        decay_power = 2 * h.decay_power - power
    else:
        ev = lambda x: x**power * h(x)
        decay_power = h.decay_power - power
    if h.decay == "exponential":
        return RadialProfile(ev)
    return RadialProfile(ev, decay=h.decay, decay_power=decay_power)


def _dj_norm(h: RadialProfile, params: GnsParams, cfg: QuadratureConfig, rho_scale: float) -> float:
    d, jf = params.d, float(params.j)
    r = params.r
    if r == 2:
        return math.sqrt(radial_integral(_scaled(h, 2 * jf, True), d, cfg))
    dj = _scaled(h, jf, False)
    if math.isinf(r) and h.nonnegative:
        return abs(hankel_inverse_ft(dj, d, 0.0, cfg))
    F = RadialProfile(lambda rho: np.array([hankel_inverse_ft(dj, d, float(x), cfg) for x in np.ravel(rho)]))
    return lr_norm_radial(F, float(r), d, cfg, rho_scale=rho_scale)


def rayleigh_quotients(h: RadialProfile, params: GnsParams, cfg: QuadratureConfig | None = None,
                       rho_scale: float = 1.0):
    """(Gagliardo-Nirenberg quotient, Sobolev quotient) of the function with radial Fourier profile h.

    Both are lower bounds for the respective sharp constants. `h.nonnegative`
    marks a nonnegative profile, whose derivative images peak at the origin.
    """
    cfg = cfg or DEFAULT_CONFIG
    d, nf, th = params.d, float(params.n), float(params.theta)
    l2 = math.sqrt(radial_integral(_scaled(h, 0.0, True), d, cfg))
    dn = math.sqrt(radial_integral(_scaled(h, 2 * nf, True), d, cfg))
    top = _dj_norm(h, params, cfg, rho_scale)
    return top / (l2 ** (1 - th) * dn**th), top / math.sqrt(l2**2 + dn**2)


def linf_maximizer_fourier(j, n, d: int) -> RadialProfile:
    """Fourier profile xi^j/(1 + xi^(2n)) of the sup-norm maximizer."""
    jf, nf = float(j), float(n)
    return RadialProfile(lambda x: x**jf / (1 + x ** (2 * nf)), decay="algebraic",
                         decay_power=2 * nf - jf, nonnegative=True)


def delta_shell_quotient(params: GnsParams, eps: float, order: int = 40) -> float:
    """Quotient of a Fourier datum spread uniformly over the ball of radius eps about a unit vector.

    In the Holder case this tends to the sharp value 1 as eps -> 0.
    """
    if not _eq(params.excess, 0):
        raise RegimeError("the delta-shell family targets the Holder case j = theta n")
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    d, jf, nf, th = params.floats()
    x, w = leggauss(order)
    if d == 1:
        k = 1 + eps * x
        avg = lambda power: float(np.dot(w, np.abs(k) ** power)) / 2
    else:
        # radius s in [0, eps] with weight s^(d-1); cosine u with weight (1-u^2)^((d-3)/2)
        s = eps * (x + 1) / 2
        ws = w * eps / 2 * s ** (d - 1)
        u, wu = sp.roots_jacobi(order, (d - 3) / 2, (d - 3) / 2)
        k2 = 1 + 2 * s[:, None] * u[None, :] + s[:, None] ** 2
        weight = ws[:, None] * wu[None, :]
        total = weight.sum()
        avg = lambda power: float((weight * k2 ** (power / 2)).sum() / total)
    num = math.sqrt(avg(2 * jf))
    return num / math.sqrt(avg(2 * nf)) ** th
