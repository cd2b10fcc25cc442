"""Fox H and Meijer G functions by direct vertical-contour integration.

The Mellin-Barnes integrand is

    z^s prod Gamma(1 - a + A s) prod Gamma(b - B s)
        / (prod Gamma(a* - A* s) prod Gamma(1 - b* + B* s))

integrated along Re s = c, with c between the left poles (from the
Gamma(1 - a + A s) factors) and the right poles (from Gamma(b - B s)).
For z > 0 and real parameters the integrand is conjugate symmetric, so
H(z) = (1/pi) int_0^inf Re phi(c + i t) dt.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import special as sp

from .config import DEFAULT_CONFIG, QuadratureConfig
from .errors import DivergenceError, DomainError, InseparablePolesError, ParameterError, ToleranceError
from .special_kernel import log_gamma_vertical

_SCAN_STEP = 0.25
_GROUP_WIDTH = 4.0
_GL_LOW, _GL_HIGH = leggauss(20), leggauss(30)


def _pairs(seq) -> tuple:
    out = []
    for item in seq:
        p, s = item
        if not s > 0:
            raise ParameterError(f"scale factor must be positive, got {s}")
        out.append((p, s))
    return tuple(out)


@dataclass(frozen=True)
class HFunctionSpec:
    """Parameter groups of a Fox H function.

    upper_left  (a, A):   Gamma(1 - a + A s) in the numerator
    upper_right (a*, A*): Gamma(a* - A* s) in the denominator
    lower_left  (b, B):   Gamma(b - B s) in the numerator
    lower_right (b*, B*): Gamma(1 - b* + B* s) in the denominator
    """

    upper_left: tuple = ()
    upper_right: tuple = ()
    lower_left: tuple = ()
    lower_right: tuple = ()

    def __post_init__(self):
        for name in ("upper_left", "upper_right", "lower_left", "lower_right"):
            object.__setattr__(self, name, _pairs(getattr(self, name)))


@dataclass(frozen=True)
class GFunctionSpec:
    """Meijer G parameters: the H layout with every scale factor equal to 1."""

    a: tuple = ()
    a_star: tuple = ()
    b: tuple = ()
    b_star: tuple = ()

    def __post_init__(self):
        for name in ("a", "a_star", "b", "b_star"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    def to_h(self) -> HFunctionSpec:
        return HFunctionSpec(
            upper_left=[(x, 1) for x in self.a],
            upper_right=[(x, 1) for x in self.a_star],
            lower_left=[(x, 1) for x in self.b],
            lower_right=[(x, 1) for x in self.b_star],
        )


def left_poles(spec: HFunctionSpec, count: int) -> list:
    """The `count` rightmost poles of the Gamma(1 - a + A s) factors."""
    cands = [(-1 + float(a) - k) / float(A) for a, A in spec.upper_left for k in range(count)]
    return sorted(cands, reverse=True)[:count]


def right_poles(spec: HFunctionSpec, count: int) -> list:
    """The `count` leftmost poles of the Gamma(b - B s) factors."""
    cands = [(float(b) + k) / float(B) for b, B in spec.lower_left for k in range(count)]
    return sorted(cands)[:count]


def alpha(spec: HFunctionSpec) -> float:
    """Decay exponent: sum A - sum A* + sum B - sum B*."""
    return float(
        sum(A for _, A in spec.upper_left)
        - sum(A for _, A in spec.upper_right)
        + sum(B for _, B in spec.lower_left)
        - sum(B for _, B in spec.lower_right)
    )


def choose_contour(spec: HFunctionSpec) -> float:
    """Abscissa midway between the rightmost left pole and the leftmost right pole."""
    lmax, rmin = _strip(spec)
    if lmax is None and rmin is None:
        return 0.0
    if lmax is None:
        return rmin - 0.5
    if rmin is None:
        return lmax + 0.5
    if lmax >= rmin:
        raise InseparablePolesError(f"left pole {lmax} is not left of right pole {rmin}")
    return 0.5 * (lmax + rmin)


def log_integrand(spec: HFunctionSpec, s):
    """log of the Gamma ratio (without z^s) at complex points s."""
    s = np.asarray(s, dtype=complex)
    out = np.zeros_like(s)
    for a, A in spec.upper_left:
        out += log_gamma_vertical(1 - float(a) + float(A) * s)
    for b, B in spec.lower_left:
        out += log_gamma_vertical(float(b) - float(B) * s)
    for a, A in spec.upper_right:
        out -= log_gamma_vertical(float(a) - float(A) * s)
    for b, B in spec.lower_right:
        out -= log_gamma_vertical(1 - float(b) + float(B) * s)
    return out


def _scan(spec, c, tol, max_height):
    """Truncation height and peak phase rate from a coarse scan of the line."""
    t = np.arange(_SCAN_STEP, max_height + _SCAN_STEP, _SCAN_STEP)
    lg = log_integrand(spec, c + 1j * t)
    mag = lg.real
    peak = max(mag.max(), log_integrand(spec, np.array([c + 1e-9j]))[0].real)
    thr = peak + math.log(tol) - math.log(10.0)
    above = np.nonzero(mag > thr)[0]
    if above.size and above[-1] >= t.size - 2:
        raise ToleranceError(f"integrand not negligible below height {max_height}")
    height = (t[above[-1]] if above.size else 0.0) + 1.0
    keep = t <= height
    rate = np.max(np.abs(np.diff(lg.imag[keep]))) / _SCAN_STEP if keep.sum() > 1 else 1.0
    return height, rate


def _panels(height, width, rule):
    x, w = rule
    count = max(1, int(math.ceil(height / width)))
    edges = np.linspace(0.0, height, count + 1)
    lo, hi = edges[:-1, None], edges[1:, None]
    nodes = (lo + (hi - lo) * (x[None, :] + 1) / 2).ravel()
    wts = ((hi - lo) * w[None, :] / 2).ravel()
    return nodes, wts


def _half_line(spec, c, lnz, nodes, wts):
    s = c + 1j * nodes
    lg = log_integrand(spec, s)
    out = np.empty(lnz.size)
    scale = np.empty(lnz.size)
    for start in range(0, lnz.size, 32):
        block = lnz[start:start + 32, None]
        vals = np.exp(lg[None, :] + s[None, :] * block)
        out[start:start + 32] = (vals.real @ wts) / math.pi
        scale[start:start + 32] = (np.abs(vals) @ wts) / math.pi
    return out, scale


def _zero_value(spec: HFunctionSpec) -> float:
    """Limit z -> 0+ from the residue at the leftmost right pole."""
    if not spec.lower_left:
        raise DivergenceError("no right poles: the z -> 0 limit is not determined")
    p0 = min(float(b) / float(B) for b, B in spec.lower_left)
    if p0 > 0:
        return 0.0
    if p0 < 0:
        raise DivergenceError("H diverges as z -> 0 (negative right pole)")
    at_zero = [k for k, (b, _) in enumerate(spec.lower_left) if float(b) == 0.0]
    if len(at_zero) > 1:
        raise DivergenceError("multiple pole at s = 0: logarithmic divergence as z -> 0")
    k0 = at_zero[0]
    val = 1.0 / float(spec.lower_left[k0][1])
    for a, _ in spec.upper_left:
        val *= sp.gamma(1 - float(a))
    for k, (b, _) in enumerate(spec.lower_left):
        if k != k0:
            val *= sp.gamma(float(b))
    for a, _ in spec.upper_right:
        val *= sp.rgamma(float(a))
    for b, _ in spec.lower_right:
        val *= sp.rgamma(1 - float(b))
    return float(val)


def _strip(spec: HFunctionSpec):
    lmax = max(((-1 + float(a)) / float(A) for a, A in spec.upper_left), default=None)
    rmin = min((float(b) / float(B) for b, B in spec.lower_left), default=None)
    return lmax, rmin


def _candidate_contours(spec: HFunctionSpec) -> np.ndarray:
    lmax, rmin = _strip(spec)
    if lmax is not None and rmin is not None:
        if lmax >= rmin:
            raise InseparablePolesError(f"left pole {lmax} is not left of right pole {rmin}")
        return lmax + (rmin - lmax) * np.linspace(0.05, 0.95, 19)
    offsets = np.concatenate([np.linspace(0.05, 0.95, 10), np.linspace(1.5, 6.0, 10)])
    if lmax is None and rmin is None:
        return np.concatenate([-offsets[::-1], [0.0], offsets])
    return rmin - offsets if lmax is None else lmax + offsets


def best_contour(spec: HFunctionSpec, lnz_lo: float, lnz_hi: float) -> float:
    """Abscissa minimizing the peak of |z^s phi(s)| over z in [e^lnz_lo, e^lnz_hi].

    The midpoint contour is fine for z near 1, but for very small or large z
    the factor z^c dominates and the line integral cancels catastrophically.
    """
    t = np.arange(0.0, 60.0 + _SCAN_STEP, _SCAN_STEP)
    t[0] = 1e-9
    best, best_c = math.inf, None
    for c in _candidate_contours(spec):
        peak = float(np.max(log_integrand(spec, c + 1j * t).real)) + max(c * lnz_lo, c * lnz_hi)
        if peak < best:
            best, best_c = peak, float(c)
    return best_c


def _line_value(spec, c, lnz, tol, cfg):
    height, rate = _scan(spec, c, tol, cfg.mb_max_height)
    omega = rate + np.max(np.abs(lnz)) + 1.0
    width = min(1.0, 8.0 / omega)
    for _ in range(6):
        n1, w1 = _panels(height, width, _GL_LOW)
        n2, w2 = _panels(height, width, _GL_HIGH)
        v1, _ = _half_line(spec, c, lnz, n1, w1)
        v2, scale = _half_line(spec, c, lnz, n2, w2)
        if np.all(np.abs(v1 - v2) <= tol * np.maximum(scale, 1e-300) + 1e-300):
            return v2
        width /= 2
    raise ToleranceError("contour quadrature did not converge")


def eval_h(spec: HFunctionSpec, z, cfg: QuadratureConfig | None = None, c: float | None = None,
           tol: float | None = None):
    """Fox H function at z >= 0 (scalar or array).

    Without an explicit abscissa c, arguments are grouped by log-magnitude
    and each group gets the contour from best_contour.
    """
    cfg = cfg or DEFAULT_CONFIG
    tol = tol or cfg.mb_tol
    if alpha(spec) <= 0:
        raise ParameterError("decay exponent alpha must be positive")
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise DomainError("H is evaluated for z >= 0 only")
    flat = z.ravel()
    out = np.empty(flat.size)
    pos = flat > 0
    if np.any(~pos):
        out[~pos] = _zero_value(spec)
    if np.any(pos):
        idx = np.nonzero(pos)[0]
        lnz = np.log(flat[idx])
        if c is not None:
            out[idx] = _line_value(spec, c, lnz, tol, cfg)
        else:
            bins = np.floor(lnz / _GROUP_WIDTH).astype(int)
            for key in np.unique(bins):
                sel = bins == key
                group = lnz[sel]
                cg = best_contour(spec, float(group.min()), float(group.max()))
                out[idx[sel]] = _line_value(spec, cg, group, tol, cfg)
    out = out.reshape(z.shape)
    return out[()] if out.ndim == 0 else out


def contour_integral(spec: HFunctionSpec, z: float, tol: float = 1e-13, c: float | None = None,
                     max_height: float = 400.0) -> complex:
    """Raw (1/2 pi i) line integral over [-T, T], imaginary part kept."""
    if z <= 0:
        raise DomainError("raw contour integral needs z > 0")
    if c is None:
        c = choose_contour(spec)
    height, rate = _scan(spec, c, tol, max_height)
    width = min(1.0, 8.0 / (rate + abs(math.log(z)) + 1.0))
    nodes, wts = _panels(height, width, _GL_HIGH)
    t = np.concatenate([-nodes[::-1], nodes])
    w = np.concatenate([wts[::-1], wts])
    s = c + 1j * t
    vals = np.exp(log_integrand(spec, s) + s * math.log(z))
    return complex(vals @ w / (2 * math.pi))


def eval_g(spec: GFunctionSpec, z, cfg: QuadratureConfig | None = None, c: float | None = None,
           tol: float | None = None):
    """Meijer G function at z >= 0."""
    return eval_h(spec.to_h(), z, cfg=cfg, c=c, tol=tol)


def _same(x, y) -> bool:
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return x == y
    return abs(float(x) - float(y)) <= 1e-12


def _sort_key(x):
    return float(x)


def _cancel(first, second):
    first, second = list(first), list(second)
    i = 0
    while i < len(first):
        hit = next((k for k, y in enumerate(second) if _same(first[i], y)), None)
        if hit is None:
            i += 1
        else:
            first.pop(i)
            second.pop(hit)
    return first, second


def simplify_g(spec: GFunctionSpec) -> GFunctionSpec:
    """Cancel a = b* and a* = b pairs, then sort every sequence ascending."""
    a, b_star = _cancel(spec.a, spec.b_star)
    a_star, b = _cancel(spec.a_star, spec.b)
    return GFunctionSpec(
        a=tuple(sorted(a, key=_sort_key)),
        a_star=tuple(sorted(a_star, key=_sort_key)),
        b=tuple(sorted(b, key=_sort_key)),
        b_star=tuple(sorted(b_star, key=_sort_key)),
    )


def format_number(x) -> str:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, Real) and float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def format_g(spec: GFunctionSpec) -> str:
    """Compact display 'a ; a* ; b ; b*' with '-' for empty groups."""
    def grp(xs):
        return ", ".join(format_number(x) for x in xs) if xs else "-"

    return f"G({grp(spec.a)} ; {grp(spec.a_star)} ; {grp(spec.b)} ; {grp(spec.b_star)})"
