import math

import numpy as np
import pytest
from scipy import integrate, special

from gnsharp import radial_ops as ro
from gnsharp.errors import DivergenceError, DomainError, ParameterError


def prof(f, **kw):
    return ro.RadialProfile(f, **kw)


def test_radial_integral_examples():
    assert ro.radial_integral(prof(lambda x: np.exp(-x * x)), 2) == pytest.approx(math.pi, rel=1e-12)
    g = prof(lambda x: 1 / (1 + x * x), decay="algebraic", decay_power=2)
    assert ro.radial_integral(g, 1) == pytest.approx(math.pi, rel=1e-12)
    assert ro.radial_integral(prof(lambda x: np.exp(-x) / x), 3) == pytest.approx(4 * math.pi, rel=1e-12)
    with pytest.raises(DivergenceError):
        ro.radial_integral(g, 2)


def test_radial_integral_scaling():
    base = lambda x: np.exp(-x) * (1 + x * x) / (1 + x**4)
    for d in (1, 2, 3):
        ref = ro.radial_integral(prof(base), d)
        for lam in (0.5, 2.0):
            val = ro.radial_integral(prof(lambda x, lam=lam: base(lam * x)), d)
            assert val == pytest.approx(lam**-d * ref, rel=1e-10)


def test_beta_integral_examples():
    assert ro.beta_integral(0.5, 1, 1) == pytest.approx(math.pi / 2, rel=1e-14)
    assert ro.beta_integral(1 / 3, 1, 3) == pytest.approx(0.25, rel=1e-14)
    with pytest.raises(DomainError):
        ro.beta_integral(1, 1, 1)


def test_beta_integral_vs_quadrature():
    rng = np.random.default_rng(7)
    for _ in range(30):
        b = rng.uniform(0.5, 4)
        a = rng.uniform(0.05, 0.95) * b
        u = rng.uniform(0.5, 4)
        f = lambda x: x ** (2 * a * u - 1) / (1 + x ** (2 * b)) ** u
        q = integrate.quad(f, 0, 1, epsabs=0, epsrel=1e-12, limit=200)[0]
        q += integrate.quad(f, 1, np.inf, epsabs=0, epsrel=1e-12, limit=200)[0]
        assert ro.beta_integral(a, b, u) == pytest.approx(q, rel=1e-8)


def test_beta_integral_integer():
    assert ro.beta_integral_integer(1 / 3, 1, 3) == pytest.approx(0.25, rel=1e-14)
    assert ro.beta_integral_integer(0.5, 1, 1) == pytest.approx(math.pi / 2, rel=1e-14)
    rng = np.random.default_rng(11)
    for _ in range(30):
        b = rng.uniform(0.5, 3)
        a = rng.uniform(0.05, 0.95) * b
        u = int(rng.integers(1, 6))
        assert ro.beta_integral_integer(a, b, u) == pytest.approx(ro.beta_integral(a, b, u), rel=1e-12)
    # degenerate a*u/b integer in {1,...,u-1}
    for a, b, u in ((0.5, 1.0, 4), (0.75, 1.5, 4), (1.0, 2.5, 5)):
        assert ro.beta_integral_integer(a, b, u) == pytest.approx(ro.beta_integral(a, b, u), rel=1e-12)


def test_i_jn():
    assert ro.i_jn(0, 1, 1) == pytest.approx(math.pi, rel=1e-14)
    expected = math.pi**2.5 / (special.gamma(1.5) * 2 * math.sin(3 * math.pi / 4))
    assert ro.i_jn(0, 2, 3) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(DivergenceError):
        ro.i_jn(0, 1, 2)
    for j, n, d in ((0, 2, 3), (0.5, 2, 1), (1, 3, 2), (0.3, 1.5, 1), (1, 3, 3)):
        g = prof(lambda x, j=j, n=n: x ** (2 * j) / (1 + x ** (2 * n)), decay="algebraic",
                 decay_power=2 * n - 2 * j)
        assert ro.i_jn(j, n, d) == pytest.approx(ro.radial_integral(g, d), rel=1e-8)


def test_hankel_examples():
    g = prof(lambda x: 1 / (1 + x * x), decay="algebraic", decay_power=2)
    assert ro.hankel_inverse_ft(g, 1, 1.0) == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-1), rel=1e-9)
    assert ro.hankel_inverse_ft(g, 1, 0.0) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-12)
    for rho in (0.01, 0.3, 2.0, 7.0):
        assert ro.hankel_inverse_ft(g, 1, rho) == pytest.approx(
            math.sqrt(math.pi / 2) * math.exp(-rho), rel=1e-8)
    k0 = prof(lambda x: special.k0(x))
    for rho in (0.0, 0.5, 1.0, 3.0):
        ref = math.sqrt(2) * special.gamma(1.5) / (1 + rho * rho) ** 1.5
        assert ro.hankel_inverse_ft(k0, 3, rho) == pytest.approx(ref, rel=1e-9)


def test_hankel_slow_algebraic_tail_d2():
    # int_0^inf xi J0(rho xi)/(1+xi^2)^(3/2) d xi = exp(-rho)/1
    g = prof(lambda x: (1 + x * x) ** -1.5, decay="algebraic", decay_power=3)
    for rho in (0.2, 1.0, 4.0):
        assert ro.hankel_inverse_ft(g, 2, rho) == pytest.approx(math.exp(-rho), rel=1e-8)


def test_macdonald_transform():
    assert ro.macdonald_transform(0, 0, 3, 1.0) == pytest.approx(0.44311346272637897, rel=1e-14)
    for d in (1, 2, 3, 4):
        for mu in (0.0, 0.2, 0.4):
            if 2 * mu < d:
                rho = 0.7
                val = ro.macdonald_transform(mu, mu, d, rho)
                ref = 2 ** (d / 2 - mu - 1) * special.gamma(d / 2 - mu) / (1 + rho * rho) ** (d / 2 - mu)
                assert val == pytest.approx(ref, rel=1e-12)
    assert ro.macdonald_l1_admissible(0.5, 0.5, 2)
    assert not ro.macdonald_l2_admissible(0.5, 0.5, 2)
    with pytest.raises(DomainError):
        ro.macdonald_transform(1, 2, 3, 1.0)


@pytest.mark.parametrize("mu,sigma,d", [(0, 0, 3), (0.5, 0.5, 2), (1, 1, 3)])
def test_macdonald_vs_hankel(mu, sigma, d):
    g = prof(lambda x: special.kv(mu, x) / x**sigma)
    for rho in (0.0, 0.5, 1.0, 2.0, 5.0):
        ref = ro.macdonald_transform(mu, sigma, d, rho)
        assert ro.hankel_inverse_ft(g, d, rho) == pytest.approx(ref, rel=1e-7)


def test_lr_norm_examples():
    assert ro.lr_norm_radial(prof(lambda x: np.exp(-x)), 2, 1) == pytest.approx(1.0, rel=1e-12)
    f = prof(lambda x: math.sqrt(math.pi / 2) * np.exp(-x), value_at_zero=math.sqrt(math.pi / 2))
    assert ro.lr_norm_radial(f, math.inf, 1) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-12)
    h = prof(lambda x: 1 / (1 + x * x), decay="algebraic", decay_power=2)
    assert ro.lr_norm_radial(h, 4, 2) == pytest.approx((math.pi / 3) ** 0.25, rel=1e-10)
    with pytest.raises(DivergenceError):
        ro.lr_norm_radial(h, 1, 2)


def test_lr_norm_sup_sign_changing():
    f = prof(lambda x: np.exp(-x) * np.cos(3 * x) - 0.2 * np.exp(-((x - 2) ** 2)) * 8)
    grid = np.linspace(0, 20, 200001)
    assert ro.lr_norm_radial(f, math.inf, 3) == pytest.approx(np.max(np.abs(f(grid))), rel=1e-8)


def test_sup_of_nonnegative_fourier_data_at_origin():
    g = prof(lambda x: 1 / (1 + x**4), decay="algebraic", decay_power=4)
    for d in (1, 2, 3):
        val0 = ro.hankel_inverse_ft(g, d, 0.0)
        fpos = ro.RadialProfile(lambda r, d=d: np.array([ro.hankel_inverse_ft(g, d, x) for x in np.atleast_1d(r)]))
        sup = ro.lr_norm_radial(fpos, math.inf, d, rho_max=12.0)
        assert sup == pytest.approx(val0, rel=1e-9)


def test_profile_validation():
    ok = prof(lambda x: np.exp(-x))
    ok.validate()
    bad = prof(lambda x: 1 / (1 + x), decay="algebraic", decay_power=3)
    with pytest.raises(ParameterError):
        bad.validate()
    with pytest.raises(ParameterError):
        prof(lambda x: x, decay="weird")


def test_wynn_epsilon_accelerates_alternating_series():
    partial = np.cumsum([(-1) ** k / (k + 1) for k in range(20)])
    assert ro.wynn_epsilon(partial) == pytest.approx(math.log(2), rel=1e-12)


def test_sector_transform_matches_oscillatory_quadrature():
    # analytic profile g(z) = z K_1(z)/(z^2 + eps^2), d = 1, 2, 3
    eps = np.array([0.3, 1.7])

    def analytic(z):
        z = np.asarray(z)[:, None]
        return z * special.kv(1, z) / (z * z + eps[None, :] ** 2)

    rho = np.array([0.0, 0.2, 1.0, 3.0, 9.0])
    for d in (1, 2, 3):
        vals = ro.hankel_inverse_ft_sector(analytic, d, rho, ro.RadialRule.geometric(1e-12, 80.0))
        for k, e in enumerate(eps):
            g = prof(lambda x, e=e: x * special.kv(1, x) / (x * x + e * e))
            for i, r in enumerate(rho):
                assert vals[i, k] == pytest.approx(ro.hankel_inverse_ft(g, d, r), rel=1e-8, abs=1e-14)


def test_radial_rule_integrates_moments():
    rule = ro.RadialRule.geometric(1e-12, 80.0)
    vals = rule.integrate(lambda x: x**3 * np.exp(-x))
    assert vals == pytest.approx(6.0, rel=1e-13)
