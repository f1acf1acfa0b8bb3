# core/quadrature.py

"""
Независимая проверка точной формулы: вероятность отказа как математическое
ожидание по |g_ownP|^2 и отношению V = |g_cross|^2 / |g_otherP|^2,
посчитанное двумя вложенными адаптивными квадратурами.

Отношение двух экспонент имеет функцию распределения
F_V(v) = mu_cross v / (mu_otherP + mu_cross v), поэтому внутренний интеграл
берётся по u = F_V(v) на [0, 1].
"""

import math

import numpy as np
from scipy.integrate import quad

from core.analytics import OutageParams

EPSABS = 1e-13
EPSREL = 1e-10
LIMIT = 200


def _expect(func, rate):
    """E[func(G)] для G ~ Exp(rate); переменная нормирована на среднее"""
    if math.isinf(rate):
        return func(0.0)
    value, _ = quad(
        lambda z: math.exp(-z) * func(z / rate),
        0.0, np.inf,
        epsabs=EPSABS, epsrel=EPSREL, limit=LIMIT,
    )
    return value


def _expect_ratio(func, mu_cross, mu_other_p, breakpoint=None):
    """E[func(V)] для V = Exp(mu_cross) / Exp(mu_other_p)"""
    if math.isinf(mu_cross):
        return func(0.0)
    if math.isinf(mu_other_p):
        return func(math.inf)
    k = mu_other_p / mu_cross

    def at(u):
        return func(math.inf) if u >= 1.0 else func(k * u / (1.0 - u))

    points = None
    if breakpoint is not None and math.isfinite(breakpoint):
        u_star = breakpoint / (k + breakpoint)
        if 0.0 < u_star < 1.0:
            points = [u_star]
    value, _ = quad(at, 0.0, 1.0, points=points, epsabs=EPSABS, epsrel=EPSREL, limit=LIMIT)
    return value


def _any_above(x: float, num_users: int) -> float:
    """P(max из N экспонент > x) = 1 - (1 - e^-x)^N без потери точности у обоих концов"""
    if x == math.inf:
        return 0.0
    tail = math.exp(-x)
    if tail >= 1.0:
        return 1.0
    return -math.expm1(num_users * math.log1p(-tail))


def outage_by_quadrature(p: OutageParams) -> float:
    """
    p_out = E[(1 - exp(-lambda g_ownP (c V + d)))^N],
    c = (1 - share)/share * gamma_th, d = gamma_th / (share * rho)
    """
    c = (1.0 - p.share) / p.share * p.gamma_th
    d = p.gamma_th / (p.share * p.rho)

    def given_own_p(g_own_p):
        scale = p.lambda_main * g_own_p
        if scale == 0.0:
            return 1.0

        def given_ratio(v):
            cross = c * v if c > 0.0 else 0.0
            return _any_above(scale * (cross + d), p.num_users)

        if c == 0.0:
            return given_ratio(0.0)
        # Перелом подынтегральной функции там, где показатель порядка 1
        knee = (1.0 / scale - d) / c
        return _expect_ratio(given_ratio, p.mu_cross, p.mu_other_p, knee if knee > 0.0 else None)

    # Интегрируется вероятность успеха, отказ получается дополнением
    return 1.0 - _expect(given_own_p, p.mu_own_p)
