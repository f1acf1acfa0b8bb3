# core/optimizer.py

"""
Численный поиск оптимальной доли ITL и критической скорости для любых L, M.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from core.analytics import single_network_throughput, sum_throughput
from core.scenario import FormulaTier, Mode, PowerPolicy, RatePolicy, Scenario

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

GRID_POINTS = 101
ALPHA_MIN = 0.005
ALPHA_MAX = 0.995
ALPHA_TOL = 1e-5
RATE_MIN = 0.01
RATE_MAX = 20.0
RATE_TOL = 1e-3


@dataclass(frozen=True)
class AlphaOptimum:
    """Найденный максимум по alpha и его проверка точной формулой"""
    alpha: float
    tau: float
    tau_exact: float


@dataclass(frozen=True)
class CriticalRate:
    """Численная критическая скорость; при crossover=False пересечения на отрезке нет"""
    rate: float
    crossover: bool


@dataclass(frozen=True)
class Recommendation:
    """Что выгоднее при данной скорости: одновременная передача или одна сеть"""
    mode: Mode
    alpha: float
    tau: float
    tau_single: float

    @property
    def gain(self) -> float:
        return self.tau - self.tau_single


def golden_section_max(f, lo, hi, tol=ALPHA_TOL):
    """
    Поиск золотым сечением максимума унимодальной f на [lo, hi].
    Возвращает (x, f(x)) с шириной последнего интервала не больше tol.
    """
    lo, hi = min(lo, hi), max(lo, hi)
    h = hi - lo
    if h <= tol:
        x = 0.5 * (lo + hi)
        return x, f(x)

    # Сколько шагов нужно до требуемой точности
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = lo + INV_PHI_SQUARE * h
    d = lo + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc > yd:
            hi = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = lo + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            lo = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = lo + INV_PHI * h
            yd = f(d)

    return (c, yc) if yc > yd else (d, yd)


def alpha_star_numeric(
    scenario: Scenario,
    rate: RatePolicy,
    formula_tier=FormulaTier.RATIONAL,
    grid_points: int = GRID_POINTS,
    alpha_min: float = ALPHA_MIN,
    alpha_max: float = ALPHA_MAX,
    alpha_tol: float = ALPHA_TOL,
) -> AlphaOptimum:
    """Сетка по alpha, затем золотое сечение вокруг лучшего узла"""
    tier = FormulaTier(formula_tier)

    def tau(alpha):
        return sum_throughput(scenario, rate, PowerPolicy(alpha=alpha), tier)

    grid = np.linspace(alpha_min, alpha_max, grid_points)
    values = [tau(float(alpha)) for alpha in grid]
    best = int(np.argmax(values))

    lo = float(grid[max(best - 1, 0)])
    hi = float(grid[min(best + 1, grid_points - 1)])
    alpha, value = golden_section_max(tau, lo, hi, alpha_tol)
    if value < values[best]:
        alpha, value = float(grid[best]), values[best]

    tau_exact = value if tier is FormulaTier.EXACT else sum_throughput(
        scenario, rate, PowerPolicy(alpha=alpha), FormulaTier.EXACT
    )
    if abs(tau_exact - value) > 0.05 * max(rate.rate_bpcu, 1e-12):
        logger.debug(
            "alpha*=%.5f: уровень %s даёт %.5f, точная формула %.5f",
            alpha, tier.value, value, tau_exact,
        )
    return AlphaOptimum(alpha=alpha, tau=value, tau_exact=tau_exact)


def best_single_network(scenario: Scenario, rate: RatePolicy, formula_tier=FormulaTier.RATIONAL):
    """Лучшая из двух одиночных сетей: (tau, режим)"""
    tier = FormulaTier(formula_tier)
    tau1 = single_network_throughput(scenario, rate, 1, tier)
    tau2 = single_network_throughput(scenario, rate, 2, tier)
    if math.isclose(tau1, tau2, rel_tol=1e-12, abs_tol=1e-15) and tier is not FormulaTier.EXACT:
        # Приближения без шума не различают сети, решает точная формула
        exact1 = single_network_throughput(scenario, rate, 1, FormulaTier.EXACT)
        exact2 = single_network_throughput(scenario, rate, 2, FormulaTier.EXACT)
        return (tau1, Mode.SINGLE_1) if exact1 >= exact2 else (tau2, Mode.SINGLE_2)
    return (tau1, Mode.SINGLE_1) if tau1 >= tau2 else (tau2, Mode.SINGLE_2)


def recommend(scenario: Scenario, rate: RatePolicy, formula_tier=FormulaTier.RATIONAL, **search) -> Recommendation:
    """Сравнить оптимум одновременной передачи с лучшей одиночной сетью"""
    optimum = alpha_star_numeric(scenario, rate, formula_tier, **search)
    tau_single, single_mode = best_single_network(scenario, rate, formula_tier)
    if optimum.tau > tau_single:
        return Recommendation(Mode.CONCURRENT, optimum.alpha, optimum.tau, tau_single)
    return Recommendation(single_mode, 1.0 if single_mode is Mode.SINGLE_1 else 0.0, tau_single, tau_single)


def critical_rate_numeric(
    scenario: Scenario,
    formula_tier=FormulaTier.RATIONAL,
    rate_min: float = RATE_MIN,
    rate_max: float = RATE_MAX,
    rate_tol: float = RATE_TOL,
    **search,
) -> CriticalRate:
    """Наибольшая R, при которой оптимум одновременной передачи ещё лучше одиночной сети"""
    tier = FormulaTier(formula_tier)

    def advantage(rate_bpcu):
        rate = RatePolicy.from_rate(rate_bpcu)
        concurrent = alpha_star_numeric(scenario, rate, tier, **search).tau
        single, _ = best_single_network(scenario, rate, tier)
        return concurrent - single

    lo, hi = rate_min, rate_max
    if advantage(lo) <= 0.0:
        logger.info("Одновременная передача не выигрывает ни при какой R из [%g, %g]", lo, hi)
        return CriticalRate(rate=0.0, crossover=False)
    if advantage(hi) > 0.0:
        logger.info("Одновременная передача выигрывает на всём отрезке [%g, %g]", lo, hi)
        return CriticalRate(rate=hi, crossover=False)

    while hi - lo > rate_tol:
        mid = 0.5 * (lo + hi)
        if advantage(mid) > 0.0:
            lo = mid
        else:
            hi = mid

    logger.debug("R_c (численно, %s) = %.4f", tier.value, lo)
    return CriticalRate(rate=lo, crossover=True)
