# core/analytics.py

"""
Замкнутые выражения для вероятности отказа и суммарной пропускной способности
двух сосуществующих вторичных сетей.

Обе сети описываются одной параметризацией OutageParams: сеть 2 получается
перестановкой аргументов сети 1. Все три уровня формул (точная, приближение
высокого ITL, рациональное приближение логарифма) считаются через
знакопеременную биномиальную сумму.
"""

import logging
import math
from dataclasses import dataclass

from core.errors import OverflowRiskError, ParameterError
from core.scenario import ChannelStatistics, FormulaTier, Mode, PowerPolicy, RatePolicy, Scenario, Selection

logger = logging.getLogger(__name__)

MAX_USERS = 25

# Окно ряда около устранимой особенности (относительное)
SERIES_WINDOW = 1e-3

# Допуск округления, который поглощает обрезка к [0, 1]
CLAMP_TOLERANCE = 1e-12


@dataclass(frozen=True)
class OutageParams:
    """Параметры вероятности отказа одной сети"""
    num_users: int
    lambda_main: float
    mu_own_p: float
    mu_other_p: float
    mu_cross: float
    share: float
    gamma_th: float
    rho: float

    def __post_init__(self):
        if not isinstance(self.num_users, int) or isinstance(self.num_users, bool) or self.num_users < 1:
            raise ParameterError(f"num_users должно быть целым >= 1, получено {self.num_users!r}")
        if self.num_users > MAX_USERS:
            raise OverflowRiskError(
                f"num_users = {self.num_users} > {MAX_USERS}: знакопеременная сумма теряет точность"
            )
        for name in ("lambda_main", "mu_own_p", "mu_other_p", "mu_cross", "gamma_th", "rho"):
            value = getattr(self, name)
            if math.isnan(value) or value <= 0:
                raise ParameterError(f"{name} должен быть строго положительным, получено {value!r}")
        if math.isnan(self.share) or not (0.0 < self.share <= 1.0):
            raise ParameterError(f"share должно лежать в (0, 1], получено {self.share!r}")

    @property
    def x(self) -> float:
        """Относительный уровень взаимной помехи (без gamma_th и j)"""
        return (self.mu_other_p * self.lambda_main / (self.mu_own_p * self.mu_cross)) * (
            (1.0 - self.share) / self.share
        )

    def a(self, j: int) -> float:
        return 1.0 + self.lambda_main * j * self.gamma_th / (self.mu_own_p * self.share * self.rho)

    def b(self, j: int) -> float:
        return self.x * j * self.gamma_th


def outage_params(scenario: Scenario, rate: RatePolicy, power: PowerPolicy, network: int) -> OutageParams:
    """Параметры сети 1 или 2; для сети 2 аргументы переставлены"""
    stats = scenario.stats
    if network == 1:
        users = scenario.L
        args = (stats.lambda11, stats.mu1P, stats.mu2P, stats.mu21)
    elif network == 2:
        users = scenario.M
        args = (stats.lambda22, stats.mu2P, stats.mu1P, stats.mu12)
    else:
        raise ParameterError(f"номер сети должен быть 1 или 2, получено {network!r}")

    if scenario.selection is Selection.ROUND_ROBIN:
        # Усиление фиксированного приёмника экспоненциально, как при одном пользователе
        users = 1

    share = power.share(network)
    if share <= 0.0:
        raise ParameterError(f"сеть {network} молчит в режиме {power.mode.value}")

    lambda_main, mu_own_p, mu_other_p, mu_cross = args
    return OutageParams(
        num_users=users,
        lambda_main=lambda_main,
        mu_own_p=mu_own_p,
        mu_other_p=mu_other_p,
        mu_cross=mu_cross,
        share=share,
        gamma_th=rate.gamma_th,
        rho=scenario.rho,
    )


def _alternating_binomial_sum(n: int, values) -> float:
    """Сумма C(n,j)(-1)^(j+1) v_j: слагаемые по убыванию модуля, компенсированное сложение"""
    terms = [math.comb(n, j) * (1.0 if j % 2 else -1.0) * value for j, value in zip(range(1, n + 1), values)]
    terms.sort(key=abs, reverse=True)
    return math.fsum(terms)


def _clamp_probability(p: float) -> float:
    if p < -CLAMP_TOLERANCE or p > 1.0 + CLAMP_TOLERANCE:
        logger.debug("Вероятность %.3e вне [0, 1] больше допуска округления", p)
    return min(1.0, max(0.0, p))


def _log_ratio_kernel(e: float) -> float:
    """(e - ln(1+e)) / e^2, у нуля ряд 1/2 - e/3 + e^2/4 - ..."""
    if abs(e) < SERIES_WINDOW:
        total = 0.0
        for k in range(9, 1, -1):
            total = total * (-e) + 1.0 / k
        return total
    return (e - math.log1p(e)) / (e * e)


def exact_term(a: float, b: float) -> float:
    """
    Слагаемое T_j точной формулы:
        T = 1/a - b [ln(a/b) + b/a - 1] / (a - b)^2 = (a - b - b ln(a/b)) / (a - b)^2
    При b = a устранимая особенность, T = 1/(2a).
    """
    if b == 0.0:
        return 1.0 / a
    if b < 1e-8 * a:
        return 1.0 / a - b * (math.log(a / b) + b / a - 1.0) / (a - b) ** 2
    return _log_ratio_kernel((a - b) / b) / b


def highitl_term(t: float) -> float:
    """t (t - ln t - 1) / (1 - t)^2, при t = 1 значение 1/2"""
    if t == 0.0:
        return 0.0
    if t < 1e-8:
        return t * (t - math.log(t) - 1.0) / (1.0 - t) ** 2
    return t * _log_ratio_kernel(t - 1.0)


def outage_exact(p: OutageParams) -> float:
    """Точная вероятность отказа"""
    values = (exact_term(p.a(j), p.b(j)) for j in range(1, p.num_users + 1))
    return _clamp_probability(1.0 - _alternating_binomial_sum(p.num_users, values))


def outage_approx_highitl(p: OutageParams) -> float:
    """Приближение высокого ITL: шумовое слагаемое отброшено"""
    values = (highitl_term(p.b(j)) for j in range(1, p.num_users + 1))
    return _clamp_probability(_alternating_binomial_sum(p.num_users, values))


def outage_approx_rational(p: OutageParams) -> float:
    """Рациональное приближение логарифма: 1 - sum C(N,j)(-1)^(j+1) / (gamma x j + 1)"""
    values = (1.0 / (p.b(j) + 1.0) for j in range(1, p.num_users + 1))
    return _clamp_probability(1.0 - _alternating_binomial_sum(p.num_users, values))


_OUTAGE_BY_TIER = {
    FormulaTier.EXACT: outage_exact,
    FormulaTier.HIGHITL: outage_approx_highitl,
    FormulaTier.RATIONAL: outage_approx_rational,
}


def outage(p: OutageParams, tier=FormulaTier.EXACT) -> float:
    return _OUTAGE_BY_TIER[FormulaTier(tier)](p)


def single_network_throughput(scenario: Scenario, rate: RatePolicy, network: int, tier=FormulaTier.EXACT) -> float:
    """Пропускная способность, когда работает только сеть network с полным ITL"""
    mode = Mode.SINGLE_1 if network == 1 else Mode.SINGLE_2
    return sum_throughput(scenario, rate, PowerPolicy(mode=mode), tier)


def sum_throughput(scenario: Scenario, rate: RatePolicy, power: PowerPolicy, formula_tier=FormulaTier.EXACT) -> float:
    """Суммарная пропускная способность (1 - p_out1) R + (1 - p_out2) R"""
    if rate.rate_bpcu == 0.0:
        return 0.0
    active = power.mode.active_network
    networks = (1, 2) if active is None else (active,)
    total = 0.0
    for network in networks:
        p_out = outage(outage_params(scenario, rate, power, network), formula_tier)
        total += (1.0 - p_out) * rate.rate_bpcu
    return total


def closed_form_applicable(scenario: Scenario) -> bool:
    """Замкнутые alpha* и R_c верны при L = M = 1 или круговом обслуживании"""
    return scenario.selection is Selection.ROUND_ROBIN or (scenario.L == 1 and scenario.M == 1)


def alpha_star_closed_form(stats: ChannelStatistics) -> float:
    """Оптимальная доля ITL для S1 при L = M = 1"""
    ratio = (stats.mu1P / stats.mu2P) * math.sqrt(
        (stats.lambda22 / stats.lambda11) * (stats.mu21 / stats.mu12)
    )
    return 1.0 / (1.0 + ratio)


def critical_rate_closed_form(stats: ChannelStatistics) -> float:
    """Критическая скорость, выше которой выгоднее одна сеть"""
    return math.log2(1.0 + math.sqrt(stats.mu12 * stats.mu21 / (stats.lambda11 * stats.lambda22)))
