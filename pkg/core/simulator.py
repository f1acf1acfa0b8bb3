# core/simulator.py

"""
Монте-Карло моделирование на уровне линий: экспоненциальные усиления,
управление мощностью по пиковой помехе, SINR по выбранной дисциплине
обслуживания и оценки вероятности отказа и пропускной способности.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np

from core.errors import ParameterError, TrialsTooSmallError
from core.scenario import ChannelStatistics, PowerPolicy, RatePolicy, Scenario, Selection
from core.streams import Channel, open_uniforms

logger = logging.getLogger(__name__)

MIN_TRIALS = 1000
BLOCK_TRIALS = 65536


@dataclass(frozen=True)
class TrialDraw:
    """Усиления одного квазистатического блока"""
    h1: np.ndarray
    h2: np.ndarray
    g1p: float
    g2p: float
    g2_star: float
    g1_star: float


@dataclass(frozen=True)
class TrialBatch:
    """Усиления подряд идущих испытаний; форма h1 (count, L), форма h2 (count, M)"""
    first: int
    h1: np.ndarray
    h2: np.ndarray
    g1p: np.ndarray
    g2p: np.ndarray
    g2_star: np.ndarray
    g1_star: np.ndarray

    def __len__(self):
        return len(self.g1p)


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Точечная оценка со стандартной ошибкой"""
    mean: float
    std_error: float
    trials: int
    seed: int

    def to_dict(self) -> dict:
        return {"mean": self.mean, "std_error": self.std_error, "trials": self.trials, "seed": self.seed}


@dataclass(frozen=True)
class OutageTally:
    """Число испытаний и отказов; слияние ассоциативно"""
    trials: int = 0
    failures: int = 0

    def merge(self, other: "OutageTally") -> "OutageTally":
        return OutageTally(self.trials + other.trials, self.failures + other.failures)

    def estimate(self, seed: int) -> MonteCarloEstimate:
        mean = self.failures / self.trials
        return MonteCarloEstimate(
            mean=mean,
            std_error=math.sqrt(mean * (1.0 - mean) / self.trials),
            trials=self.trials,
            seed=seed,
        )


@dataclass(frozen=True)
class ThroughputTally:
    """Счётчики успехов обеих сетей и совместных успехов"""
    trials: int = 0
    ok1: int = 0
    ok2: int = 0
    ok_both: int = 0

    def merge(self, other: "ThroughputTally") -> "ThroughputTally":
        return ThroughputTally(
            self.trials + other.trials,
            self.ok1 + other.ok1,
            self.ok2 + other.ok2,
            self.ok_both + other.ok_both,
        )

    def estimate(self, rate_bpcu: float, seed: int) -> MonteCarloEstimate:
        n = self.trials
        successes = (self.ok1 + self.ok2) / n
        # E[(I1 + I2)^2] = E[I1] + E[I2] + 2 E[I1 I2]
        second_moment = (self.ok1 + self.ok2 + 2 * self.ok_both) / n
        variance = max(0.0, second_moment - successes * successes)
        return MonteCarloEstimate(
            mean=rate_bpcu * successes,
            std_error=rate_bpcu * math.sqrt(variance / n),
            trials=n,
            seed=seed,
        )


def exponential_from_uniform(u, rate):
    """Обратная функция распределения: x = -ln(u) / rate"""
    return -np.log(u) / rate


def draw_trials(stats: ChannelStatistics, L: int, M: int, seed: int, first: int, count: int) -> TrialBatch:
    """Усиления испытаний first .. first + count - 1"""
    def gains(channel, rate, per_trial=1):
        u = open_uniforms(seed, channel, first * per_trial, count * per_trial)
        return exponential_from_uniform(u, rate)

    return TrialBatch(
        first=first,
        h1=gains(Channel.H1, stats.lambda11, L).reshape(count, L),
        h2=gains(Channel.H2, stats.lambda22, M).reshape(count, M),
        g1p=gains(Channel.G1P, stats.mu1P),
        g2p=gains(Channel.G2P, stats.mu2P),
        g2_star=gains(Channel.G2_STAR, stats.mu21),
        g1_star=gains(Channel.G1_STAR, stats.mu12),
    )


def draw_trial(stats: ChannelStatistics, L: int, M: int, seed: int, index: int) -> TrialDraw:
    """Одно испытание; состояние генератора задаётся парой (seed, номер испытания)"""
    batch = draw_trials(stats, L, M, seed, index, 1)
    return TrialDraw(
        h1=batch.h1[0],
        h2=batch.h2[0],
        g1p=float(batch.g1p[0]),
        g2p=float(batch.g2p[0]),
        g2_star=float(batch.g2_star[0]),
        g1_star=float(batch.g1_star[0]),
    )


def _selected(gains: np.ndarray, selection: Selection):
    # Круговое обслуживание: фиксированный индекс 0
    if Selection(selection) is Selection.ROUND_ROBIN:
        return gains[..., 0]
    return gains.max(axis=-1)


def sinr_pair(draw: Union[TrialDraw, TrialBatch], alpha: float, rho: float, selection=Selection.BEST_USER):
    """SINR выбранных приёмников обеих сетей при одновременной передаче"""
    if not (0.0 < alpha < 1.0):
        raise ParameterError(f"alpha должно лежать в (0, 1), получено {alpha!r}")
    x1 = _selected(draw.h1, selection)
    x2 = _selected(draw.h2, selection)
    gamma1 = (alpha * rho * x1 / draw.g1p) / ((1.0 - alpha) * rho * draw.g2_star / draw.g2p + 1.0)
    gamma2 = ((1.0 - alpha) * rho * x2 / draw.g2p) / (alpha * rho * draw.g1_star / draw.g1p + 1.0)
    return gamma1, gamma2


def sinr_single(draw: Union[TrialDraw, TrialBatch], network: int, rho: float, selection=Selection.BEST_USER):
    """SINR активной сети, когда вторая молчит: весь ITL и никакой взаимной помехи"""
    if network == 1:
        return rho * _selected(draw.h1, selection) / draw.g1p
    if network == 2:
        return rho * _selected(draw.h2, selection) / draw.g2p
    raise ParameterError(f"номер сети должен быть 1 или 2, получено {network!r}")


def _success(batch: TrialBatch, scenario: Scenario, rate: RatePolicy, power: PowerPolicy):
    """Признаки успешного приёма (Gamma >= gamma_th) для обеих сетей"""
    rho = scenario.rho
    if power.concurrent:
        gamma1, gamma2 = sinr_pair(batch, power.alpha, rho, scenario.selection)
        return gamma1 >= rate.gamma_th, gamma2 >= rate.gamma_th

    silent = np.zeros(len(batch), dtype=bool)
    active = power.mode.active_network
    ok = sinr_single(batch, active, rho, scenario.selection) >= rate.gamma_th
    return (ok, silent) if active == 1 else (silent, ok)


def _blocks(trials: int, block_trials: int):
    for first in range(0, trials, block_trials):
        yield first, min(block_trials, trials - first)


def _run_blocks(count_block, trials: int, block_trials: int, workers: int):
    """Посчитать блоки (возможно, параллельно) и слить счётчики в порядке блоков"""
    blocks = list(_blocks(trials, block_trials))
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(lambda block: count_block(*block), blocks))
    else:
        tallies = [count_block(first, count) for first, count in blocks]

    total = tallies[0]
    for tally in tallies[1:]:
        total = total.merge(tally)
    return total


def _check_trials(trials: int, min_trials: int):
    if not isinstance(trials, int) or trials < min_trials:
        raise TrialsTooSmallError(f"нужно не меньше {min_trials} испытаний, получено {trials!r}")


def estimate_outage(
    scenario: Scenario,
    rate: RatePolicy,
    power: PowerPolicy,
    network: int,
    trials: int,
    seed: int,
    workers: int = 1,
    block_trials: int = BLOCK_TRIALS,
    min_trials: int = MIN_TRIALS,
) -> MonteCarloEstimate:
    """Доля испытаний с SINR ниже порога и биномиальная стандартная ошибка"""
    _check_trials(trials, min_trials)
    if network not in (1, 2):
        raise ParameterError(f"номер сети должен быть 1 или 2, получено {network!r}")

    def count_block(first, count):
        batch = draw_trials(scenario.stats, scenario.L, scenario.M, seed, first, count)
        ok = _success(batch, scenario, rate, power)[network - 1]
        return OutageTally(trials=count, failures=int(count - np.count_nonzero(ok)))

    tally = _run_blocks(count_block, trials, block_trials, workers)
    estimate = tally.estimate(seed)
    logger.debug(
        "p_out%d = %.6g ± %.2g (alpha=%s, R=%s, %d испытаний)",
        network, estimate.mean, estimate.std_error, power.alpha, rate.rate_bpcu, trials,
    )
    return estimate


def estimate_sum_throughput(
    scenario: Scenario,
    rate: RatePolicy,
    power: PowerPolicy,
    trials: int,
    seed: int,
    workers: int = 1,
    block_trials: int = BLOCK_TRIALS,
    min_trials: int = MIN_TRIALS,
) -> MonteCarloEstimate:
    """Суммарная пропускная способность по тем же испытаниям для обеих сетей"""
    _check_trials(trials, min_trials)

    def count_block(first, count):
        batch = draw_trials(scenario.stats, scenario.L, scenario.M, seed, first, count)
        ok1, ok2 = _success(batch, scenario, rate, power)
        return ThroughputTally(
            trials=count,
            ok1=int(np.count_nonzero(ok1)),
            ok2=int(np.count_nonzero(ok2)),
            ok_both=int(np.count_nonzero(ok1 & ok2)),
        )

    tally = _run_blocks(count_block, trials, block_trials, workers)
    estimate = tally.estimate(rate.rate_bpcu, seed)
    logger.debug(
        "tau_sum = %.6g ± %.2g (alpha=%s, R=%s, %d испытаний)",
        estimate.mean, estimate.std_error, power.alpha, rate.rate_bpcu, trials,
    )
    return estimate
