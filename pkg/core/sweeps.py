# core/sweeps.py

"""
Развёртки tau_sum по alpha и по R с аналитикой и Монте-Карло
и запись их в CSV.
"""

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from core.analytics import sum_throughput
from core.errors import OutputError, ParameterError
from core.scenario import FormulaTier, Mode, PowerPolicy, RatePolicy, Scenario
from core.simulator import estimate_sum_throughput

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 9

ALPHA_COLUMNS = ("alpha", "tau_exact", "tau_rational", "tau_mc", "tau_mc_se")


@dataclass
class SweepResult:
    """Таблица: независимая переменная, аналитика, Монте-Карло ± СКО"""
    columns: Tuple[str, ...]
    rows: List[Tuple[float, ...]] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        index = self.columns.index(name)
        return np.array([row[index] for row in self.rows])

    def to_csv(self, path):
        """Записать CSV: заголовок, 9 значащих цифр, строки через \\n"""
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(self.columns)
                for row in self.rows:
                    writer.writerow(f"{value:.{SIGNIFICANT_DIGITS}g}" for value in row)
        except OSError as e:
            raise OutputError(f"не удалось записать {path}: {e}") from e
        logger.info("Записано %d строк в %s", len(self.rows), path)


def parse_rate_range(text: str) -> np.ndarray:
    """«START:STOP:N» -> N равноотстоящих скоростей"""
    try:
        start, stop, count = text.split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError as e:
        raise ParameterError(f"диапазон скоростей должен иметь вид START:STOP:N, получено {text!r}") from e
    if count < 1 or start <= 0 or stop < start:
        raise ParameterError(f"некорректный диапазон скоростей {text!r}")
    return np.linspace(start, stop, count)


def alpha_grid(points: int, alpha_min: float = 0.01, alpha_max: float = 0.99) -> np.ndarray:
    if points < 1:
        raise ParameterError(f"размер сетки должен быть >= 1, получено {points!r}")
    if points == 1:
        return np.array([0.5])
    return np.linspace(alpha_min, alpha_max, points)


def _ordered_map(func, items, workers: int):
    """Строки остаются в порядке сетки, как бы ни завершались задачи"""
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def _endpoint_policy(alpha: float) -> PowerPolicy:
    if alpha <= 0.0:
        return PowerPolicy(alpha=0.0, mode=Mode.SINGLE_2)
    if alpha >= 1.0:
        return PowerPolicy(alpha=1.0, mode=Mode.SINGLE_1)
    return PowerPolicy(alpha=alpha)


def sweep_alpha(
    scenario: Scenario,
    rate: RatePolicy,
    grid: Sequence[float],
    trials: int,
    seed: int,
    workers: int = 1,
    endpoints: bool = False,
    **simulation,
) -> SweepResult:
    """
    tau_sum(alpha): точная и рациональная формулы и Монте-Карло.
    endpoints=True добавляет строки alpha = 0 и alpha = 1: работает только
    S2 или только S1.
    """
    # Все точки используют один seed
    def row(alpha):
        power = _endpoint_policy(alpha)
        mc = estimate_sum_throughput(scenario, rate, power, trials, seed, **simulation)
        return (
            float(alpha),
            sum_throughput(scenario, rate, power, FormulaTier.EXACT),
            sum_throughput(scenario, rate, power, FormulaTier.RATIONAL),
            mc.mean,
            mc.std_error,
        )

    points = [float(alpha) for alpha in grid]
    if endpoints:
        points = [0.0] + points + [1.0]
    return SweepResult(columns=ALPHA_COLUMNS, rows=_ordered_map(row, points, workers))


def sweep_rate(
    scenario: Scenario,
    power: PowerPolicy,
    rates: Sequence[float],
    users: Sequence[int],
    trials: int,
    seed: int,
    workers: int = 1,
    **simulation,
) -> SweepResult:
    """tau_sum(R) для каждого L = M из списка users"""
    if not users:
        raise ParameterError("список числа пользователей пуст")

    columns = ["rate"]
    for n in users:
        columns += [f"tau_exact_n{n}", f"tau_mc_n{n}", f"tau_mc_se_n{n}"]

    def row(rate_bpcu):
        rate = RatePolicy.from_rate(float(rate_bpcu))
        values = [float(rate_bpcu)]
        for n in users:
            current = scenario.with_users(n, n)
            mc = estimate_sum_throughput(current, rate, power, trials, seed, **simulation)
            values += [sum_throughput(current, rate, power, FormulaTier.EXACT), mc.mean, mc.std_error]
        return tuple(values)

    return SweepResult(columns=tuple(columns), rows=_ordered_map(row, list(rates), workers))
