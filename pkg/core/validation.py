# core/validation.py

"""
Набор проверок для команды validate: согласие аналитики и Монте-Карло,
устранимые особенности, сходимость уровней формул, детерминизм и
инвариантность к общему масштабу интенсивностей.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import List

from core import analytics
from core.analytics import OutageParams, exact_term, outage_exact, outage_params
from core.optimizer import alpha_star_numeric, critical_rate_numeric
from core.quadrature import outage_by_quadrature
from core.scenario import FormulaTier, PowerPolicy, RatePolicy, Scenario
from core.simulator import estimate_outage, estimate_sum_throughput

logger = logging.getLogger(__name__)

DEFAULT_ALPHAS = (0.1, 0.3, 0.5, 0.7, 0.9)
DEFAULT_RATES = (0.5, 1.375, 2.25, 3.125, 4.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass
class ValidationReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, passed: bool, detail: str):
        self.checks.append(CheckResult(name, bool(passed), detail))
        logger.debug("%s: %s (%s)", name, "OK" if passed else "FAIL", detail)


def agreement_cells(scenario: Scenario, network: int, alphas, rates, trials: int, seed: int, **simulation):
    """Для каждой клетки (alpha, R): (alpha, R, аналитика, МК, допуск 3 СКО, совпало ли)"""
    cells = []
    for alpha in alphas:
        power = PowerPolicy(alpha=alpha)
        for rate_bpcu in rates:
            rate = RatePolicy.from_rate(rate_bpcu)
            exact = outage_exact(outage_params(scenario, rate, power, network))
            mc = estimate_outage(scenario, rate, power, network, trials, seed, **simulation)
            # СКО Бернулли при истинной вероятности защищает от нулевой оценки СКО
            se = max(mc.std_error, math.sqrt(exact * (1.0 - exact) / trials))
            tolerance = 3.0 * se
            cells.append((alpha, rate_bpcu, exact, mc.mean, tolerance, abs(mc.mean - exact) < tolerance))
    return cells


def _check_agreement(report, scenario, alphas, rates, trials, seed, min_passing, simulation):
    for network in (1, 2):
        cells = agreement_cells(scenario, network, alphas, rates, trials, seed, **simulation)
        passing = sum(cell[-1] for cell in cells)
        worst = max(cells, key=lambda cell: abs(cell[3] - cell[2]) / max(cell[4], 1e-300))
        required = min(min_passing, len(cells))
        report.add(
            f"agreement_network_{network}",
            passing >= required,
            f"{passing}/{len(cells)} (нужно {required}); худшая клетка alpha={worst[0]}, R={worst[1]}: "
            f"аналитика {worst[2]:.6g}, МК {worst[3]:.6g}, допуск {worst[4]:.2g}",
        )


def _singularity_point(scenario: Scenario, offset: float) -> OutageParams:
    """Параметры сети 1, у которых (a_1 - b_1) / b_1 = offset"""
    stats = scenario.stats
    base = OutageParams(
        num_users=1,
        lambda_main=stats.lambda11,
        mu_own_p=stats.mu1P,
        mu_other_p=stats.mu2P,
        mu_cross=stats.mu21,
        share=0.5,
        gamma_th=1.0,
        rho=scenario.rho,
    )
    # b обратно пропорционально mu_cross
    target = base.a(1) / (1.0 + offset)
    return replace(base, mu_cross=base.mu_cross * base.b(1) / target)


def _check_singularity(report, scenario):
    window = analytics.SERIES_WINDOW
    inside = outage_exact(_singularity_point(scenario, window * (1.0 - 1e-6)))
    outside = outage_exact(_singularity_point(scenario, window * (1.0 + 1e-6)))
    at_point = _singularity_point(scenario, 0.0)
    series = exact_term(at_point.a(1), at_point.b(1))
    report.add(
        "singularity_continuity",
        abs(inside - outside) < 1e-8 and math.isclose(series, 0.5 / at_point.a(1), rel_tol=1e-12),
        f"скачок на границе окна ряда {abs(inside - outside):.2e}; T(a, a) = {series:.12g}",
    )


def _check_reduction(report, scenario):
    stats = scenario.stats
    params = OutageParams(
        num_users=max(scenario.L, scenario.M),
        lambda_main=stats.lambda11,
        mu_own_p=stats.mu1P,
        mu_other_p=stats.mu2P,
        mu_cross=stats.mu21,
        share=1.0,
        gamma_th=3.0,
        rho=scenario.rho,
    )
    n = params.num_users
    expected = 1.0 - math.fsum(
        math.comb(n, j) * (1.0 if j % 2 else -1.0) * (1.0 / params.a(j)) for j in range(1, n + 1)
    )
    value = outage_exact(params)
    report.add("reduction_b0", value == min(1.0, max(0.0, expected)), f"{value!r} против {expected!r}")


def _check_tier_convergence(report, scenario):
    rate = RatePolicy.from_rate(1.0)
    power = PowerPolicy(alpha=0.5)
    gaps = []
    for ip_db in (20.0, 30.0, 40.0):
        params = outage_params(scenario.with_ip_db(ip_db), rate, power, 1)
        gaps.append(abs(outage_exact(params) - analytics.outage_approx_highitl(params)))
    report.add(
        "tier_convergence",
        gaps[0] > gaps[1] > gaps[2],
        "|exact - highitl| при rho = 1e2, 1e3, 1e4: " + ", ".join(f"{gap:.3e}" for gap in gaps),
    )


def _check_determinism(report, scenario, seed, simulation):
    rate = RatePolicy.from_rate(1.0)
    power = PowerPolicy(alpha=0.5)
    trials = max(simulation.get("min_trials", 1000), 10000)
    first = estimate_sum_throughput(scenario, rate, power, trials, seed, **simulation)
    second = estimate_sum_throughput(scenario, rate, power, trials, seed, **simulation)
    report.add("determinism", first == second, f"{first.mean!r} / {second.mean!r}")


def _check_scaling(report, scenario):
    scaled = scenario.with_stats(scenario.stats.scaled(7.5))
    rate = RatePolicy.from_rate(1.0)
    a0 = analytics.alpha_star_closed_form(scenario.stats)
    a1 = analytics.alpha_star_closed_form(scaled.stats)
    r0 = analytics.critical_rate_closed_form(scenario.stats)
    r1 = analytics.critical_rate_closed_form(scaled.stats)
    n0 = alpha_star_numeric(scenario, rate, FormulaTier.RATIONAL).alpha
    n1 = alpha_star_numeric(scaled, rate, FormulaTier.RATIONAL).alpha
    c0 = critical_rate_numeric(scenario, FormulaTier.RATIONAL).rate
    c1 = critical_rate_numeric(scaled, FormulaTier.RATIONAL).rate
    passed = (
        math.isclose(a0, a1, rel_tol=1e-12)
        and math.isclose(r0, r1, rel_tol=1e-12)
        and abs(n0 - n1) < 1e-4
        and abs(c0 - c1) < 2e-3
    )
    report.add(
        "ratio_invariance",
        passed,
        f"alpha* {a0:.6f}/{a1:.6f}, R_c {r0:.6f}/{r1:.6f}, численно alpha {n0:.6f}/{n1:.6f}, R_c {c0:.4f}/{c1:.4f}",
    )


def _check_quadrature(report, scenario, tolerance):
    rate = RatePolicy.from_rate(1.0)
    power = PowerPolicy(alpha=0.5)
    worst = 0.0
    for network in (1, 2):
        params = outage_params(scenario, rate, power, network)
        worst = max(worst, abs(outage_exact(params) - outage_by_quadrature(params)))
    report.add("quadrature_oracle", worst < tolerance, f"максимальное расхождение {worst:.2e}")


def run_validation(
    scenario: Scenario,
    trials: int,
    seed: int,
    alphas=DEFAULT_ALPHAS,
    rates=DEFAULT_RATES,
    min_passing: int = 24,
    quadrature_tol: float = 1e-6,
    **simulation,
) -> ValidationReport:
    """Прогнать все проверки на данном сценарии"""
    report = ValidationReport()
    _check_agreement(report, scenario, alphas, rates, trials, seed, min_passing, simulation)
    _check_singularity(report, scenario)
    _check_reduction(report, scenario)
    _check_tier_convergence(report, scenario)
    _check_determinism(report, scenario, seed, simulation)
    _check_scaling(report, scenario)
    _check_quadrature(report, scenario, quadrature_tol)
    return report
