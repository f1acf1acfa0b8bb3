# tests/test_analytics.py
import math

import numpy as np
import pytest

from core import analytics
from core.analytics import (
    OutageParams,
    alpha_star_closed_form,
    critical_rate_closed_form,
    exact_term,
    highitl_term,
    outage,
    outage_approx_highitl,
    outage_approx_rational,
    outage_exact,
    outage_params,
    sum_throughput,
)
from core.errors import OverflowRiskError, ParameterError
from core.quadrature import outage_by_quadrature
from core.scenario import ChannelStatistics, FormulaTier, Mode, PowerPolicy, RatePolicy, Scenario, Selection

FIG2 = ChannelStatistics(lambda11=8, lambda22=1, mu12=64, mu21=27, mu1P=27, mu2P=27)
FIG3A = ChannelStatistics(lambda11=1, lambda22=8, mu12=27, mu21=42.875, mu1P=64, mu2P=27)
FIG3B = ChannelStatistics(lambda11=8, lambda22=1, mu12=64, mu21=27, mu1P=27, mu2P=64)


def make_params(num_users=1, lambda_main=1.0, mu_own_p=1.0, mu_other_p=1.0, mu_cross=1.0,
                share=0.5, gamma_th=1.0, rho=1.0):
    return OutageParams(num_users, lambda_main, mu_own_p, mu_other_p, mu_cross, share, gamma_th, rho)


def with_gamma_x(value, num_users=1, gamma_th=1.0):
    """share = 0.5 и единичные интенсивности: gamma * x = gamma / mu_cross"""
    return make_params(num_users=num_users, mu_cross=gamma_th / value, gamma_th=gamma_th, rho=1e6)


# --- точная формула ---

def test_no_cross_interference_limit():
    params = make_params(mu_cross=math.inf, share=1.0)
    assert params.a(1) == 2.0
    assert params.b(1) == 0.0
    assert outage_exact(params) == pytest.approx(0.5, abs=1e-15)


def test_reduction_without_interference_is_exact():
    params = make_params(num_users=5, lambda_main=8.0, mu_own_p=27.0, mu_other_p=27.0,
                         mu_cross=27.0, share=1.0, gamma_th=3.0, rho=100.0)
    expected = 1.0 - math.fsum(
        math.comb(5, j) * (1.0 if j % 2 else -1.0) * (1.0 / params.a(j)) for j in range(1, 6)
    )
    assert outage_exact(params) == min(1.0, max(0.0, expected))


def test_exact_term_at_removable_singularity():
    for a in (1.0, 2.5, 201.0):
        assert exact_term(a, a) == pytest.approx(0.5 / a, rel=1e-15)


def test_exact_term_matches_direct_formula_away_from_singularity():
    for a, b in [(1.3, 0.2), (2.0, 5.0), (1.001, 40.0), (10.0, 1e-3)]:
        direct = 1.0 / a - b * (math.log(a / b) + b / a - 1.0) / (a - b) ** 2
        assert exact_term(a, b) == pytest.approx(direct, rel=1e-9)


def test_exact_term_continuous_across_series_window():
    a = 3.0
    window = analytics.SERIES_WINDOW
    inside = exact_term(a, a / (1.0 + window * (1.0 - 1e-6)))
    outside = exact_term(a, a / (1.0 + window * (1.0 + 1e-6)))
    assert abs(inside - outside) < 1e-8


def test_outage_continuous_near_singular_point():
    # a = 201: наклон функции у b = a сам по себе меньше 1e-8 на 1e-6 относительного сдвига
    base = make_params(mu_cross=1.0, share=0.5, rho=0.01)
    a = base.a(1)
    assert a == pytest.approx(201.0)

    def at(b):
        return outage_exact(make_params(mu_cross=1.0 / b, share=0.5, rho=0.01))

    center = at(a)
    assert center == pytest.approx(1.0 - 0.5 / a, rel=1e-12)
    for factor in (1.0 - 1e-6, 1.0 + 1e-6):
        assert abs(at(a * factor) - center) < 1e-8


def test_exact_increasing_in_threshold():
    scenario = Scenario(stats=FIG2)
    power = PowerPolicy(alpha=0.5)
    values = [
        outage_exact(outage_params(scenario, RatePolicy.from_rate(rate), power, 1))
        for rate in np.linspace(0.25, 4.0, 16)
    ]
    assert all(later > earlier for earlier, later in zip(values, values[1:]))


def test_exact_decreasing_in_share():
    scenario = Scenario(stats=FIG2)
    rate = RatePolicy.from_rate(1.0)
    values = [
        outage_exact(outage_params(scenario, rate, PowerPolicy(alpha=alpha), 1))
        for alpha in np.linspace(0.05, 0.95, 19)
    ]
    assert all(later < earlier for earlier, later in zip(values, values[1:]))


def test_all_tiers_stay_in_unit_interval():
    rng = np.random.default_rng(20180417)
    for _ in range(10_000):
        rates = 10.0 ** rng.uniform(-2, 2, size=4)
        params = make_params(
            num_users=int(rng.integers(1, 11)),
            lambda_main=rates[0],
            mu_own_p=rates[1],
            mu_other_p=rates[2],
            mu_cross=rates[3],
            share=float(rng.uniform(0.01, 0.99)),
            gamma_th=float(10.0 ** rng.uniform(-2, 3)),
            rho=float(10.0 ** rng.uniform(-1, 4)),
        )
        for tier in FormulaTier:
            assert 0.0 <= outage(params, tier) <= 1.0


# --- приближения ---

def test_highitl_without_interference():
    assert outage_approx_highitl(with_gamma_x(1e-12)) == pytest.approx(0.0, abs=1e-9)


def test_highitl_singular_point():
    assert outage_approx_highitl(with_gamma_x(1.0)) == pytest.approx(0.5, abs=1e-15)
    assert highitl_term(1.0) == 0.5
    for t in (1.0 - 1e-4, 1.0 + 1e-4):
        assert highitl_term(t) == pytest.approx(0.5, abs=1e-4)


def test_highitl_approaches_exact_at_large_itl():
    scenario = Scenario(stats=FIG2, ip_db=40.0)
    params = outage_params(scenario, RatePolicy.from_rate(1.0), PowerPolicy(alpha=0.5), 1)
    assert outage_approx_highitl(params) == pytest.approx(outage_exact(params), abs=5e-3)


def test_tier_gap_shrinks_with_itl():
    gaps = []
    for ip_db in (20.0, 30.0, 40.0):
        params = outage_params(Scenario(stats=FIG2, ip_db=ip_db), RatePolicy.from_rate(1.0), PowerPolicy(0.5), 1)
        gaps.append(abs(outage_exact(params) - outage_approx_highitl(params)))
    assert gaps[0] > gaps[1] > gaps[2]


@pytest.mark.parametrize(
    "x, gamma_th, expected",
    [(1e-300, 1.0, 0.0), (1.0, 1.0, 0.5), (2.0, 3.0, 6.0 / 7.0)],
)
def test_rational_single_user(x, gamma_th, expected):
    params = with_gamma_x(x * gamma_th, gamma_th=gamma_th)
    assert outage_approx_rational(params) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_outage_dispatch():
    params = with_gamma_x(0.7, num_users=3)
    assert outage(params, "exact") == outage_exact(params)
    assert outage(params, FormulaTier.HIGHITL) == outage_approx_highitl(params)
    assert outage(params, "rational") == outage_approx_rational(params)


# --- параметры ---

def test_user_cap():
    with pytest.raises(OverflowRiskError):
        make_params(num_users=26)
    make_params(num_users=25)


@pytest.mark.parametrize(
    "override",
    [{"share": 0.0}, {"share": 1.5}, {"gamma_th": 0.0}, {"rho": -1.0}, {"lambda_main": float("nan")}],
)
def test_invalid_params(override):
    with pytest.raises(ParameterError):
        make_params(**override)


def test_network_two_swaps_arguments():
    scenario = Scenario(stats=FIG2, L=2, M=3)
    power = PowerPolicy(alpha=0.3)
    rate = RatePolicy.from_rate(1.0)
    first = outage_params(scenario, rate, power, 1)
    second = outage_params(scenario, rate, power, 2)
    assert (first.num_users, first.lambda_main, first.mu_own_p, first.mu_other_p, first.mu_cross) == (2, 8, 27, 27, 27)
    assert (second.num_users, second.lambda_main, second.mu_own_p, second.mu_other_p, second.mu_cross) == (3, 1, 27, 27, 64)
    assert first.share == 0.3
    assert second.share == pytest.approx(0.7)


def test_round_robin_uses_one_user():
    scenario = Scenario(stats=FIG2, L=5, M=7, selection=Selection.ROUND_ROBIN)
    params = outage_params(scenario, RatePolicy.from_rate(1.0), PowerPolicy(0.5), 2)
    assert params.num_users == 1


def test_silent_network_has_no_params():
    with pytest.raises(ParameterError):
        outage_params(Scenario(stats=FIG2), RatePolicy.from_rate(1.0), PowerPolicy(mode=Mode.SINGLE_1), 2)
    with pytest.raises(ParameterError):
        outage_params(Scenario(stats=FIG2), RatePolicy.from_rate(1.0), PowerPolicy(0.5), 3)


# --- пропускная способность ---

def test_throughput_without_outage_is_twice_rate():
    stats = ChannelStatistics(1.0, 1.0, 1e12, 1e12, 1.0, 1.0)
    rate = RatePolicy.from_rate(1.5)
    tau = sum_throughput(Scenario(stats=stats), rate, PowerPolicy(0.5), FormulaTier.HIGHITL)
    assert tau == pytest.approx(3.0, abs=1e-9)


def test_throughput_with_certain_outage_is_zero():
    tau = sum_throughput(Scenario(stats=FIG2), RatePolicy.from_rate(60.0), PowerPolicy(0.5))
    assert tau == pytest.approx(0.0, abs=1e-9)


def test_throughput_is_zero_at_zero_rate():
    assert sum_throughput(Scenario(stats=FIG2), RatePolicy.from_rate(0.0), PowerPolicy(0.5)) == 0.0


def test_single_network_mode_uses_only_active_network():
    scenario = Scenario(stats=FIG2)
    rate = RatePolicy.from_rate(1.0)
    tau = sum_throughput(scenario, rate, PowerPolicy(mode=Mode.SINGLE_2))
    a = 1.0 + 1.0 * 1.0 / (27.0 * 1.0 * 100.0)
    assert tau == pytest.approx(1.0 / a, rel=1e-12)
    assert analytics.single_network_throughput(scenario, rate, 2) == tau


def test_single_network_is_outage_free_under_approximations():
    scenario = Scenario(stats=FIG2, L=3, M=3)
    rate = RatePolicy.from_rate(2.0)
    for tier in (FormulaTier.HIGHITL, FormulaTier.RATIONAL):
        assert analytics.single_network_throughput(scenario, rate, 1, tier) == pytest.approx(2.0)


def test_concurrent_beats_single_at_fig2_optimum():
    scenario = Scenario(stats=FIG2)
    rate = RatePolicy.from_rate(1.0)
    alpha = alpha_star_closed_form(FIG2)
    concurrent = sum_throughput(scenario, rate, PowerPolicy(alpha))
    single = max(analytics.single_network_throughput(scenario, rate, n) for n in (1, 2))
    assert concurrent > single


# --- замкнутые формы ---

def test_closed_form_alpha():
    assert alpha_star_closed_form(FIG3A) == pytest.approx(0.1058, abs=5e-4)
    assert alpha_star_closed_form(FIG3B) == pytest.approx(0.9117, abs=5e-4)
    assert alpha_star_closed_form(ChannelStatistics(3, 3, 5, 5, 7, 7)) == 0.5


def test_closed_form_critical_rate():
    assert critical_rate_closed_form(FIG2) == pytest.approx(3.9724, abs=5e-4)
    assert critical_rate_closed_form(FIG3A) == pytest.approx(3.7037, abs=5e-4)
    assert critical_rate_closed_form(ChannelStatistics(1, 1, 1, 1, 2, 5)) == 1.0


def test_closed_forms_depend_on_ratios_only():
    for stats in (FIG2, FIG3A, FIG3B):
        for factor in (0.01, 7.5, 1e3):
            scaled = stats.scaled(factor)
            assert alpha_star_closed_form(scaled) == pytest.approx(alpha_star_closed_form(stats), rel=1e-12)
            assert critical_rate_closed_form(scaled) == pytest.approx(critical_rate_closed_form(stats), rel=1e-12)


def test_closed_form_applicability():
    assert analytics.closed_form_applicable(Scenario(stats=FIG2))
    assert not analytics.closed_form_applicable(Scenario(stats=FIG2, L=3, M=1))
    assert analytics.closed_form_applicable(Scenario(stats=FIG2, L=3, M=4, selection="round-robin"))


@pytest.mark.parametrize("rate_bpcu, concave", [(1.0, True), (2.0, True), (5.0, False)])
def test_rational_objective_shape(rate_bpcu, concave):
    scenario = Scenario(stats=FIG2)
    rate = RatePolicy.from_rate(rate_bpcu)
    alphas = np.linspace(0.001, 0.999, 1000)
    tau = np.array([sum_throughput(scenario, rate, PowerPolicy(a), FormulaTier.RATIONAL) for a in alphas])
    second = tau[:-2] - 2.0 * tau[1:-1] + tau[2:]

    if concave:
        best = int(np.argmax(tau))
        assert 0 < best < len(alphas) - 1
        assert abs(alphas[best] - alpha_star_closed_form(FIG2)) < 1e-2
        assert second[best - 1] < 0
    else:
        worst = int(np.argmin(tau))
        assert 0 < worst < len(alphas) - 1
        assert abs(alphas[worst] - alpha_star_closed_form(FIG2)) < 1e-2
        assert second[worst - 1] > 0


# --- квадратуры ---

def test_exact_matches_quadrature_on_fig2():
    scenario = Scenario(stats=FIG2)
    rate = RatePolicy.from_rate(1.0)
    for network in (1, 2):
        params = outage_params(scenario, rate, PowerPolicy(0.5), network)
        assert outage_exact(params) == pytest.approx(outage_by_quadrature(params), abs=1e-6)


def test_exact_matches_quadrature_at_random_points():
    rng = np.random.default_rng(4)
    for _ in range(5):
        rates = 10.0 ** rng.uniform(-0.5, 1.5, size=4)
        params = make_params(
            num_users=int(rng.integers(1, 4)),
            lambda_main=rates[0],
            mu_own_p=rates[1],
            mu_other_p=rates[2],
            mu_cross=rates[3],
            share=float(rng.uniform(0.2, 0.8)),
            gamma_th=float(2.0 ** rng.uniform(0.5, 3.0) - 1.0),
            rho=float(10.0 ** rng.uniform(1, 3)),
        )
        assert outage_exact(params) == pytest.approx(outage_by_quadrature(params), abs=1e-6)


@pytest.mark.parametrize(
    "overrides",
    [
        dict(num_users=2, lambda_main=25.0, mu_other_p=0.5, mu_cross=0.4, share=0.3, gamma_th=6.0, rho=30.0),
        dict(num_users=1, lambda_main=30.0, mu_own_p=0.4, mu_other_p=20.0, share=0.5, gamma_th=3.0, rho=50.0),
        dict(num_users=3, lambda_main=0.05, mu_own_p=20.0, mu_cross=30.0, share=0.8, gamma_th=0.5, rho=1000.0),
    ],
    ids=["near-certain-outage", "steep-ratio", "rare-outage"],
)
def test_quadrature_resolves_extreme_outage(overrides):
    params = make_params(**overrides)
    exact = outage_exact(params)
    assert outage_by_quadrature(params) == pytest.approx(exact, abs=1e-7)
