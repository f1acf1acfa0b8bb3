# tests/test_sweeps.py
import numpy as np
import pytest

from core.analytics import single_network_throughput
from core.errors import OutputError, ParameterError
from core.optimizer import best_single_network
from core.scenario import FormulaTier, RatePolicy
from core.sweeps import SweepResult, alpha_grid, parse_rate_range, sweep_alpha, sweep_rate

SEED = 20180417


def test_parse_rate_range():
    np.testing.assert_allclose(parse_rate_range("0.5:10:20"), np.arange(1, 21) * 0.5)
    assert list(parse_rate_range("2:2:1")) == [2.0]


@pytest.mark.parametrize("text", ["1:2", "a:b:c", "0:5:3", "5:1:3", "1:2:0"])
def test_parse_rate_range_rejects(text):
    with pytest.raises(ParameterError):
        parse_rate_range(text)


def test_alpha_grid():
    assert list(alpha_grid(1)) == [0.5]
    grid = alpha_grid(3)
    np.testing.assert_allclose(grid, [0.01, 0.5, 0.99])
    with pytest.raises(ParameterError):
        alpha_grid(0)


def test_sweep_alpha_columns_and_rows(fig2):
    result = sweep_alpha(fig2.scenario, RatePolicy.from_rate(1.0), alpha_grid(3), 2000, SEED)
    assert result.columns == ("alpha", "tau_exact", "tau_rational", "tau_mc", "tau_mc_se")
    assert len(result.rows) == 3


def test_sweep_alpha_below_critical_rate_has_interior_peak(fig2):
    result = sweep_alpha(fig2.scenario, RatePolicy.from_rate(1.0), alpha_grid(21), 5000, SEED)
    tau = result.column("tau_exact")
    best = int(np.argmax(tau))
    assert 0 < best < len(tau) - 1
    assert tau[best] > tau[0] and tau[best] > tau[-1]


def test_sweep_alpha_above_critical_rate_prefers_single_network(fig2):
    rate = RatePolicy.from_rate(5.0)
    result = sweep_alpha(fig2.scenario, rate, alpha_grid(21), 5000, SEED)
    single, _ = best_single_network(fig2.scenario, rate, FormulaTier.EXACT)
    assert single > result.column("tau_exact").max()


def test_sweep_alpha_endpoint_rows_are_single_networks(fig2):
    rate = RatePolicy.from_rate(5.0)
    result = sweep_alpha(fig2.scenario, rate, alpha_grid(5), 2000, SEED, endpoints=True)
    alphas = result.column("alpha")
    assert len(alphas) == 7
    assert alphas[0] == 0.0 and alphas[-1] == 1.0

    tau = result.column("tau_exact")
    assert tau[0] == pytest.approx(single_network_throughput(fig2.scenario, rate, 2), rel=1e-12)
    assert tau[-1] == pytest.approx(single_network_throughput(fig2.scenario, rate, 1), rel=1e-12)
    assert max(tau[0], tau[-1]) > tau[1:-1].max()


def test_sweep_rows_bounded_by_twice_rate(fig4):
    result = sweep_rate(fig4.scenario, fig4.power, parse_rate_range("0.5:6:6"), [1, 3], 2000, SEED)
    rates = result.column("rate")
    for name in result.columns[1:]:
        if name.startswith("tau_mc_se"):
            continue
        values = result.column(name)
        assert np.all(values >= 0.0)
        assert np.all(values <= 2.0 * rates + 1e-12)


def test_sweep_rate_layout(fig4):
    result = sweep_rate(fig4.scenario, fig4.power, [1.0, 2.0], [1, 5], 1000, SEED)
    assert result.columns == (
        "rate",
        "tau_exact_n1", "tau_mc_n1", "tau_mc_se_n1",
        "tau_exact_n5", "tau_mc_n5", "tau_mc_se_n5",
    )
    assert [row[0] for row in result.rows] == [1.0, 2.0]


def test_sweep_rate_needs_users(fig4):
    with pytest.raises(ParameterError):
        sweep_rate(fig4.scenario, fig4.power, [1.0], [], 1000, SEED)


def test_parallel_sweep_keeps_grid_order(fig2):
    rate = RatePolicy.from_rate(2.0)
    serial = sweep_alpha(fig2.scenario, rate, alpha_grid(7), 2000, SEED)
    parallel = sweep_alpha(fig2.scenario, rate, alpha_grid(7), 2000, SEED, workers=4)
    assert parallel.rows == serial.rows


def test_csv_format(tmp_path):
    result = SweepResult(columns=("alpha", "tau"), rows=[(0.1, 1.0 / 3.0), (0.5, 2.0)])
    path = tmp_path / "nested" / "out.csv"
    result.to_csv(path)
    assert path.read_bytes() == b"alpha,tau\n0.1,0.333333333\n0.5,2\n"


def test_csv_unwritable(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OutputError):
        SweepResult(columns=("a",), rows=[(1.0,)]).to_csv(blocker / "out.csv")
