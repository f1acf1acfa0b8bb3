# cli/commands.py

"""
Подкоманды: sweep-alpha, sweep-rate, optimize, validate.
Каждая возвращает код завершения.
"""

import logging

from cli.report import format_optimize_report, format_validation_report, save_json, tr
from core import analytics
from core.errors import ParameterError
from core.optimizer import alpha_star_numeric, best_single_network, critical_rate_numeric, recommend
from core.scenario import FormulaTier, RatePolicy
from core.scenario_file import load_scenario
from core.settings import section
from core.sweeps import alpha_grid, parse_rate_range, sweep_alpha, sweep_rate
from core.validation import run_validation

logger = logging.getLogger(__name__)


def _first(*values):
    for value in values:
        if value is not None:
            return value
    return None


def _simulation_options(config):
    simulation = section(config, "simulation")
    return {
        "block_trials": int(simulation["block_trials"]),
        "min_trials": int(simulation["min_trials"]),
    }


def _trials_and_seed(args, scenario_config, config):
    simulation = section(config, "simulation")
    trials = int(_first(args.trials, scenario_config.trials, simulation["trials"]))
    seed = int(_first(args.seed, scenario_config.seed, simulation["seed"]))
    logger.debug("Сценарий %s: %d испытаний, seed %d", scenario_config.name, trials, seed)
    return trials, seed


def _rate(args, scenario_config):
    rate_bpcu = _first(getattr(args, "rate", None), scenario_config.rate.rate_bpcu if scenario_config.rate else None)
    if rate_bpcu is None:
        raise ParameterError("скорость не задана ни флагом --rate, ни ключом rate_bpcu сценария")
    return RatePolicy.from_rate(rate_bpcu)


def _tier(value):
    try:
        return FormulaTier(value)
    except ValueError:
        names = ", ".join(t.value for t in FormulaTier)
        raise ParameterError(f"неизвестный уровень формулы {value!r}, ожидается одно из: {names}") from None


def _workers(args, config):
    return int(_first(args.workers, section(config, "simulation")["workers"]))


def parse_users(text):
    """«1,3,5,7,10» -> [1, 3, 5, 7, 10]"""
    try:
        users = [int(part) for part in str(text).split(",") if part.strip()]
    except ValueError as e:
        raise ParameterError(f"список пользователей должен быть вида 1,3,5: {text!r}") from e
    if not users:
        raise ParameterError("список числа пользователей пуст")
    if any(n < 1 for n in users):
        raise ParameterError(f"число пользователей должно быть >= 1: {text!r}")
    return users


def cmd_sweep_alpha(args, config) -> int:
    """tau_sum(alpha) в CSV"""
    scenario_config = load_scenario(args.scenario)
    sweep = section(config, "sweep")
    trials, seed = _trials_and_seed(args, scenario_config, config)
    grid = alpha_grid(int(_first(args.grid, sweep["grid"])), sweep["alpha_min"], sweep["alpha_max"])

    result = sweep_alpha(
        scenario_config.scenario,
        _rate(args, scenario_config),
        grid,
        trials,
        seed,
        workers=_workers(args, config),
        endpoints=args.endpoints,
        **_simulation_options(config),
    )
    result.to_csv(args.out)
    print(tr("cli.written", path=args.out))
    return 0


def cmd_sweep_rate(args, config) -> int:
    """tau_sum(R) для нескольких L = M в CSV"""
    scenario_config = load_scenario(args.scenario)
    sweep = section(config, "sweep")
    trials, seed = _trials_and_seed(args, scenario_config, config)
    users = parse_users(_first(args.users, ",".join(str(n) for n in sweep["users"])))
    rates = parse_rate_range(_first(args.rates, sweep["rates"]))

    result = sweep_rate(
        scenario_config.scenario,
        scenario_config.power,
        rates,
        users,
        trials,
        seed,
        workers=_workers(args, config),
        **_simulation_options(config),
    )
    result.to_csv(args.out)
    print(tr("cli.written", path=args.out))
    return 0


def optimize_summary(scenario_config, rate, tier, optimizer) -> dict:
    """Все величины отчёта optimize одним словарём"""
    scenario = scenario_config.scenario
    search = {
        "grid_points": int(optimizer["grid_points"]),
        "alpha_min": float(optimizer["alpha_min"]),
        "alpha_max": float(optimizer["alpha_max"]),
        "alpha_tol": float(optimizer["alpha_tol"]),
    }
    optimum = alpha_star_numeric(scenario, rate, tier, **search)
    tau_single, _ = best_single_network(scenario, rate, tier)
    choice = recommend(scenario, rate, tier, **search)
    critical = critical_rate_numeric(
        scenario,
        tier,
        rate_min=float(optimizer["rate_min"]),
        rate_max=float(optimizer["rate_max"]),
        rate_tol=float(optimizer["rate_tol"]),
        **search,
    )

    applicable = analytics.closed_form_applicable(scenario)
    return {
        "scenario": scenario_config.name,
        "rate_bpcu": rate.rate_bpcu,
        "tier": tier.value,
        "closed_form_applicable": applicable,
        "alpha_star_closed": analytics.alpha_star_closed_form(scenario.stats) if applicable else None,
        "critical_rate_closed": analytics.critical_rate_closed_form(scenario.stats) if applicable else None,
        "alpha_star_numeric": optimum.alpha,
        "tau_at_alpha_star": optimum.tau,
        "tau_exact_at_alpha_star": optimum.tau_exact,
        "tau_single": tau_single,
        "critical_rate_numeric": critical.rate,
        "critical_rate_crossover": critical.crossover,
        "critical_rate_bracket": [float(optimizer["rate_min"]), float(optimizer["rate_max"])],
        "gain": optimum.tau - tau_single,
        "recommendation": choice.mode.value,
    }


def cmd_optimize(args, config) -> int:
    """Замкнутые и численные alpha*, R_c и рекомендация режима"""
    scenario_config = load_scenario(args.scenario)
    optimizer = section(config, "optimizer")
    tier = _tier(_first(args.tier, optimizer["tier"]))

    summary = optimize_summary(scenario_config, _rate(args, scenario_config), tier, optimizer)
    print(format_optimize_report(summary))
    if args.out:
        save_json(summary, args.out)
        print(tr("cli.written", path=args.out))
    return 0


def cmd_validate(args, config) -> int:
    """Проверки аналитики против Монте-Карло; 0 только если всё прошло"""
    scenario_config = load_scenario(args.scenario)
    validation = section(config, "validation")
    trials, seed = _trials_and_seed(args, scenario_config, config)

    report = run_validation(
        scenario_config.scenario,
        trials,
        seed,
        alphas=validation["alphas"],
        rates=validation["rates"],
        min_passing=int(validation["min_passing"]),
        quadrature_tol=float(validation["quadrature_tol"]),
        workers=_workers(args, config),
        **_simulation_options(config),
    )
    print(format_validation_report(report, scenario_config.name, trials, seed))
    return 0 if report.passed else 1


COMMANDS = {
    "sweep-alpha": cmd_sweep_alpha,
    "sweep-rate": cmd_sweep_rate,
    "optimize": cmd_optimize,
    "validate": cmd_validate,
}
