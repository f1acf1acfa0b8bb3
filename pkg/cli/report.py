# cli/report.py

"""Текстовые отчёты команд optimize и validate"""

import json
from pathlib import Path

from core.errors import OutputError
from simple_translation import translation


def tr(key, default=None, **kwargs):
    """Вспомогательная функция для перевода с дефолтным значением"""
    return translation.t(key, default=default if default is not None else key, **kwargs)


def _line(label, value):
    return f"  {label}: {value}"


def format_optimize_report(result: dict) -> str:
    """Отчёт оптимизации; числа и режимы не переводятся"""
    lines = [tr("optimize.title", name=result["scenario"]), _line(tr("optimize.rate"), f"{result['rate_bpcu']:g}")]

    if result["closed_form_applicable"]:
        lines.append(_line(tr("optimize.alpha_closed"), f"{result['alpha_star_closed']:.4f}"))
        lines.append(_line(tr("optimize.rc_closed"), f"{result['critical_rate_closed']:.4f}"))
    else:
        lines.append(_line(tr("optimize.alpha_closed"), tr("optimize.closed_na")))
        lines.append(_line(tr("optimize.rc_closed"), tr("optimize.closed_na")))

    tier = result["tier"]
    lines.append(_line(tr("optimize.alpha_numeric", tier=tier), f"{result['alpha_star_numeric']:.4f}"))
    lines.append(_line(tr("optimize.tau_numeric"), f"{result['tau_at_alpha_star']:.4f}"))
    lines.append(_line(tr("optimize.tau_exact"), f"{result['tau_exact_at_alpha_star']:.4f}"))
    lines.append(_line(tr("optimize.tau_single"), f"{result['tau_single']:.4f}"))

    if result["critical_rate_crossover"]:
        lines.append(_line(tr("optimize.rc_numeric", tier=tier), f"{result['critical_rate_numeric']:.4f}"))
    else:
        lo, hi = result["critical_rate_bracket"]
        lines.append(_line(tr("optimize.rc_numeric", tier=tier), tr("optimize.no_crossover", lo=lo, hi=hi)))

    lines.append(_line(tr("optimize.gain"), f"{result['gain']:.4f}"))
    lines.append(_line(tr("optimize.recommendation"), result["recommendation"]))
    return "\n".join(lines)


def format_validation_report(report, name: str, trials: int, seed: int) -> str:
    lines = [tr("validate.title", name=name, trials=trials, seed=seed)]
    failed = 0
    for check in report.checks:
        status = tr("validate.passed") if check.passed else tr("validate.failed")
        failed += not check.passed
        lines.append(f"  [{status}] {check.name}: {check.detail}")
    lines.append(tr("validate.summary_ok") if failed == 0 else tr("validate.summary_fail", count=failed))
    return "\n".join(lines)


def save_json(data: dict, path):
    """Сохранить отчёт в JSON"""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, ensure_ascii=False, indent=2)
    except OSError as e:
        raise OutputError(f"не удалось записать {path}: {e}") from e
