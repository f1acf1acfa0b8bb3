# core/scenario_file.py

"""
Файлы сценариев (*.scn): плоский формат «ключ = значение», комментарии через #.
Канальная часть задаётся либо шестью расстояниями и phi, либо шестью
интенсивностями lambda11 ... mu2P. Если заданы обе, побеждает геометрия,
но они обязаны совпадать.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from core.errors import ModelError, ScenarioFileError
from core.scenario import (
    ChannelStatistics,
    Geometry,
    Mode,
    PowerPolicy,
    RatePolicy,
    Scenario,
    Selection,
    channel_stats_from_geometry,
)

logger = logging.getLogger(__name__)

GEOMETRY_KEYS = ("d11", "d22", "r12", "r21", "r1P", "r2P")
RATE_KEYS = ("lambda11", "lambda22", "mu12", "mu21", "mu1P", "mu2P")
OTHER_KEYS = ("phi", "L", "M", "ip_db", "rate_bpcu", "alpha", "mode", "selection", "trials", "seed")
KNOWN_KEYS = GEOMETRY_KEYS + RATE_KEYS + OTHER_KEYS

# Допуск согласованности геометрии и явно заданных интенсивностей
CONSISTENCY_RTOL = 1e-9


@dataclass(frozen=True)
class ScenarioConfig:
    """Всё, что описано в файле сценария"""
    scenario: Scenario
    power: PowerPolicy
    geometry: Optional[Geometry] = None
    rate: Optional[RatePolicy] = None
    trials: Optional[int] = None
    seed: Optional[int] = None
    name: str = ""

    def to_dict(self) -> dict:
        """Преобразовать сценарий в плоский словарь ключей файла"""
        data = {}
        if self.geometry is not None:
            for key in GEOMETRY_KEYS:
                data[key] = getattr(self.geometry, key)
            data["phi"] = self.geometry.phi
        else:
            data.update(self.scenario.stats.to_dict())
        data["L"] = self.scenario.L
        data["M"] = self.scenario.M
        data["ip_db"] = self.scenario.ip_db
        data["selection"] = self.scenario.selection.value
        if self.rate is not None:
            data["rate_bpcu"] = self.rate.rate_bpcu
        data["alpha"] = self.power.alpha
        data["mode"] = self.power.mode.value
        if self.trials is not None:
            data["trials"] = self.trials
        if self.seed is not None:
            data["seed"] = self.seed
        return data

    @classmethod
    def from_dict(cls, data: dict, name: str = "") -> "ScenarioConfig":
        """Создать сценарий из словаря ключей файла"""
        unknown = sorted(set(data) - set(KNOWN_KEYS))
        if unknown:
            raise ScenarioFileError(f"неизвестные ключи: {', '.join(unknown)}")

        try:
            geometry = None
            has_geometry = any(key in data for key in GEOMETRY_KEYS)
            has_rates = any(key in data for key in RATE_KEYS)

            if has_geometry:
                missing = [key for key in GEOMETRY_KEYS if key not in data]
                if missing:
                    raise ScenarioFileError(f"не хватает расстояний: {', '.join(missing)}")
                geometry = Geometry(
                    **{key: float(data[key]) for key in GEOMETRY_KEYS},
                    phi=float(data.get("phi", 3.0)),
                )
                stats = channel_stats_from_geometry(geometry)
                if has_rates:
                    _check_consistency(stats, data)
            elif has_rates:
                missing = [key for key in RATE_KEYS if key not in data]
                if missing:
                    raise ScenarioFileError(f"не хватает интенсивностей: {', '.join(missing)}")
                stats = ChannelStatistics(**{key: float(data[key]) for key in RATE_KEYS})
            else:
                raise ScenarioFileError("нужны либо шесть расстояний и phi, либо шесть интенсивностей")

            scenario = Scenario(
                stats=stats,
                L=_integer(data, "L", 1),
                M=_integer(data, "M", 1),
                ip_db=float(data.get("ip_db", 20.0)),
                selection=Selection(data.get("selection", Selection.BEST_USER.value)),
            )
            power = PowerPolicy(
                alpha=float(data.get("alpha", 0.5)),
                mode=Mode(data.get("mode", Mode.CONCURRENT.value)),
            )
            rate = RatePolicy.from_rate(float(data["rate_bpcu"])) if "rate_bpcu" in data else None
            trials = _integer(data, "trials")
            seed = _integer(data, "seed")
        except ModelError:
            raise
        except (TypeError, ValueError) as e:
            raise ScenarioFileError(f"некорректное значение: {e}") from e

        return cls(
            scenario=scenario,
            power=power,
            geometry=geometry,
            rate=rate,
            trials=trials,
            seed=seed,
            name=name,
        )


def _integer(data: dict, key: str, default=None):
    """Целое значение ключа; дробные числа не усекаются, а отвергаются"""
    if key not in data:
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioFileError(f"{key} должно быть целым, получено {value!r}")
    if isinstance(value, float):
        if not value.is_integer():
            raise ScenarioFileError(f"{key} должно быть целым, получено {value!r}")
        value = int(value)
    return value


def _check_consistency(stats: ChannelStatistics, data: dict):
    for key in RATE_KEYS:
        if key not in data:
            continue
        expected = getattr(stats, key)
        given = float(data[key])
        if not math.isclose(expected, given, rel_tol=CONSISTENCY_RTOL):
            raise ScenarioFileError(
                f"{key} = {given} не совпадает с геометрией ({expected})"
            )


def _parse_value(raw: str):
    text = raw.strip()
    for convert in (int, float):
        try:
            return convert(text)
        except ValueError:
            pass
    return text


def parse_scenario(text: str, name: str = "") -> ScenarioConfig:
    """Разобрать текст файла сценария"""
    data = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioFileError(f"{name or 'сценарий'}:{number}: ожидается «ключ = значение»")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ScenarioFileError(f"{name or 'сценарий'}:{number}: пустой ключ или значение")
        if key in data:
            raise ScenarioFileError(f"{name or 'сценарий'}:{number}: ключ {key} повторяется")
        data[key] = _parse_value(value)
    return ScenarioConfig.from_dict(data, name=name)


def load_scenario(path) -> ScenarioConfig:
    """Загрузить сценарий из файла"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioFileError(f"не удалось прочитать {path}: {e}") from e
    config = parse_scenario(text, name=path.stem)
    logger.debug("Загружен сценарий %s: %s", path, config.scenario.stats)
    return config


def save_scenario(config: ScenarioConfig, path):
    """Сохранить сценарий в файл"""
    path = Path(path)
    lines = [f"# {config.name}" if config.name else "# scenario"]
    for key, value in config.to_dict().items():
        lines.append(f"{key} = {value!r}" if isinstance(value, float) else f"{key} = {value}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info("Сценарий сохранён в %s", path)
