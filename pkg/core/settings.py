# core/settings.py

import copy
import json
import logging
from pathlib import Path

logger = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.json"


def get_default_config():
    """Получить конфигурацию по умолчанию"""
    return {
        "app": {
            "language": "ru"
        },
        "debug": {
            "log_level": "info"
        },
        "simulation": {
            "trials": 1000000,
            "seed": 20180417,
            "min_trials": 1000,
            "block_trials": 65536,
            "workers": 1
        },
        "sweep": {
            "grid": 21,
            "users": [1, 3, 5, 7, 10],
            "rates": "0.5:10:20",
            "alpha_min": 0.01,
            "alpha_max": 0.99
        },
        "optimizer": {
            "tier": "rational",
            "grid_points": 101,
            "alpha_min": 0.005,
            "alpha_max": 0.995,
            "alpha_tol": 1e-5,
            "rate_min": 0.01,
            "rate_max": 20.0,
            "rate_tol": 1e-3
        },
        "validation": {
            "alphas": [0.1, 0.3, 0.5, 0.7, 0.9],
            "rates": [0.5, 1.375, 2.25, 3.125, 4.0],
            "min_passing": 24,
            "quadrature_tol": 1e-6
        }
    }


def load_config(path=None):
    """Загрузить конфигурацию: значения по умолчанию, поверх них разделы из файла"""
    config = get_default_config()
    config_path = Path(path) if path else CONFIG_PATH

    if not config_path.exists():
        if path:
            logger.warning("Файл конфигурации %s не найден, используются значения по умолчанию", config_path)
        return config

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            loaded = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.warning("Ошибка загрузки конфигурации %s: %s", config_path, e)
        return config

    for section, values in loaded.items():
        if isinstance(values, dict) and isinstance(config.get(section), dict):
            config[section].update(values)
        else:
            config[section] = values
    return config


def section(config, name):
    """Копия раздела конфигурации (чтобы вызывающий код не менял общий словарь)"""
    return copy.deepcopy(config.get(name, get_default_config().get(name, {})))
