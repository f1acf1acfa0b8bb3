# tests/conftest.py
import os
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, os.fspath(ROOT))

from core.scenario import ChannelStatistics, Scenario  # noqa: E402
from core.scenario_file import load_scenario  # noqa: E402

SCENARIOS = ROOT / "scenarios"


@pytest.fixture
def scenario_dir():
    return SCENARIOS


@pytest.fixture
def fig2():
    return load_scenario(SCENARIOS / "fig2.scn")


@pytest.fixture
def fig3a():
    return load_scenario(SCENARIOS / "fig3a.scn")


@pytest.fixture
def fig3b():
    return load_scenario(SCENARIOS / "fig3b.scn")


@pytest.fixture
def fig4():
    return load_scenario(SCENARIOS / "fig4.scn")


@pytest.fixture
def unit_scenario():
    """Все шесть интенсивностей равны 1, ITL 20 дБ"""
    return Scenario(stats=ChannelStatistics(1.0, 1.0, 1.0, 1.0, 1.0, 1.0), ip_db=20.0)
