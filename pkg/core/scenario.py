# core/scenario.py

"""
Конфигурация двух вторичных сетей и первичного приёмника.
Геометрия переводится в параметры экспоненциальных распределений
усилений каналов, которыми пользуются все остальные модули.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

from core.errors import InvalidGeometryError, InvalidRateError, ParameterError


class Selection(str, Enum):
    """Дисциплина выбора приёмника"""
    BEST_USER = "best-user"
    ROUND_ROBIN = "round-robin"


class Mode(str, Enum):
    """Режим работы передатчиков"""
    CONCURRENT = "concurrent"
    SINGLE_1 = "single-network-1"
    SINGLE_2 = "single-network-2"

    @property
    def active_network(self) -> Optional[int]:
        if self is Mode.SINGLE_1:
            return 1
        if self is Mode.SINGLE_2:
            return 2
        return None


class FormulaTier(str, Enum):
    """Уровень аналитической формулы вероятности отказа"""
    EXACT = "exact"
    HIGHITL = "highitl"
    RATIONAL = "rational"


def _positive(name, value, error=ParameterError):
    if not isinstance(value, (int, float)) or math.isnan(value) or value <= 0:
        raise error(f"{name} должен быть строго положительным, получено {value!r}")


@dataclass(frozen=True)
class Geometry:
    """Нормированные расстояния и показатель потерь на трассе"""
    d11: float
    d22: float
    r12: float
    r21: float
    r1P: float
    r2P: float
    phi: float = 3.0

    def __post_init__(self):
        for name in ("d11", "d22", "r12", "r21", "r1P", "r2P", "phi"):
            _positive(name, getattr(self, name), InvalidGeometryError)


@dataclass(frozen=True)
class ChannelStatistics:
    """Параметры интенсивности шести экспоненциальных усилений (среднее = 1/rate)"""
    lambda11: float
    lambda22: float
    mu12: float
    mu21: float
    mu1P: float
    mu2P: float

    def __post_init__(self):
        for name in ("lambda11", "lambda22", "mu12", "mu21", "mu1P", "mu2P"):
            _positive(name, getattr(self, name))

    def scaled(self, factor: float) -> "ChannelStatistics":
        """Все шесть интенсивностей, умноженные на общий множитель"""
        _positive("factor", factor)
        return ChannelStatistics(
            lambda11=self.lambda11 * factor,
            lambda22=self.lambda22 * factor,
            mu12=self.mu12 * factor,
            mu21=self.mu21 * factor,
            mu1P=self.mu1P * factor,
            mu2P=self.mu2P * factor,
        )

    def to_dict(self) -> dict:
        return {
            "lambda11": self.lambda11,
            "lambda22": self.lambda22,
            "mu12": self.mu12,
            "mu21": self.mu21,
            "mu1P": self.mu1P,
            "mu2P": self.mu2P,
        }


@dataclass(frozen=True)
class Scenario:
    """Статистика каналов, число пользователей и ITL"""
    stats: ChannelStatistics
    L: int = 1
    M: int = 1
    ip_db: float = 20.0
    noise_power: float = 1.0
    selection: Selection = Selection.BEST_USER

    def __post_init__(self):
        for name in ("L", "M"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ParameterError(f"{name} должно быть целым >= 1, получено {value!r}")
        if self.noise_power != 1.0:
            raise ParameterError("мощность шума фиксирована: sigma_n^2 = 1")
        if not math.isfinite(self.ip_db):
            raise ParameterError(f"ip_db должно быть конечным, получено {self.ip_db!r}")
        try:
            rho = ip_linear(self.ip_db)
        except OverflowError:
            rho = math.inf
        if not (0.0 < rho < math.inf):
            raise ParameterError(f"ip_db = {self.ip_db!r} дБ вне представимого диапазона ITL")
        object.__setattr__(self, "selection", Selection(self.selection))

    @property
    def rho(self) -> float:
        """I_P / sigma_n^2"""
        return ip_linear(self.ip_db) / self.noise_power

    def with_users(self, L: int, M: int) -> "Scenario":
        return replace(self, L=L, M=M)

    def with_stats(self, stats: ChannelStatistics) -> "Scenario":
        return replace(self, stats=stats)

    def with_ip_db(self, ip_db: float) -> "Scenario":
        return replace(self, ip_db=ip_db)


@dataclass(frozen=True)
class RatePolicy:
    """Фиксированная скорость R и порог SINR 2^R - 1"""
    rate_bpcu: float
    gamma_th: float = field(init=False)

    def __post_init__(self):
        if not isinstance(self.rate_bpcu, (int, float)) or math.isnan(self.rate_bpcu) or self.rate_bpcu < 0:
            raise InvalidRateError(f"скорость должна быть неотрицательной, получено {self.rate_bpcu!r}")
        object.__setattr__(self, "gamma_th", 2.0 ** self.rate_bpcu - 1.0)

    @classmethod
    def from_rate(cls, rate_bpcu: float) -> "RatePolicy":
        return cls(rate_bpcu=float(rate_bpcu))


@dataclass(frozen=True)
class PowerPolicy:
    """Доля ITL для S1 (alpha) и режим работы"""
    alpha: float = 0.5
    mode: Mode = Mode.CONCURRENT

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.mode is Mode.CONCURRENT and not (0.0 < self.alpha < 1.0):
            raise ParameterError(f"alpha должно лежать в (0, 1), получено {self.alpha!r}")

    @property
    def concurrent(self) -> bool:
        return self.mode is Mode.CONCURRENT

    def share(self, network: int) -> float:
        """Доля ITL сети network; молчащая сеть получает 0"""
        active = self.mode.active_network
        if active is not None:
            return 1.0 if network == active else 0.0
        return self.alpha if network == 1 else 1.0 - self.alpha


def channel_stats_from_geometry(geom: Geometry) -> ChannelStatistics:
    """Интенсивность = расстояние^phi (среднее усиление = расстояние^-phi)"""
    if not isinstance(geom, Geometry):
        raise InvalidGeometryError("ожидается Geometry")
    return ChannelStatistics(
        lambda11=geom.d11 ** geom.phi,
        lambda22=geom.d22 ** geom.phi,
        mu12=geom.r12 ** geom.phi,
        mu21=geom.r21 ** geom.phi,
        mu1P=geom.r1P ** geom.phi,
        mu2P=geom.r2P ** geom.phi,
    )


def gamma_threshold(rate_bpcu: float) -> float:
    """Порог SINR для фиксированной скорости R"""
    _positive("rate_bpcu", rate_bpcu, InvalidRateError)
    return 2.0 ** rate_bpcu - 1.0


def ip_linear(ip_db: float) -> float:
    """ITL из дБ относительно шума в линейный масштаб"""
    return 10.0 ** (ip_db / 10.0)
