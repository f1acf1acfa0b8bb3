# core/errors.py

"""Исключения модели сосуществующих вторичных сетей"""


class ModelError(Exception):
    """Базовая ошибка библиотеки"""


class ParameterError(ModelError, ValueError):
    """Нарушен инвариант параметра"""


class InvalidGeometryError(ParameterError):
    """Неположительное расстояние или показатель потерь"""


class InvalidRateError(ParameterError):
    """Неположительная скорость передачи"""


class OverflowRiskError(ParameterError):
    """Слишком много пользователей для знакопеременной биномиальной суммы"""


class TrialsTooSmallError(ParameterError):
    """Слишком мало испытаний Монте-Карло"""


class ScenarioFileError(ModelError):
    """Файл сценария не удалось разобрать"""


class OutputError(ModelError):
    """Не удалось записать результат"""
