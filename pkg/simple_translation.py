# simple_translation.py

import json
import logging
import os

logger = logging.getLogger(__name__)


class SimpleTranslation:
    """ПРОСТЕЙШИЙ менеджер переводов для отчётов командной строки"""

    BUILTIN = {
        "ru": {
            "optimize": {
                "title": "ОПТИМИЗАЦИЯ: {name}",
                "rate": "Фиксированная скорость R, бит/канал",
                "alpha_closed": "alpha* (замкнутая форма)",
                "rc_closed": "R_c (замкнутая форма)",
                "closed_na": "не применимо (нужно L = M = 1 или круговое обслуживание)",
                "alpha_numeric": "alpha* (численно, {tier})",
                "tau_numeric": "tau_sum при alpha*",
                "tau_exact": "tau_sum при alpha* (точная формула)",
                "tau_single": "tau лучшей одиночной сети",
                "rc_numeric": "R_c (численно, {tier})",
                "no_crossover": "пересечения на [{lo}, {hi}] нет",
                "recommendation": "Рекомендация",
                "gain": "Выигрыш одновременной передачи, бит/канал"
            },
            "validate": {
                "title": "ПРОВЕРКА: {name}, {trials} испытаний, seed {seed}",
                "passed": "ПРОЙДЕНО",
                "failed": "ПРОВАЛ",
                "summary_ok": "Все проверки пройдены",
                "summary_fail": "Провалено проверок: {count}"
            },
            "cli": {
                "error": "Ошибка",
                "written": "Записано: {path}"
            }
        },
        "en": {
            "optimize": {
                "title": "OPTIMIZATION: {name}",
                "rate": "Fixed rate R, bpcu",
                "alpha_closed": "alpha* (closed form)",
                "rc_closed": "R_c (closed form)",
                "closed_na": "not applicable (needs L = M = 1 or round-robin)",
                "alpha_numeric": "alpha* (numeric, {tier})",
                "tau_numeric": "tau_sum at alpha*",
                "tau_exact": "tau_sum at alpha* (exact formula)",
                "tau_single": "best single-network tau",
                "rc_numeric": "R_c (numeric, {tier})",
                "no_crossover": "no crossover on [{lo}, {hi}]",
                "recommendation": "Recommendation",
                "gain": "Concurrent gain, bpcu"
            },
            "validate": {
                "title": "VALIDATION: {name}, {trials} trials, seed {seed}",
                "passed": "PASS",
                "failed": "FAIL",
                "summary_ok": "All checks passed",
                "summary_fail": "Failed checks: {count}"
            },
            "cli": {
                "error": "Error",
                "written": "Written: {path}"
            }
        }
    }

    def __init__(self):
        """Инициализация менеджера переводов"""
        self.translations = {}
        self.language = "ru"

    def get_base_path(self):
        """Каталог рядом с этим файлом"""
        return os.path.dirname(os.path.abspath(__file__))

    def load_translations(self, language):
        """Загрузить переводы: сначала translations/<язык>.json, потом встроенные"""
        possible_paths = [
            os.path.join(self.get_base_path(), "translations", f"{language}.json"),
            os.path.join(os.getcwd(), "translations", f"{language}.json"),
        ]

        for file_path in possible_paths:
            if os.path.exists(file_path):
                try:
                    with open(file_path, 'r', encoding='utf-8') as f:
                        self.translations = json.load(f)
                    self.language = language
                    logger.debug("Загружен язык %s из %s", language, file_path)
                    return True
                except (OSError, json.JSONDecodeError) as e:
                    logger.warning("Ошибка загрузки переводов из %s: %s", file_path, e)

        return self.load_builtin_translations(language)

    def load_builtin_translations(self, language):
        """Загрузить встроенные переводы"""
        if language in self.BUILTIN:
            self.translations = self.BUILTIN[language]
            self.language = language
            return True

        logger.warning("Встроенных переводов для %s нет, остаётся %s", language, self.language)
        return False

    def t(self, key, default=None, **kwargs):
        """
        Получить перевод по ключу
        Пример: t("validate.passed") -> "ПРОЙДЕНО"
        Пример с переменными: t("cli.written", path="out.csv") -> "Записано: out.csv"
        """
        value = self.translations
        for k in key.split('.'):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                value = default if default is not None else f"[{key}]"
                break

        if kwargs and isinstance(value, str):
            try:
                return value.format(**kwargs)
            except KeyError as e:
                logger.warning("Недостаточно переменных для перевода '%s': %s", key, e)
        return str(value)

    def get_available_languages(self):
        """Список доступных языков"""
        languages = set(self.BUILTIN)
        trans_dir = os.path.join(self.get_base_path(), "translations")
        if os.path.isdir(trans_dir):
            languages.update(name[:-5] for name in os.listdir(trans_dir) if name.endswith(".json"))
        return sorted(languages)


# Создаем глобальный объект для использования везде
translation = SimpleTranslation()
translation.load_builtin_translations("ru")
