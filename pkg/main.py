# main.py
import argparse
import logging
import os
import sys

# Добавляем текущую директорию в путь для импортов
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from cli.commands import COMMANDS
from core.errors import ModelError
from core.scenario import FormulaTier
from core.settings import load_config, section
from simple_translation import translation

LOG_FORMAT = "[%(name)s] %(message)s"


def build_parser():
    """Разбор аргументов командной строки"""
    parser = argparse.ArgumentParser(
        prog="underlay",
        description="Две сосуществующие вторичные сети под общим ограничением помехи (ITL): "
                    "аналитика, Монте-Карло и оптимизация доли ITL",
    )
    parser.add_argument("--config", default=None, help="путь к config.json")
    parser.add_argument("--lang", default=None, choices=translation.get_available_languages(),
                        help="язык отчётов")
    parser.add_argument("--log-level", default=None,
                        choices=["debug", "info", "warning", "error"], help="уровень журнала")
    parser.add_argument("--workers", type=int, default=None, help="число потоков Монте-Карло")

    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_command(name, help_text):
        command = sub.add_parser(name, help=help_text)
        command.add_argument("--scenario", required=True, help="файл сценария *.scn")
        return command

    sweep_alpha = scenario_command("sweep-alpha", "tau_sum(alpha) в CSV")
    sweep_alpha.add_argument("--rate", type=float, default=None, help="скорость R, бит/канал")
    sweep_alpha.add_argument("--grid", type=int, default=None, help="число точек по alpha")
    sweep_alpha.add_argument("--trials", type=int, default=None)
    sweep_alpha.add_argument("--seed", type=int, default=None)
    sweep_alpha.add_argument("--endpoints", action="store_true", help="добавить строки alpha = 0 и alpha = 1 (одна сеть)")
    sweep_alpha.add_argument("--out", required=True, help="выходной CSV")

    sweep_rate = scenario_command("sweep-rate", "tau_sum(R) для нескольких L = M в CSV")
    sweep_rate.add_argument("--rates", default=None, help="диапазон START:STOP:N")
    sweep_rate.add_argument("--users", default=None, help='список L = M, например "1,3,5,7,10"')
    sweep_rate.add_argument("--trials", type=int, default=None)
    sweep_rate.add_argument("--seed", type=int, default=None)
    sweep_rate.add_argument("--out", required=True, help="выходной CSV")

    optimize = scenario_command("optimize", "alpha*, R_c и рекомендация режима")
    optimize.add_argument("--rate", type=float, default=None, help="скорость R, бит/канал")
    optimize.add_argument("--tier", default=None, choices=[tier.value for tier in FormulaTier])
    optimize.add_argument("--out", default=None, help="дополнительно сохранить отчёт в JSON")

    validate = scenario_command("validate", "проверка аналитики против Монте-Карло")
    validate.add_argument("--trials", type=int, default=None)
    validate.add_argument("--seed", type=int, default=None)

    return parser


def setup_logging(level_name):
    """Один консольный обработчик в формате [модуль] сообщение"""
    level = getattr(logging, str(level_name).upper(), logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv=None):
    """Основная функция запуска"""
    args = build_parser().parse_args(argv)
    config = load_config(args.config)

    setup_logging(args.log_level or section(config, "debug").get("log_level", "info"))
    translation.load_translations(args.lang or section(config, "app").get("language", "ru"))

    try:
        return COMMANDS[args.command](args, config)
    except ModelError as e:
        print(f"{translation.t('cli.error', 'Ошибка')}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
