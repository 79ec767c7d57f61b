"""
Точка входа CLI.
Движок MD-предложений: вычисление, выполнимость, следование, проверка выводов,
перевод в классическую логику и эксперименты 0-1.
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from config import config
from handlers import register_handlers
from handlers.documents import CommandConfig
from solver.search import CaseBudgetExceeded

logger = logging.getLogger(__name__)

# Коды выхода
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdlogic", description="Reasoning with MD-sentences over real-valued logics")
    parser.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")
    parser.add_argument("--jobs", type=int, default=config.JOBS, help="worker processes for sweep and zeroone")
    parser.add_argument("--case-budget", dest="case_budget", type=int, help="limit on explored linear programs")
    parser.add_argument("--max-width", dest="max_width", type=int, help="limit on the information set width")
    parser.add_argument("--log-level", dest="log_level", default=config.LOG_LEVEL,
                        choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"))
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_handlers(subparsers)
    return parser


def _error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    """Разбор аргументов, настройка и запуск обработчика"""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
        stream=sys.stderr,
    )

    values = {k: v for k, v in vars(args).items() if k not in ("handler", "log_level")}
    try:
        options = CommandConfig(**values)
    except ValidationError as exc:
        return _error("; ".join(err["msg"].removeprefix("Value error, ") for err in exc.errors()))

    options.apply_overrides()
    if not config.validate():
        return _error("invalid configuration, see the log")

    logger.info(f"▶️ Команда {options.command}")
    try:
        return args.handler(options, sys.stdout)
    except CaseBudgetExceeded as exc:
        logger.warning(f"⚠️ Бюджет исчерпан: {exc.explored} линейных программ")
        return _error(f"budget exceeded ({exc.explored} linear programs explored)")
    except (ValueError, OSError) as exc:
        logger.debug("Подробности ошибки", exc_info=True)
        return _error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
