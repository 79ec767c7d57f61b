"""
Конфигурация движка MD-предложений.
Лимиты и параметры загружаются из .env файла или окружения.
"""
import logging
import os
from fractions import Fraction

from dotenv import load_dotenv

# Загружаем переменные из .env
load_dotenv()

logger = logging.getLogger(__name__)


class Config:
    """Основная конфигурация"""

    # Решатель (перебор случаев)
    CASE_BUDGET: int = int(os.getenv("MD_CASE_BUDGET", "1000000") or "1000000")

    # Ограничители размеров
    MAX_WIDTH: int = int(os.getenv("MD_MAX_WIDTH", "64") or "64")          # суммарная ширина D
    MAX_BOXES: int = int(os.getenv("MD_MAX_BOXES", "50000") or "50000")    # число боксов
    MAX_POINTS: int = int(os.getenv("MD_MAX_POINTS", "2000000") or "2000000")  # явные множества
    MODEL_CAP: int = int(os.getenv("MD_MODEL_CAP", "5000000") or "5000000")    # перебор моделей

    # Эксперименты 0-1
    EXACT_CAP: int = int(os.getenv("MD_EXACT_CAP", "1000000") or "1000000")
    ZEROONE_DELTA: Fraction = Fraction(os.getenv("MD_ZEROONE_DELTA", "1/20") or "1/20")

    # Параллельность
    JOBS: int = int(os.getenv("MD_JOBS", "1") or "1")

    # Логирование
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING").upper()

    @classmethod
    def validate(cls) -> bool:
        """Проверка значений конфигурации"""
        errors = []

        for name in ("CASE_BUDGET", "MAX_WIDTH", "MAX_BOXES", "MAX_POINTS", "MODEL_CAP", "EXACT_CAP", "JOBS"):
            if getattr(cls, name) <= 0:
                errors.append(f"{name} должен быть положительным")
        if not 0 < cls.ZEROONE_DELTA < Fraction(1, 2):
            errors.append("MD_ZEROONE_DELTA должен лежать в (0, 1/2)")
        if cls.LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            errors.append(f"неизвестный LOG_LEVEL: {cls.LOG_LEVEL}")

        if errors:
            for error in errors:
                logger.error(f"❌ Ошибка конфигурации: {error}")
            return False

        logger.debug("✅ Конфигурация загружена успешно")
        return True


config = Config()
