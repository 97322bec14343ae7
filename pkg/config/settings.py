"""Конфигурация приложения"""

import os
from dotenv import load_dotenv

load_dotenv()


def _optional_float(name: str):
    raw = os.getenv(name, "").strip()
    return float(raw) if raw else None


def _optional_int(name: str):
    raw = os.getenv(name, "").strip()
    return int(raw) if raw else None


class Config:
    # Бюджеты поиска (по умолчанию без ограничений)
    BUDGET_SECS = _optional_float("QTURAN_BUDGET_SECS")
    BUDGET_NODES = _optional_int("QTURAN_BUDGET_NODES")

    # Параллелизм
    JOBS = int(os.getenv("QTURAN_JOBS", "0")) or os.cpu_count() or 1

    # Ограничения размера задач
    MAX_GROUND = int(os.getenv("QTURAN_MAX_GROUND", "400"))
    MAX_HYPEREDGES = int(os.getenv("QTURAN_MAX_HYPEREDGES", "200000"))
    CHROMATIC_CAP = int(os.getenv("QTURAN_CHROMATIC_CAP", "16"))
    REMOVAL_EDGE_CAP = int(os.getenv("QTURAN_REMOVAL_EDGE_CAP", "24"))
    ROBUST_VERTEX_CAP = int(os.getenv("QTURAN_ROBUST_VERTEX_CAP", "40"))
    WSTAR_CAP = int(os.getenv("QTURAN_WSTAR_CAP", "7"))

    # Логирование
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

    # HTTP
    APP_HOST = os.getenv("APP_HOST", "0.0.0.0")
    APP_PORT = int(os.getenv("APP_PORT", "8000"))

    # Генератор случайных чисел для экспериментов
    RNG_NAME = "numpy.random.PCG64"


config = Config()
