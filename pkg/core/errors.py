"""Исключения пакета"""

from typing import Optional


class QTuranError(Exception):
    """Базовая ошибка: всё, что библиотека бросает намеренно."""


class ValidationError(QTuranError):
    """Нарушен инвариант при построении значения (q-ребро, q-граф, паттерн)."""


class FormatError(QTuranError):
    """Ошибка разбора файла. Хранит номер строки (1-based), если он известен."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PatternError(QTuranError):
    """Паттерн не подходит для запрошенной операции."""


class InstanceTooLarge(QTuranError):
    """Экземпляр превышает защитный лимит размера."""


class CapExceeded(QTuranError):
    """Превышен лимит числа вершин или рёбер для точного перебора."""


class ConstructionError(QTuranError):
    """Нарушено предусловие генератора конструкции."""
