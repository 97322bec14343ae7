"""Пул процессов для независимых подзадач"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import structlog

from config.settings import config
from utils.logging_setup import setup_logging

logger = structlog.get_logger()

T = TypeVar("T")
R = TypeVar("R")


def _worker_init(level: str) -> None:
    setup_logging(level)


def resolve_jobs(jobs: Optional[int]) -> int:
    if jobs is None or jobs <= 0:
        return config.JOBS
    return jobs


def run_tasks(func: Callable[[T], R], tasks: Iterable[T], jobs: Optional[int] = 1) -> List[R]:
    """
    Выполнить func над каждой задачей; результаты в порядке задач.

    jobs <= 1 — последовательно в текущем процессе (так же ведут себя тесты).
    func и задачи должны сериализоваться через pickle.
    """
    tasks = list(tasks)
    jobs = min(resolve_jobs(jobs), max(len(tasks), 1))
    if jobs <= 1:
        return [func(task) for task in tasks]

    logger.info("⚙️ Starting worker pool", jobs=jobs, tasks=len(tasks))
    with ProcessPoolExecutor(max_workers=jobs, initializer=_worker_init, initargs=(config.LOG_LEVEL,)) as pool:
        return list(pool.map(func, tasks))
