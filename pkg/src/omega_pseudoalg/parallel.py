"""Deterministic parallel map capped by OMEGA_PSEUDOALG_THREADS."""

from concurrent.futures import ThreadPoolExecutor

from .config import Settings


def worker_count():
    return Settings.from_env().threads


def pmap(fn, items):
    """list(map(fn, items)) with results in input order."""
    items = list(items)
    n = worker_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as ex:
        return list(ex.map(fn, items))
