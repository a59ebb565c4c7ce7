"""Ordered data-parallel map: results always come back in input order."""
import multiprocessing
from concurrent.futures import ProcessPoolExecutor


def ordered_map(fn, items, jobs=1):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=min(jobs, len(items)), mp_context=ctx) as pool:
        return list(pool.map(fn, items))
