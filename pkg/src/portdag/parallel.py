import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor


def pmap(fn, items, jobs: int = 1) -> list:
    """Ordered map, fanned out over ``jobs`` processes when jobs > 1.

    ``fn`` and the items must be picklable. Output order equals input order,
    so results never depend on the worker count.
    """
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(i) for i in items]
    methods = mp.get_all_start_methods()
    ctx = mp.get_context("fork") if "fork" in methods else None
    chunk = max(1, len(items) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as ex:
        return list(ex.map(fn, items, chunksize=chunk))
