import logging
from concurrent.futures import ProcessPoolExecutor, as_completed

from .. import config
from .train import train


def train_many(jobs, max_workers=config.MAX_WORKERS):
    """
    Runs independent training runs, in worker processes when more than one worker is allowed.

    Args:
        jobs (list[tuple]): (cfg, out_dir, run, seed) per training run.
        max_workers (int): Maximum number of worker processes.

    Returns:
        list[TrainResult]: One result per job, in job order.
    """
    if not jobs:
        return []
    workers = max(1, min(max_workers or 1, len(jobs)))
    if workers == 1:
        return [train(cfg, out_dir, run=run, seed=seed) for cfg, out_dir, run, seed in jobs]

    logging.info(f"Starting {len(jobs)} training run(s) on {workers} worker processes...")
    results = [None] * len(jobs)
    failures = []
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {
            executor.submit(train, cfg, out_dir, run, seed): index
            for index, (cfg, out_dir, run, seed) in enumerate(jobs)
        }
        for completed, future in enumerate(as_completed(futures), start=1):
            index = futures[future]
            run = jobs[index][2]
            try:
                results[index] = future.result()
                logging.info(f"Run {run} done ({completed}/{len(jobs)})")
            except Exception as e:
                logging.error(f"Run {run} failed: {e}")
                failures.append(e)

    if failures:
        raise failures[0]
    return results
