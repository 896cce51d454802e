"""Async job pattern for long-running tool calls.

Generation tools return a job id immediately; clients poll ``job.status``
for {pending, done(result), failed(error)}.
"""

from __future__ import annotations

import threading
import traceback
from concurrent.futures import Future, ThreadPoolExecutor

from ..errors import StorycasterError


class JobManager:
    def __init__(self, workers: int = 2):
        self._pool = ThreadPoolExecutor(max_workers=workers)
        self._jobs: dict[str, Future] = {}
        self._lock = threading.Lock()
        self._counter = 0

    def submit(self, fn, *args, **kwargs) -> str:
        with self._lock:
            self._counter += 1
            job_id = f"job-{self._counter}"
            self._jobs[job_id] = self._pool.submit(fn, *args, **kwargs)
        return job_id

    def status(self, job_id: str) -> dict:
        with self._lock:
            fut = self._jobs.get(job_id)
        if fut is None:
            raise StorycasterError(f"unknown job {job_id!r}")
        if not fut.done():
            return {"status": "pending"}
        exc = fut.exception()
        if exc is not None:
            return {"status": "failed", "error": str(exc)}
        return {"status": "done", "result": fut.result()}

    def wait(self, job_id: str, timeout: float | None = None) -> dict:
        with self._lock:
            fut = self._jobs.get(job_id)
        if fut is None:
            raise StorycasterError(f"unknown job {job_id!r}")
        try:
            fut.result(timeout=timeout)
        except Exception:
            pass
        return self.status(job_id)

    def shutdown(self) -> None:
        self._pool.shutdown(wait=False, cancel_futures=True)
