"""Background worker: drains the analysis/layout job queue.

Jobs are idempotent (analysis and layout are deterministic functions of the
stored bytes), so at-least-once execution is safe: a worker killed mid-job
leaves the job queued and the next run converges to the same record state.
Job-level failures are recorded on the record and never crash the worker.
"""

from __future__ import annotations

import threading
import time
import zlib

from . import formats
from .analysis import AnalysisConfig, analyze
from .errors import GraphbaseError, TimeBudgetExceeded
from .layout import RenderStyle, layout_force_directed, render_svg
from .store import ArchiveStore


class AnalysisWorker:
    def __init__(self, store: ArchiveStore,
                 config: AnalysisConfig | None = None,
                 layout_iterations: int = 500,
                 layout_max_nodes: int = 500,
                 poll_interval: float = 0.05):
        self.store = store
        self.config = config or AnalysisConfig()
        self.layout_iterations = layout_iterations
        self.layout_max_nodes = layout_max_nodes
        self.poll_interval = poll_interval
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None

    # --- job processing ---------------------------------------------------

    def process(self, graph_id: str) -> None:
        try:
            data, fmt = self.store.get_original_bytes(graph_id)
            graph = formats.parse(data, fmt)
        except GraphbaseError as exc:
            self.store.mark_analysis_failed(graph_id, str(exc))
            return
        try:
            props = analyze(graph, self.config)
            self.store.set_properties(graph_id, props, supplied_by="system")
        except TimeBudgetExceeded as exc:
            # keep what was computed; unfinished fields stay marked
            self.store.set_properties(graph_id, exc.partial,
                                      supplied_by="system")
        except Exception as exc:  # noqa: BLE001 - job isolation
            self.store.mark_analysis_failed(graph_id, str(exc))
        if graph.node_count <= self.layout_max_nodes:
            try:
                seed = zlib.crc32(graph_id.encode())
                layout = layout_force_directed(
                    graph, iterations=self.layout_iterations, rng_seed=seed)
                svg = render_svg(graph, layout, RenderStyle())
                self.store.set_layout(graph_id, layout, svg)
            except Exception:  # noqa: BLE001 - the image is best-effort
                pass

    def drain(self) -> int:
        """Process every queued job synchronously; returns the count."""
        done = 0
        while True:
            claimed = self.store.claim_job()
            if claimed is None:
                return done
            job_id, graph_id = claimed
            self.process(graph_id)
            self.store.finish_job(job_id)
            done += 1

    # --- thread lifecycle ----------------------------------------------------

    def start(self):
        if self._thread is not None:
            return
        self._stop.clear()
        self._thread = threading.Thread(target=self._loop,
                                        name="graphbase-worker", daemon=True)
        self._thread.start()

    def stop(self):
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=10)
            self._thread = None

    def _loop(self):
        while not self._stop.is_set():
            claimed = self.store.claim_job()
            if claimed is None:
                time.sleep(self.poll_interval)
                continue
            job_id, graph_id = claimed
            try:
                self.process(graph_id)
            finally:
                self.store.finish_job(job_id)
