"""Background resource sampling for pipeline runs.

A daemon thread wakes every ``interval`` seconds and records three channels:

* ``cpu_pct`` — this process's CPU percent since the previous sample, from
  OS process-time accounting deltas (can exceed 100 on multiple cores);
* ``ram_pct`` — system-wide RAM in use, percent of physical memory;
* ``mem_pct`` — this process's resident set size, percent of physical memory.

``stop`` returns a report with min/avg/max per channel plus the raw samples
for plotting or CSV export. Sampling only reads OS counters, so its own
footprint is negligible at sane intervals.
"""

from __future__ import annotations

import io
import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import ProfilerError

try:
    import psutil
except ImportError as _exc:  # pragma: no cover - psutil is a hard dependency
    psutil = None
    _psutil_error = _exc


@dataclass(frozen=True)
class ResourceSample:
    """One reading; ``t`` is seconds since the profiler started."""

    t: float
    cpu_pct: float
    ram_pct: float
    mem_pct: float


@dataclass(frozen=True)
class ChannelStats:
    min: float
    avg: float
    max: float


@dataclass(frozen=True)
class ResourceReport:
    """Summary of one profiling session."""

    cpu: ChannelStats
    ram: ChannelStats
    mem: ChannelStats
    sample_count: int
    wall_seconds: float
    interval: float
    samples: tuple[ResourceSample, ...]

    def to_dict(self) -> dict:
        return {
            "cpu_pct": vars(self.cpu).copy(),
            "ram_pct": vars(self.ram).copy(),
            "mem_pct": vars(self.mem).copy(),
            "sample_count": self.sample_count,
            "wall_seconds": self.wall_seconds,
            "interval": self.interval,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def samples_csv(self) -> str:
        out = io.StringIO()
        out.write("t,cpu_pct,ram_pct,mem_pct\n")
        for s in self.samples:
            out.write(f"{s.t:.3f},{s.cpu_pct:.2f},{s.ram_pct:.2f},{s.mem_pct:.2f}\n")
        return out.getvalue()

    def write_samples_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.samples_csv(), encoding="utf-8")


class ProfilerHandle:
    """Live profiling session; create with :func:`start`, finish with :func:`stop`."""

    def __init__(self, interval: float):
        if psutil is None:  # pragma: no cover
            raise ProfilerError(f"resource sampling unavailable on this platform: {_psutil_error}")
        self.interval = interval
        try:
            self._process = psutil.Process()
            self._process.cpu_percent(None)  # prime the per-process delta counter
            psutil.virtual_memory()
        except Exception as exc:  # pragma: no cover - platform-dependent
            raise ProfilerError(f"resource sampling unavailable on this platform: {exc}") from exc
        self.samples: list[ResourceSample] = []
        self.stopped = False
        self._stop_event = threading.Event()
        self._t0 = time.monotonic()
        self._thread = threading.Thread(target=self._run, name="sentiq-profiler", daemon=True)
        self._thread.start()

    def _take_sample(self) -> None:
        try:
            cpu = self._process.cpu_percent(None)
            ram = psutil.virtual_memory().percent
            mem = self._process.memory_percent("rss")
        except Exception:  # pragma: no cover - process teardown race
            return
        self.samples.append(ResourceSample(time.monotonic() - self._t0, cpu, ram, mem))

    def _run(self) -> None:
        while not self._stop_event.wait(self.interval):
            self._take_sample()

    def _finish(self) -> ResourceReport:
        self._stop_event.set()
        self._thread.join(timeout=self.interval + 5.0)
        wall = time.monotonic() - self._t0
        samples = tuple(self.samples)

        def stats(values: tuple[float, ...]) -> ChannelStats:
            if not values:
                return ChannelStats(0.0, 0.0, 0.0)
            lo, hi = min(values), max(values)
            # Clamp: float summation can nudge the mean a hair outside the
            # envelope (e.g. identical samples), and min <= avg <= max must hold.
            avg = min(max(sum(values) / len(values), lo), hi)
            return ChannelStats(lo, avg, hi)

        return ResourceReport(
            cpu=stats(tuple(s.cpu_pct for s in samples)),
            ram=stats(tuple(s.ram_pct for s in samples)),
            mem=stats(tuple(s.mem_pct for s in samples)),
            sample_count=len(samples),
            wall_seconds=wall,
            interval=self.interval,
            samples=samples,
        )


def start(interval: float = 1.0) -> ProfilerHandle:
    """Start a sampling session; the first sample lands within one interval."""
    if not interval > 0:
        raise ProfilerError(f"interval must be positive, got {interval}")
    return ProfilerHandle(interval)


def stop(handle: ProfilerHandle) -> ResourceReport:
    """Stop a session and summarize it; stopping twice is an error."""
    if handle.stopped:
        raise ProfilerError("profiler already stopped")
    handle.stopped = True
    return handle._finish()
