"""Injectable time sources so fetch pacing and timestamps stay testable."""
from __future__ import annotations

import time
from datetime import datetime, timezone


class SystemClock:
    def now(self) -> float:
        return time.time()

    def sleep(self, seconds: float) -> None:
        time.sleep(seconds)


class FixedClock:
    """Clock frozen at one instant. sleep() is a no-op, which keeps
    builds against local fixtures both fast and reproducible."""

    def __init__(self, epoch: float = 0.0):
        self.epoch = float(epoch)

    def now(self) -> float:
        return self.epoch

    def sleep(self, seconds: float) -> None:
        pass


def iso_utc(epoch: float) -> str:
    """Render an epoch timestamp as ISO-8601 UTC with second precision."""
    return datetime.fromtimestamp(epoch, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
