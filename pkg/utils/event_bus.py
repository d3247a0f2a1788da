"""
╔══════════════════════════════════════════╗
║       ROTDIFF — Event Bus                ║
╚══════════════════════════════════════════╝

Progress events from long computations (verify jobs,
experiment stages, greedy block selection) flow through
here to whoever listens: the CLI's progress log, tests.
"""

import threading
from collections import deque


class EventBus:
    """Synchronous in-process event bus with bounded history."""

    def __init__(self, max_history=500):
        self._subs = {}                # event_type → [callable]
        self._lock = threading.Lock()
        self.history = deque(maxlen=max_history)
        self._stats = {
            "total_events": 0,
            "hard_passed": 0,
            "hard_failed": 0,
            "trend_passed": 0,
            "trend_failed": 0,
            "stages": 0,
            "blocks": 0,
            "artifacts": 0,
            "check_usage": {},
        }

    @property
    def stats(self):
        return self._stats

    def emit(self, event_type, data=None):
        """Emit an event to history and all listeners of its type."""
        event = {"type": event_type, "data": data or {}}
        with self._lock:
            self._stats["total_events"] += 1
            self._update_stats(event_type, data or {})
            self.history.append(event)
            listeners = list(self._subs.get(event_type, []))

        for cb in listeners:
            try:
                cb(data or {})
            except Exception:
                pass

    def _update_stats(self, event_type, data):
        if event_type == "check_result":
            kind = "hard" if data.get("hard", True) else "trend"
            outcome = "passed" if data.get("passed") else "failed"
            self._stats[f"{kind}_{outcome}"] += 1
            check = data.get("check_id", "unknown")
            self._stats["check_usage"][check] = self._stats["check_usage"].get(check, 0) + 1
        elif event_type == "stage_done":
            self._stats["stages"] += 1
        elif event_type == "block_selected":
            self._stats["blocks"] += 1
        elif event_type == "artifact_written":
            self._stats["artifacts"] += 1

    def subscribe(self, event_type, callback):
        """Subscribe a callback to one event type. It runs on the emitting thread."""
        with self._lock:
            self._subs.setdefault(event_type, []).append(callback)

    def unsubscribe(self, event_type, callback):
        with self._lock:
            listeners = self._subs.get(event_type, [])
            if callback in listeners:
                listeners.remove(callback)

    def get_history(self):
        with self._lock:
            return list(self.history)

    def get_stats(self):
        with self._lock:
            stats = dict(self._stats)
            stats["check_usage"] = dict(self._stats["check_usage"])
            return stats

    def reset(self):
        """Drop history and counters (between CLI runs in one process)."""
        with self._lock:
            self.history.clear()
            for key, value in self._stats.items():
                self._stats[key] = {} if isinstance(value, dict) else 0


# Singleton
event_bus = EventBus()
