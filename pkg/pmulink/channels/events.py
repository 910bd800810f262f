"""
A minimal discrete-event queue keyed by integer-microsecond time.
"""
from ..imports import *
import heapq

__all__ = ["EventQueue"]


class EventQueue:
    """
    An ordered queue of (time, kind, payload) events.

    Events pop in time order. Events scheduled for the same
    microsecond pop in the order they were scheduled, so a
    simulation driven by this queue is deterministic.
    """

    def __init__(self):
        self._heap = []
        self._counter = 0
        self.now = None

    def __len__(self):
        return len(self._heap)

    def __repr__(self):
        return f"<EventQueue ({len(self)} pending, now={self.now})>"

    def schedule(self, time, kind, payload=None):
        """
        Add an event.

        Parameters
        ----------
        time : int
            When the event happens (µs).
        kind : str
            What sort of event it is (used to pick a handler).
        payload : object
            Anything the handler needs.
        """
        time = int(time)
        if self.now is not None and time < self.now:
            raise ContractViolation(
                f"Can't schedule a '{kind}' event at {time} µs, before now ({self.now} µs)."
            )
        heapq.heappush(self._heap, (time, self._counter, kind, payload))
        self._counter += 1

    def peek(self):
        """
        The time of the next event, or None if the queue is empty.
        """
        if len(self._heap) == 0:
            return None
        return self._heap[0][0]

    def pop(self):
        """
        Remove and return the next event as (time, kind, payload).
        """
        time, _, kind, payload = heapq.heappop(self._heap)
        self.now = time
        return time, kind, payload

    def run(self, handlers, until=None):
        """
        Pop events and pass each to its handler until the queue is empty.

        Parameters
        ----------
        handlers : dict
            {kind: function(time, payload)}. Handlers may schedule more events.
        until : int, optional
            Stop before any event later than this time (µs).

        Returns
        -------
        n : int
            The number of events handled.
        """
        n = 0
        while len(self._heap) > 0:
            if until is not None and self.peek() > until:
                break
            time, kind, payload = self.pop()
            try:
                handler = handlers[kind]
            except KeyError:
                raise ContractViolation(
                    f"There's no handler for '{kind}' events (only {list(handlers)})."
                )
            handler(time, payload)
            n += 1
        return n
