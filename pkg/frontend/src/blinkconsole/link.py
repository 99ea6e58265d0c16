"""TCP client link to the engine, with reconnect and a session clock.

All frame timestamps come from one monotonic clock whose origin is the
first frame of the session, so they are non-decreasing for the whole
run regardless of camera hiccups or reconnects.
"""

from __future__ import annotations

import socket
import time


class SessionClock:
    def __init__(self, now=time.monotonic):
        self._now = now
        self._origin: float | None = None
        self._last = 0.0

    def timestamp(self) -> float:
        if self._origin is None:
            self._origin = self._now()
        t = self._now() - self._origin
        # monotonic clocks can repeat at their resolution; never go back
        self._last = max(self._last, t)
        return self._last


class EngineLink:
    """Line-oriented client for the engine's TCP endpoint.

    ``send_line`` drops the line and schedules a reconnect when the
    socket is gone (the engine replays nothing, so resending stale
    frames would be wrong); ``events`` yields parsed-ready event lines
    as they arrive.
    """

    def __init__(
        self,
        host: str,
        port: int,
        connect=socket.create_connection,
        backoff_s: tuple[float, ...] = (0.2, 0.5, 1.0, 2.0),
        sleep=time.sleep,
    ):
        self.host = host
        self.port = port
        self._connect = connect
        self._backoff = backoff_s
        self._sleep = sleep
        self._sock: socket.socket | None = None
        self._reader = None
        self.connected = False

    def connect(self, retries: int | None = None) -> bool:
        """Try to (re)connect, backing off between attempts."""
        attempt = 0
        while True:
            try:
                self._sock = self._connect((self.host, self.port))
                self._reader = self._sock.makefile("r", encoding="utf-8")
                self.connected = True
                return True
            except OSError:
                self.connected = False
                if retries is not None and attempt >= retries:
                    return False
                self._sleep(self._backoff[min(attempt, len(self._backoff) - 1)])
                attempt += 1

    def send_line(self, line: str) -> bool:
        if self._sock is None:
            return False
        try:
            self._sock.sendall((line + "\n").encode("utf-8"))
            return True
        except OSError:
            self.close()
            return False

    def finish_sending(self):
        """Half-close: tell the engine no more frames are coming.

        The engine then flushes, closes its side, and the events()
        reader sees EOF; a hard close() from another thread would leave
        a blocked reader hanging instead.
        """
        if self._sock is not None:
            try:
                self._sock.shutdown(socket.SHUT_WR)
            except OSError:
                pass

    def events(self):
        """Yield event lines until the connection drops."""
        if self._reader is None:
            return
        try:
            for line in self._reader:
                line = line.strip()
                if line:
                    yield line
        except OSError:
            pass
        finally:
            self.connected = False

    def close(self):
        self.connected = False
        if self._sock is not None:
            try:
                self._sock.close()
            except OSError:
                pass
            self._sock = None
            self._reader = None
