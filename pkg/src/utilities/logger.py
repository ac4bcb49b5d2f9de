"""Module Logger."""


from __future__ import annotations

import logging
import sys
from typing import Any


class Logger:
    """Interface representing logger utilities."""

    def __init__(
        self: Logger,
        name: str = "GEOMSIGN",
        formatter: str = "%(name)s:%(levelname)s => %(message)s",
        debugging: bool = False,
        tracing: bool = False,
        newline: bool = False,
    ) -> None:
        """Initiate a logger.

        Parameters
        ----------
        name : str, optional
            The name of the the logger, by default "GEOMSIGN"
        formatter: str, optional
            The logger format, by default "%(name)s:%(levelname)s => %(message)s"
        debugging : bool, optional
            Set logging level to DEBUG otherwise INFO, by default False
        tracing : bool, optional
            Trace method calls when using trace_, by default False
        newline : bool, optional
            Add a new line between logs, by default False
        """
        if newline:
            formatter += "\n"

        logger = logging.getLogger(name=name)

        # Loggers are process-wide singletons, attach a single handler.
        if not logger.handlers:
            handler = logging.StreamHandler()
            handler.setFormatter(fmt=logging.Formatter(fmt=formatter))
            logger.addHandler(hdlr=handler)

        logger.setLevel(level=logging.DEBUG if debugging else logging.INFO)

        self.logger = logger
        self.debugging = debugging
        self.tracing = tracing
        self.newline = newline

    def configure(
        self: Logger,
        debugging: bool | None = None,
        tracing: bool | None = None,
    ) -> None:
        """Change the level or tracing of an existing logger.

        Parameters
        ----------
        debugging : bool | None, optional
            Set logging level to DEBUG otherwise INFO, unchanged when None.
        tracing : bool | None, optional
            Enable trace_ output, unchanged when None.
        """
        if debugging is not None:
            self.debugging = debugging
            self.logger.setLevel(logging.DEBUG if debugging else logging.INFO)

        if tracing is not None:
            self.tracing = tracing

    def debug_(self: Logger, msg: str) -> None:
        """Log a message with severity DEBUG.

        Parameters
        ----------
        msg : str
            The message to display.
        """
        self.logger.debug(msg=msg)

    def warn_(self: Logger, msg: str) -> None:
        """Log a message with severity WARN.

        Parameters
        ----------
        msg : str
            The message to display.
        """
        self.logger.warning(msg=msg)

    def info_(self: Logger, msg: str) -> None:
        """Log a message with severity INFO.

        Parameters
        ----------
        msg : str
            The message to display.
        """
        self.logger.info(msg=msg)

    def error_(self: Logger, msg: str) -> None:
        """Log a message with severity ERROR.

        Parameters
        ----------
        msg : str
            The message to display.
        """
        self.logger.error(msg=msg)

    def critical_(self: Logger, msg: str) -> None:
        """Log a message with severity CRITICAL.

        Parameters
        ----------
        msg : str
            The message to display.
        """
        self.logger.critical(msg=msg)

    def event_(self: Logger, event: str, **fields: Any) -> None:  # noqa: ANN401
        """Log a structured event as `event key=value ...` with severity INFO.

        Floats are rendered with six significant digits so curves stay readable.

        Parameters
        ----------
        event : str
            The event name, e.g. "epoch" or "fold".
        **fields : Any
            The key/value pairs attached to the event.
        """
        parts = [event]

        for key, val in fields.items():
            text = f"{val:.6g}" if isinstance(val, float) else str(val)
            parts.append(f"{key}={text}")

        self.info_(msg=" ".join(parts))

    def trace_(self: Logger, msg: str | None = None) -> None:
        """Log a message with severity 'INFO' to trace methods call.

        Parameters
        ----------
        msg : str | None, optional
            The message to display, by default None.
        """
        if not self.tracing:
            return

        frame = sys._getframe(1)  # noqa: SLF001

        message = "TRACE"

        # Trace class name if method is from a class
        if "self" in frame.f_locals:
            message += f" - CLASS {frame.f_locals['self'].__class__.__name__}"

        # Trace method name
        message += f" - METHOD {frame.f_code.co_name}"

        if msg is not None:
            message += f" - {msg}"

        self.info_(msg=f"{message}")
