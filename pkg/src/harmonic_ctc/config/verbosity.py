"""Verbosity levels gating how much the scans log."""

import logging
from enum import IntEnum


class Verbosity(IntEnum):
    """Standard verbosity levels.

    Levels:
        SILENT (0): errors only
        ONCE (1): one summary line per check
        DETAIL (2): per-radius minima and witnesses
        FULL (3): everything, including per-term series diagnostics
    """
    SILENT = 0
    ONCE = 1
    DETAIL = 2
    FULL = 3

    @classmethod
    def from_flags(cls, verbose: int = 0, quiet: int = 0) -> 'Verbosity':
        level = int(cls.ONCE) + verbose - quiet
        return cls(max(int(cls.SILENT), min(int(cls.FULL), level)))

    def to_logging_level(self) -> int:
        return {
            Verbosity.SILENT: logging.ERROR,
            Verbosity.ONCE: logging.WARNING,
            Verbosity.DETAIL: logging.INFO,
            Verbosity.FULL: logging.DEBUG,
        }[self]
