"""Shared exception types.

The CLI maps these onto exit codes, so anything a user can trigger from a
config file or the command line should raise one of them rather than a bare
exception.
"""

from __future__ import annotations


class ConfigError(ValueError):
    """Bad configuration input (unknown key, missing key, unit mismatch...).

    ``key`` and ``line`` are attached when the error originates from a config
    file so the diagnostic can name the offending entry.
    """

    def __init__(self, message: str, *, key: str | None = None, line: int | None = None):
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if key is not None:
            prefix += f"key '{key}': "
        super().__init__(prefix + message)
        self.key = key
        self.line = line


class InconsistencyError(ConfigError):
    """Mutually contradictory parameters (e.g. g = 0 with a nonzero coupling)."""


class StabilityError(RuntimeError):
    """Fixed-step integrator refused a step size too coarse for the decay rates."""
