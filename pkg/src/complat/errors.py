"""Shared exception types.

Both exceptions map to dedicated CLI exit codes, so library code raises
them instead of bare ValueError whenever the condition is one a user can
hit through an input file or a size cap.
"""


class SpecError(ValueError):
    """Malformed input document or argument (CLI exit code 2)."""


class CapExceeded(RuntimeError):
    """A configured enumeration cap was exceeded (CLI exit code 3)."""
