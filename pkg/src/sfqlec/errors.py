"""Common exception base so the CLI can map tool errors to one exit code."""


class SfqlecError(Exception):
    """Base class for all errors raised by this package."""
