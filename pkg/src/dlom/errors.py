"""Common exception base for the dlom package."""


class DlomError(Exception):
    """Base class for all domain errors raised by dlom modules."""
