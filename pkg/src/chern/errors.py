"""Exception hierarchy; each class maps to one CLI exit code."""


class ChernError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = 2


class InputError(ChernError, ValueError):
    """Malformed or out-of-contract input (exit code 2)."""

    exit_code = 2


class UnstableFitError(ChernError):
    """A Hilbert-Samuel fit did not stabilize within the sampled range."""

    exit_code = 3


class FitConsistencyError(ChernError):
    """Internal inconsistency while fitting a Hilbert-Samuel polynomial."""

    exit_code = 3


class GenericityError(ChernError):
    """A randomized search exhausted its trials; retry with a larger field or more trials."""

    exit_code = 3


class SaturationLimitError(ChernError):
    """Iterated colon did not stabilize within the iteration cap."""

    exit_code = 3
