"""Exception types shared across the library."""


class MuskatError(Exception):
    """Base class for all library-specific errors."""


class DomainError(MuskatError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class OutOfRangeError(MuskatError, ValueError):
    """A branch parameter lies outside its feasible window."""

    def __init__(self, value, window, message=None):
        self.value = value
        self.window = window
        if message is None:
            message = (
                f"lambda={value:.12g} outside feasible window "
                f"({window[0]:.12g}, {window[1]:.12g}]"
            )
        super().__init__(message)


class SaturationError(MuskatError, RuntimeError):
    """The slope bracket exceeded alpha_max; the point is beyond numerical reach."""


class EventNotFoundError(MuskatError, RuntimeError):
    """The slope never crossed zero within the safety horizon.

    The crossing provably exists for alpha > 0, so hitting this signals an
    integration bug rather than a modelling issue.
    """


class IntegrationError(MuskatError, RuntimeError):
    """The adaptive stepper stalled; the message carries the location."""


class ParityError(MuskatError, ValueError):
    """A profile does not have the parity required by the operation."""


class SingularityError(MuskatError, RuntimeError):
    """A pendulum angle approaches +/- pi/2 too closely for the tangent map."""


class ConfigError(MuskatError, ValueError):
    """A run-configuration field failed validation; the message names the field."""
