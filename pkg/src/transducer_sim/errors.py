"""Exception types shared across the package."""


class PullInError(Exception):
    """No stable electrostatic equilibrium exists below the electrode gap.

    Raised when the attractive electrostatic force exceeds the elastic
    restoring force for every deflection, i.e. the bias voltage is past
    the pull-in instability.
    """


class TuningError(Exception):
    """The requested resonance cannot be reached with a nonnegative capacitor."""


class ConfigError(Exception):
    """Invalid configuration document or simulation setup."""

    def __init__(self, message, section=None, key=None):
        loc = ""
        if section is not None:
            loc = f"[{section}] " if key is None else f"[{section}] {key}: "
        super().__init__(loc + message)
        self.section = section
        self.key = key


class StepSizeError(Exception):
    """Integration step too large to resolve the fastest detuned mode."""


class NotReachedError(Exception):
    """A fidelity threshold was not reached within the allowed time.

    Carries the maximum fidelity achieved so callers can report it.
    """

    def __init__(self, threshold, max_fidelity, t_max):
        super().__init__(
            f"fidelity {threshold:g} not reached within {t_max:g} s "
            f"(maximum achieved: {max_fidelity:.6f})"
        )
        self.threshold = threshold
        self.max_fidelity = max_fidelity
        self.t_max = t_max
