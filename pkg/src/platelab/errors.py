"""Exception types shared by all platelab modules."""


class PlatelabError(Exception):
    """Base class for all errors raised by platelab."""


class ConfigurationError(PlatelabError):
    """Invalid user input: geometry, region, mode counts, config files.

    May carry several messages at once (config validation reports every
    violation, not just the first).
    """

    def __init__(self, *messages: str):
        self.messages = [str(m) for m in messages] if messages else ["configuration error"]
        super().__init__("; ".join(self.messages))


class NumericalFailureError(PlatelabError):
    """A numerical routine failed: singular solve, non-convergent
    eigensolver, ill-conditioned eigenvector basis."""


class DegenerateInputError(ConfigurationError):
    """Input is structurally degenerate for the requested operation
    (e.g. sampling the characteristic set at a critical point of the
    weight)."""
