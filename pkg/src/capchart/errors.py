class InvalidInputError(ValueError):
    """Input violates a precondition (balance, normalisation, convexity...)."""


class UnsupportedInputError(ValueError):
    """Input is well formed but outside the characterised domain (alpha[1] > 1/2)."""
