class DomainError(ValueError):
    """A precondition violation; ``code`` is the machine-readable tag used by the CLI."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


EXP_DIVERGES = "EXP_DIVERGES"
LOG_DIVERGES = "LOG_DIVERGES"
NOT_A_UNIT = "NOT_A_UNIT"
NOT_IN_ZP = "NOT_IN_ZP"
FIELD_MISMATCH = "FIELD_MISMATCH"
FIELD_TOO_SMALL = "FIELD_TOO_SMALL"
LEVEL_MISMATCH = "LEVEL_MISMATCH"
LEVEL_VIOLATION = "LEVEL_VIOLATION"
CERT_VIOLATION = "CERT_VIOLATION"
OUT_OF_RANGE = "OUT_OF_RANGE"
OUT_OF_SCOPE = "OUT_OF_SCOPE"
PRECISION_LOST = "PRECISION_LOST"
