"""
Error hierarchy for coxout
"""
from typing import Any, Dict, Optional


class CoxoutError(Exception):
    """Base class for every error raised by coxout"""


class InputError(CoxoutError):
    """A precondition or a piece of user input was violated"""


class ParseError(InputError):
    """Malformed graph, word or presentation text"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class GraphMismatchError(InputError):
    """Operands live over different labelled graphs"""


class VerificationCounterexample(CoxoutError):
    """
    A lemma or an internal consistency check failed.

    The payload is JSON-able (graph, tuple, verdicts) so the oracle can
    persist it and replay it later.
    """

    def __init__(self, message: str, payload: Optional[Dict[str, Any]] = None):
        self.payload = payload or {}
        super().__init__(message)
