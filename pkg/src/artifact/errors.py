"""Exception types shared by every module.

Two families matter to callers: malformed input (``ValueError`` subclasses,
reported by the CLI with exit code 1) and violated mathematical preconditions
(``PreconditionError`` subclasses, exit code 2).
"""

from __future__ import annotations


class DimensionError(ValueError):
    """A matrix or tuple has the wrong shape."""


class PreconditionError(ArithmeticError):
    """A mathematical precondition of an operation does not hold."""


class DegenerateCharacterError(PreconditionError):
    """A character has vanishing kappa coordinate."""


class InadmissibleError(PreconditionError):
    """A color tuple or crossing leaves the domain of the SL2* coordinates."""


class SingularError(PreconditionError):
    """A meridian, character or total holonomy has trace 2."""


class ClosureError(PreconditionError):
    """The colors are not fixed by the braid, so they do not color its closure."""


class SolverError(PreconditionError):
    """A numerical solve (nullspace, lift, normalization) did not produce a unique answer."""
