"""Exception hierarchy shared by every module.

Each error carries a stable ``code`` string so the CLI can emit structured
``{code, message}`` records instead of tracebacks.
"""

from __future__ import annotations


class WigneroidError(Exception):
    """Base class for all library errors."""

    code = "error"

    def to_json(self) -> dict:
        return {"code": self.code, "message": str(self)}


class ValidationError(WigneroidError):
    """An input value violates a documented type invariant."""

    code = "validation"


class BadParams(WigneroidError):
    """Builder parameters outside the admissible range."""

    code = "bad_params"


class ChartDomainError(WigneroidError):
    """Chart coordinates outside the admissible domain."""

    code = "chart_domain"


class ConvergenceError(WigneroidError):
    """A root solve failed to converge (should not happen on admissible input)."""

    code = "convergence"


class NotLorentzError(WigneroidError):
    """Matrix fails the (restricted) Lorentz conditions."""

    code = "not_lorentz"


class NonComposableError(WigneroidError):
    """Source/target objects do not match."""

    code = "non_composable"


class CovectorMismatchError(WigneroidError):
    """Transported covector disagrees with the next morphism's source covector."""

    code = "covector_mismatch"


class JacobiError(WigneroidError):
    """Structure constants violate the Jacobi identity."""

    code = "jacobi"


class NotClosedError(WigneroidError):
    """A 2-cochain expected to be a cocycle is not closed."""

    code = "not_closed"


class NotInSubgroupError(WigneroidError):
    """Element lies outside the required subgroup."""

    code = "not_in_subgroup"


class NonIntegralHelicityError(WigneroidError):
    """Origin-orbit character with non-integer label: does not descend to E(2)."""

    code = "non_integral_helicity"


class NotUnitaryError(WigneroidError):
    """A matrix expected to be unitary is not."""

    code = "not_unitary"


class TooLargeError(WigneroidError):
    """Problem size exceeds the brute-force caps."""

    code = "too_large"
