"""Exception hierarchy shared by every module."""


class RsPlannerError(Exception):
    """Base class for all errors raised by this package."""


class InvalidRadiusError(RsPlannerError, ValueError):
    """Turning radius is not a finite positive number."""


class DomainError(RsPlannerError, ValueError):
    """Numeric input outside the domain of an operation (NaN, inf, ...)."""


class InternalInconsistencyError(RsPlannerError, RuntimeError):
    """The partition dispatched a path type whose formula has no solution.

    This never happens for valid input; seeing it means the decision tree
    and the per-type formulas disagree.
    """


def check_radius(r) -> float:
    """Return ``r`` as float or raise :class:`InvalidRadiusError`."""
    try:
        value = float(r)
    except (TypeError, ValueError) as exc:
        raise InvalidRadiusError(f"radius must be a number, got {r!r}") from exc
    if not (value > 0.0) or value == float("inf"):
        raise InvalidRadiusError(f"radius must be finite and > 0, got {r!r}")
    return value
