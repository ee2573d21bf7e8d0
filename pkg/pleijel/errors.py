"""
Exceptions raised by the solvers. Precondition violations use plain
`ValueError`; the classes here carry extra context for diagnostics.
"""

from typing import Any, Optional, Tuple


class ConvergenceError(RuntimeError):
    """A root finder did not converge.

    Attributes:
        bracket: The last (lo, hi) bracket.
        values: Function values at the bracket ends.
        iterations: Iterations spent before giving up.
        mode: Optional (order, index) identity of the zero being sought.
    """

    def __init__(
        self,
        message: str,
        bracket: Tuple[float, float],
        values: Tuple[float, float] = (float("nan"), float("nan")),
        iterations: int = 0,
        mode: Optional[Tuple[Any, ...]] = None,
    ) -> None:
        self.bracket = bracket
        self.values = values
        self.iterations = iterations
        self.mode = mode
        detail = (
            f"{message} (bracket=[{bracket[0]!r}, {bracket[1]!r}], "
            + f"values=[{values[0]!r}, {values[1]!r}], iterations={iterations}"
        )
        if mode is not None:
            detail += f", mode={mode}"
        super().__init__(detail + ")")


class OverflowRegimeError(OverflowError):
    """A Bessel value at (order, x) is not representable as a double."""

    def __init__(
        self,
        order: float,
        x: float,
        which: str,
        reason: str = "is outside the representable range",
    ) -> None:
        self.order = order
        self.x = x
        self.which = which
        super().__init__(
            f"{which} at order {order!r}, x={x!r} {reason}. "
            + "Reduce the order or increase the argument."
        )


class CapExceededError(ValueError):
    """An order, argument or zero index is beyond the configured caps."""
