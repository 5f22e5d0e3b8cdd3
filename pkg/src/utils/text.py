"""Number formatting helpers shared by the exporters."""

from __future__ import annotations


def format_real(value: float, precision: int) -> str:
    """Format a real number with a fixed count of significant digits.

    Locale-independent: always '.' as decimal separator.

    Args:
        value: Number to format.
        precision: Significant digits.

    Returns:
        Formatted string
    """
    text = f"{float(value):.{precision}g}"
    return "0" if text == "-0" else text


def round_real(value: float, precision: int) -> float:
    """Round a real number to `precision` significant digits.

    Args:
        value: Number to round.
        precision: Significant digits.

    Returns:
        The float that prints as format_real(value, precision).
    """
    return float(format_real(value, precision))
