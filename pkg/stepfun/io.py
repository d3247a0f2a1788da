"""
JSON and CSV shapes for step functions.

Exact rationals travel as {"num": "...", "den": "..."} strings so big
integers survive any JSON reader.
"""

from fractions import Fraction

from stepfun.function import StepFunction, exact
from utils.errors import UsageError

ROW_HEADERS = ["breakpoint", "value", "x", "y"]


def rational_to_json(x):
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(obj):
    if isinstance(obj, (int, str)):
        return exact(Fraction(obj))
    try:
        return exact(Fraction(int(obj["num"]), int(obj["den"])))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise UsageError(f"malformed rational {obj!r}") from e


def to_json(f):
    return {
        "breakpoints": [rational_to_json(b) for b in f.breakpoints],
        "values": [rational_to_json(v) for v in f.values],
    }


def from_json(data):
    try:
        bps = [rational_from_json(b) for b in data.get("breakpoints", [])]
        vals = [rational_from_json(v) for v in data["values"]]
    except (AttributeError, KeyError) as e:
        raise UsageError(f"malformed step function: {e}") from e
    try:
        return StepFunction.from_breakpoints(bps, vals)
    except ValueError as e:
        raise UsageError(f"invalid step function: {e}") from e


def rows(f):
    """(breakpoint, value, x, y) per piece; exact columns first, floats for plotting."""
    out = []
    for start, _, v in f.pieces_iter():
        out.append([str(start), str(v), repr(float(start)), repr(float(v))])
    return out
