"""JSON and CSV rendering with exact rationals.

Rationals go to JSON as ``[num, den]`` and to CSV as both a decimal and a
``num/den`` string, so output is readable and lossless at once.
"""

from __future__ import annotations

import csv
import io
import json
from decimal import Context, Decimal
from fractions import Fraction
from typing import Iterable, Sequence

DEFAULT_PRECISION = 12


def rational(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def parse_rational(value) -> Fraction:
    """Accept [num, den], an int, or a string like "3/2"."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"rational must be [num, den], got {value!r}")
        return Fraction(int(value[0]), int(value[1]))
    if isinstance(value, float):
        raise ValueError("floats are not accepted; use [num, den] or a 'p/q' string")
    return Fraction(str(value))


def decimal_string(x, precision: int = DEFAULT_PRECISION) -> str:
    """Round x to ``precision`` significant digits, in plain positional notation."""
    x = Fraction(x)
    ctx = Context(prec=precision)
    d = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def exact_string(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def sequence_csv(rows: Iterable[Sequence], precision: int = DEFAULT_PRECISION,
                 header: Sequence[str] = ("n", "length", "normalized", "normalized_exact")) -> str:
    """CSV of (n, length, normalized) rows; the rational column is written twice."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for n, count, r in rows:
        w.writerow([n, count, decimal_string(r, precision), exact_string(r)])
    return buf.getvalue()


def ratio_csv(rows: Iterable[tuple[int, Fraction]], precision: int = DEFAULT_PRECISION,
              key: str = "k") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([key, "ratio", "ratio_exact"])
    for k, r in rows:
        w.writerow([k, decimal_string(r, precision), exact_string(r)])
    return buf.getvalue()
