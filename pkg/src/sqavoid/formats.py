"""Codecs shared by the JSON/CSV interfaces.

Integers are rendered as decimal strings so arbitrary-precision values
survive any JSON reader; rationals are rendered as "num" or "num/den".
"""

from __future__ import annotations

from fractions import Fraction

SCHEMA_VERSION = "1"


def enc_int(n: int) -> str:
    return str(int(n))


def dec_int(s: str | int) -> int:
    return int(s)


def enc_rat(x: Fraction | int) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def dec_rat(s: str | int) -> Fraction:
    return Fraction(s)
