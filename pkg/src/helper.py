import math
from fractions import Fraction
from typing import Union

from src.exceptions import InvalidInputError


class Helper:
    """Helper functions"""

    @staticmethod
    def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
        """Parse '16/5', '4' or '3.2' into an exact Fraction (decimals are read exactly)"""
        if isinstance(text, Fraction):
            return text
        if isinstance(text, int):
            return Fraction(text)
        try:
            return Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not an exact rational: {text!r}") from exc

    @staticmethod
    def format_rational(value: Fraction) -> str:
        """Reduced 'num/den' string; integers print without a denominator"""
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    @staticmethod
    def floor_fraction(value: Fraction) -> int:
        return value.numerator // value.denominator

    @staticmethod
    def isqrt_fraction(value: Fraction) -> int:
        """Largest integer m >= 0 with m^2 <= value (0 for negative input)"""
        if value < 0:
            return 0
        return math.isqrt(Helper.floor_fraction(value))

    @staticmethod
    def is_prime(n: int) -> bool:
        if n < 2:
            return False
        if n % 2 == 0:
            return n == 2
        d = 3
        while d * d <= n:
            if n % d == 0:
                return False
            d += 2
        return True
