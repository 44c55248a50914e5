"""Arbitrary-precision rationals (gmpy2.mpq) and their string form."""

from gmpy2 import mpq

Rat = mpq
ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


class RatParseError(ValueError):
    pass


def rat(x, den=None):
    """Coerce int, str ("p/q" or "p"), mpq or Fraction to mpq; rat(p, q) = p/q."""
    if den is not None:
        return rat(x) / rat(den)
    if isinstance(x, type(ZERO)):
        return x
    if isinstance(x, bool):
        raise RatParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, str):
        s = x.strip()
        parts = s.split("/")
        if len(parts) > 2 or not all(_is_int(p) for p in parts):
            raise RatParseError(f"malformed rational {x!r}")
        if len(parts) == 2 and int(parts[1]) == 0:
            raise RatParseError(f"zero denominator in {x!r}")
        return mpq(int(parts[0]), int(parts[1]) if len(parts) == 2 else 1)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mpq(int(x.numerator), int(x.denominator))
    raise RatParseError(f"not a rational: {x!r}")


def _is_int(s):
    s = s.strip()
    if s[:1] in "+-":
        s = s[1:]
    return s.isdigit()


def rat_str(q):
    q = rat(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


def is_integer(q):
    return rat(q).denominator == 1


def is_nonneg_int(q):
    q = rat(q)
    return q.denominator == 1 and q >= 0


def bitsize(q):
    return int(q.numerator).bit_length() + int(q.denominator).bit_length()
