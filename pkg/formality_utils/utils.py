import re
from fractions import Fraction
from numbers import Rational

from .exceptions import ContractViolation

RATIONAL_RE = re.compile(r'^[+-]?\d+(?:/\d+)?$')


def str_coercible(cls):
    def __str__(self):
        return self.__unicode__()

    cls.__str__ = __str__
    return cls


def to_scalar(value):
    """
    Coerce ``value`` into an exact :class:`~fractions.Fraction`.

    Integers, fractions and strings of the form ``p`` or ``p/q`` are
    accepted. Floats are rejected since they are not exact.

    ::

        to_scalar('3/6')  # Fraction(1, 2)
        to_scalar(0.5)    # raises ContractViolation
    """
    if isinstance(value, bool):
        raise ContractViolation(f'{value!r} is not a rational number.')
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str) and RATIONAL_RE.match(value.strip()):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise ContractViolation(f'{value!r} has a zero denominator.')
    raise ContractViolation(f'{value!r} is not a rational number.')


def format_scalar(value):
    """
    Canonical text form of a scalar: ``p`` for integers, ``p/q`` otherwise.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def sign(exponent):
    """
    ``(-1) ** exponent`` for an integer exponent.
    """
    return -1 if exponent % 2 else 1
