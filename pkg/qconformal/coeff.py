from typing import Dict, Tuple, Union
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import logging

from sympy import ZZ, Rational
from sympy.polys.fields import field, FracElement

logger = logging.getLogger(__name__)

FIELD, _Q = field('q', ZZ)

Number = Union[int, Fraction, Rational, 'QScalar']


class DivisionByZero(ZeroDivisionError):
    pass


class NegativeArgument(ValueError):
    pass


class PoleAtOne(ValueError):
    pass


def _lift(value) -> FracElement:
    if isinstance(value, QScalar):
        return value.value
    if isinstance(value, FracElement):
        return value
    if isinstance(value, int):
        return FIELD.one * value if value else FIELD.zero
    if isinstance(value, (Fraction, Rational)):
        if isinstance(value, Rational):
            numerator, denominator = int(value.p), int(value.q)
        else:
            numerator, denominator = value.numerator, value.denominator
        if numerator == 0:
            return FIELD.zero
        return FIELD.one * numerator / denominator
    raise TypeError(f'cannot interpret {value!r} as a rational function of q')


def _poly_terms(poly) -> Dict[int, int]:
    return {monom[0]: int(coeff) for monom, coeff in poly.terms()}


def _render_laurent(terms: Dict[int, Rational]) -> str:
    if not terms:
        return '0'
    pieces = []
    for exponent in sorted(terms, reverse=True):
        coeff = terms[exponent]
        sign = '-' if coeff < 0 else '+'
        magnitude = abs(coeff)
        if exponent == 0:
            body = str(magnitude)
        else:
            power = 'q' if exponent == 1 else f'q^{exponent}'
            body = power if magnitude == 1 else f'{magnitude}*{power}'
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = first_body if first_sign == '+' else f'-{first_body}'
    for sign, body in pieces[1:]:
        text += f' {sign} {body}'
    return text


@dataclass(frozen=True, eq=False)
class QScalar:
    """An element of the rational function field Q(q).

    The wrapped sympy fraction is kept in lowest terms with a positive
    leading coefficient in the denominator, so equality of canonical forms
    decides equality of the functions.
    """

    value: FracElement

    @classmethod
    def of(cls, value: Number) -> 'QScalar':
        if isinstance(value, QScalar):
            return value
        return cls(_lift(value))

    def __add__(self, other: Number) -> 'QScalar':
        return QScalar(self.value + _lift(other))

    __radd__ = __add__

    def __sub__(self, other: Number) -> 'QScalar':
        return QScalar(self.value - _lift(other))

    def __rsub__(self, other: Number) -> 'QScalar':
        return QScalar(_lift(other) - self.value)

    def __mul__(self, other: Number) -> 'QScalar':
        return QScalar(self.value * _lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> 'QScalar':
        divisor = _lift(other)
        if not divisor:
            raise DivisionByZero(f'division of {self} by the zero scalar')
        return QScalar(self.value / divisor)

    def __rtruediv__(self, other: Number) -> 'QScalar':
        return QScalar.of(other) / self

    def __neg__(self) -> 'QScalar':
        return QScalar(-self.value)

    def __pow__(self, exponent: int) -> 'QScalar':
        if exponent >= 0:
            return QScalar(self.value ** exponent)
        if not self.value:
            raise DivisionByZero('negative power of the zero scalar')
        return QScalar(FIELD.one / self.value ** (-exponent))

    def __eq__(self, other: object) -> bool:
        try:
            return self.value == _lift(other)
        except TypeError:
            return False

    def __hash__(self) -> int:
        return hash(self.value)

    def __bool__(self) -> bool:
        return bool(self.value)

    @property
    def is_zero(self) -> bool:
        return not self.value

    def laurent(self) -> Tuple[Dict[int, int], Dict[int, int]]:
        """numerator and denominator as Laurent maps exponent -> coefficient,
        shifted so that the denominator has lowest degree 0."""
        numerator = _poly_terms(self.value.numer)
        denominator = _poly_terms(self.value.denom)
        shift = min(denominator)
        return (
            {e - shift: c for e, c in numerator.items()},
            {e - shift: c for e, c in denominator.items()},
        )

    def conjugate(self) -> 'QScalar':
        """q -> q^-1 on every coefficient."""
        inverse = FIELD.one / _Q

        def substitute(poly):
            return sum(
                (coeff * inverse ** exponent
                 for exponent, coeff in _poly_terms(poly).items()),
                FIELD.zero,
            )

        return QScalar(substitute(self.value.numer) / substitute(self.value.denom))

    def __str__(self) -> str:
        numerator, denominator = self.laurent()
        if len(denominator) == 1:
            (_, lead), = denominator.items()
            return _render_laurent(
                {e: Rational(c, lead) for e, c in numerator.items()}
            )
        numerator_text = _render_laurent({e: Rational(c) for e, c in numerator.items()})
        denominator_text = _render_laurent({e: Rational(c) for e, c in denominator.items()})
        return f'({numerator_text})/({denominator_text})'

    def __repr__(self) -> str:
        return f'QScalar({self})'


ZERO = QScalar(FIELD.zero)
ONE = QScalar(FIELD.one)
Q = QScalar(_Q)
LAMBDA = Q - Q ** -1


@lru_cache(maxsize=None)
def q_power(exponent: int) -> QScalar:
    return Q ** exponent


@lru_cache(maxsize=None)
def qint(n: int) -> QScalar:
    """[n]_q = (q^n - q^-n) / (q - q^-1)"""
    if n < 0:
        return -qint(-n)
    result = ZERO
    for k in range(n):
        result = result + q_power(n - 1 - 2 * k)
    return result


@lru_cache(maxsize=None)
def qfact(n: int) -> QScalar:
    if n < 0:
        raise NegativeArgument(f'q-factorial of a negative integer: {n}')
    result = ONE
    for k in range(2, n + 1):
        result = result * qint(k)
    return result


def qgamma_recip(p: int) -> QScalar:
    """1 / Gamma_q(p); Gamma_q(p) = [p-1]_q! for p >= 1 and the reciprocal
    vanishes for p <= 0."""
    if p <= 0:
        return ZERO
    return ONE / qfact(p - 1)


@lru_cache(maxsize=None)
def qbeta(s: int, basis: str) -> QScalar:
    if s < 0:
        raise NegativeArgument(f'beta normalizer needs s >= 0, got {s}')
    reciprocal = ZERO
    for p in range(s + 1):
        if basis == 'hat':
            exponent = (s - p) * (p - 1) + p
        elif basis == 'tilde':
            exponent = (p - s) * (p - 1) + p
        else:
            raise ValueError(f'unknown basis: {basis}')
        reciprocal = reciprocal + q_power(exponent) / (qfact(p) * qfact(s - p))
    return ONE / reciprocal


def limit_q1(value: Number) -> Rational:
    """the exact value at q = 1.

    The stored fraction is already reduced, so a remaining zero of the
    denominator at q = 1 is a genuine pole.
    """
    element = _lift(value)
    numerator = sum(_poly_terms(element.numer).values())
    denominator = sum(_poly_terms(element.denom).values())
    if denominator == 0:
        raise PoleAtOne(f'{QScalar(element)} has a pole at q = 1')
    return Rational(numerator, denominator)
