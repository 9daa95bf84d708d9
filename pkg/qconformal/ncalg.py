from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
import random
import re
import logging

from qconformal.coeff import QScalar, ZERO, ONE, LAMBDA, Number, q_power

logger = logging.getLogger(__name__)

COORDINATE = 'coordinate'
MOMENTUM = 'momentum'
HAT = 'hat'
TILDE = 'tilde'

STEP_CAP = 10 ** 6

# exponents are always stored as (v, minus, plus, vbar) whatever the order
Exponents = Tuple[int, int, int, int]


class MixedKinds(ValueError):
    pass


class TagMismatch(ValueError):
    pass


class InternalNontermination(RuntimeError):
    pass


class Letter(IntEnum):
    V = 0
    MINUS = 1
    PLUS = 2
    VBAR = 3


_RANKS = {
    HAT: (0, 1, 2, 3),
    TILDE: (3, 2, 1, 0),
}

_NAMES = {
    COORDINATE: ('v', 'x-', 'x+', 'vbar'),
    MOMENTUM: ('kv', 'k-', 'k+', 'kvbar'),
}

V, MINUS, PLUS, VBAR = Letter.V, Letter.MINUS, Letter.PLUS, Letter.VBAR

# (left, right) -> [(coefficient, replacement)], one entry per descent
_RULES = {
    HAT: {
        (MINUS, V): [(q_power(-1), (V, MINUS))],
        (PLUS, V): [(q_power(1), (V, PLUS))],
        (VBAR, V): [(ONE, (V, VBAR))],
        (PLUS, MINUS): [(ONE, (MINUS, PLUS)), (LAMBDA, (V, VBAR))],
        (VBAR, MINUS): [(q_power(1), (MINUS, VBAR))],
        (VBAR, PLUS): [(q_power(-1), (PLUS, VBAR))],
    },
    TILDE: {
        (PLUS, VBAR): [(q_power(1), (VBAR, PLUS))],
        (MINUS, VBAR): [(q_power(-1), (VBAR, MINUS))],
        (V, VBAR): [(ONE, (VBAR, V))],
        (MINUS, PLUS): [(ONE, (PLUS, MINUS)), (-LAMBDA, (VBAR, V))],
        (V, PLUS): [(q_power(-1), (PLUS, V))],
        (V, MINUS): [(q_power(1), (MINUS, V))],
    },
}


def _check_order(order: str) -> None:
    if order not in _RANKS:
        raise ValueError(f'unknown order tag: {order}')


def opposite(order: str) -> str:
    _check_order(order)
    return TILDE if order == HAT else HAT


@dataclass(frozen=True)
class Generator:
    kind: str
    letter: Letter

    def __str__(self) -> str:
        return _NAMES[self.kind][self.letter]


X_V, X_MINUS, X_PLUS, X_VBAR = (Generator(COORDINATE, letter) for letter in Letter)
K_V, K_MINUS, K_PLUS, K_VBAR = (Generator(MOMENTUM, letter) for letter in Letter)

_GENERATOR_NAMES = {
    str(generator): generator
    for generator in (X_V, X_MINUS, X_PLUS, X_VBAR, K_V, K_MINUS, K_PLUS, K_VBAR)
}
_power_pattern = re.compile(r'^(kvbar|kv|k-|k\+|vbar|v|x-|x\+)(?:\^(\d+))?$')


@dataclass(frozen=True)
class Word:
    """a product of generators of one kind; the empty word is the unit."""

    letters: Tuple[Generator, ...] = ()

    @property
    def kind(self) -> Optional[str]:
        kinds = {generator.kind for generator in self.letters}
        if len(kinds) > 1:
            raise MixedKinds(
                f'word {self} interleaves coordinate and momentum letters'
            )
        return kinds.pop() if kinds else None

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: 'Word') -> 'Word':
        return Word(self.letters + other.letters)

    def __str__(self) -> str:
        return ' '.join(str(generator) for generator in self.letters) or '1'

    @classmethod
    def parse(cls, text: str) -> 'Word':
        """parse 'x+ v', 'k-^2 k+' or '1'."""
        letters = []
        for item in text.split():
            if item == '1':
                continue
            match = _power_pattern.match(item)
            if match is None:
                raise ValueError(f'failed to parse generator: {item}')
            name, power = match.groups()
            letters.extend([_GENERATOR_NAMES[name]] * int(power or 1))
        return cls(tuple(letters))


def ordered_letters(exponents: Exponents, order: str) -> Tuple[Letter, ...]:
    """the PBW word with the given exponents, in the given order."""
    _check_order(order)
    sequence = (V, MINUS, PLUS, VBAR) if order == HAT else (VBAR, PLUS, MINUS, V)
    return tuple(
        letter
        for letter in sequence
        for _ in range(exponents[letter])
    )


def _exponents_of(letters: Sequence[Letter]) -> Exponents:
    counts = [0, 0, 0, 0]
    for letter in letters:
        counts[letter] += 1
    return tuple(counts)


def _leftmost(descents: List[int]) -> int:
    return descents[0]


def _rewrite(
    letters: Tuple[Letter, ...],
    order: str,
    choose: Callable[[List[int]], int],
) -> Dict[Exponents, QScalar]:
    ranks = _RANKS[order]
    rules = _RULES[order]
    pending = {letters: ONE}
    result: Dict[Exponents, QScalar] = {}
    steps = 0
    while pending:
        word, coeff = pending.popitem()
        if coeff.is_zero:
            continue
        descents = [
            i for i in range(len(word) - 1)
            if ranks[word[i]] > ranks[word[i + 1]]
        ]
        if not descents:
            key = _exponents_of(word)
            result[key] = result.get(key, ZERO) + coeff
            continue
        steps += 1
        if steps > STEP_CAP:
            raise InternalNontermination(
                f'normal ordering exceeded {STEP_CAP} rewrite steps'
            )
        i = choose(descents)
        for factor, replacement in rules[(word[i], word[i + 1])]:
            new_word = word[:i] + replacement + word[i + 2:]
            pending[new_word] = pending.get(new_word, ZERO) + coeff * factor
    return {key: value for key, value in result.items() if not value.is_zero}


@lru_cache(maxsize=None)
def _normal_form(
    letters: Tuple[Letter, ...], order: str
) -> Tuple[Tuple[Exponents, QScalar], ...]:
    return tuple(sorted(_rewrite(letters, order, _leftmost).items()))


@dataclass(frozen=True, eq=False)
class NCPoly:
    """a linear combination of PBW words of one kind in one order."""

    terms: Tuple[Tuple[Exponents, QScalar], ...]
    order: str
    kind: str = MOMENTUM

    @classmethod
    def from_dict(
        cls,
        terms: Dict[Exponents, QScalar],
        order: str,
        kind: str = MOMENTUM,
    ) -> 'NCPoly':
        _check_order(order)
        return cls(
            tuple(sorted(
                (tuple(key), QScalar.of(value))
                for key, value in terms.items()
                if not QScalar.of(value).is_zero
            )),
            order,
            kind,
        )

    @classmethod
    def unit(cls, order: str, kind: str = MOMENTUM) -> 'NCPoly':
        return cls.from_dict({(0, 0, 0, 0): ONE}, order, kind)

    @classmethod
    def zero(cls, order: str, kind: str = MOMENTUM) -> 'NCPoly':
        return cls.from_dict({}, order, kind)

    @classmethod
    def scalar(cls, value: Number, order: str, kind: str = MOMENTUM) -> 'NCPoly':
        return cls.from_dict({(0, 0, 0, 0): QScalar.of(value)}, order, kind)

    @classmethod
    def generator(cls, letter: Letter, order: str, power: int = 1,
                  kind: str = MOMENTUM) -> 'NCPoly':
        exponents = [0, 0, 0, 0]
        exponents[letter] = power
        return cls.from_dict({tuple(exponents): ONE}, order, kind)

    def as_dict(self) -> Dict[Exponents, QScalar]:
        return dict(self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponents, QScalar]]:
        return iter(self.terms)

    @property
    def is_zero(self) -> bool:
        return len(self.terms) == 0

    def _check_compatible(self, other: 'NCPoly') -> None:
        if self.order != other.order or self.kind != other.kind:
            raise TagMismatch(
                f'cannot combine {self.kind}/{self.order} '
                f'with {other.kind}/{other.order}'
            )

    def __add__(self, other: 'NCPoly') -> 'NCPoly':
        self._check_compatible(other)
        result = self.as_dict()
        for key, value in other.terms:
            result[key] = result.get(key, ZERO) + value
        return NCPoly.from_dict(result, self.order, self.kind)

    def __neg__(self) -> 'NCPoly':
        return self.scale(-1)

    def __sub__(self, other: 'NCPoly') -> 'NCPoly':
        return self + (-other)

    def scale(self, value: Number) -> 'NCPoly':
        return NCPoly.from_dict(
            {key: coeff * value for key, coeff in self.terms},
            self.order,
            self.kind,
        )

    def __mul__(self, other) -> 'NCPoly':
        if isinstance(other, NCPoly):
            return ncmul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> 'NCPoly':
        return self.scale(other)

    def __pow__(self, exponent: int) -> 'NCPoly':
        result = NCPoly.unit(self.order, self.kind)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPoly):
            return False
        return (
            self.order == other.order
            and self.kind == other.kind
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.terms, self.order, self.kind))

    def degrees(self) -> set:
        return {sum(key) for key, _ in self.terms}

    def reorder(self, order: str) -> 'NCPoly':
        """the same element expanded in the PBW basis of another order."""
        if order == self.order:
            return self
        result: Dict[Exponents, QScalar] = {}
        for key, coeff in self.terms:
            for new_key, factor in _normal_form(ordered_letters(key, self.order), order):
                result[new_key] = result.get(new_key, ZERO) + coeff * factor
        return NCPoly.from_dict(result, order, self.kind)

    def word_of(self, exponents: Exponents) -> str:
        names = _NAMES[self.kind]
        sequence = (V, MINUS, PLUS, VBAR) if self.order == HAT else (VBAR, PLUS, MINUS, V)
        return ' '.join(f'{names[letter]}^{exponents[letter]}' for letter in sequence)

    def render(self) -> List[str]:
        return [f'{coeff} | {self.word_of(key)}' for key, coeff in self.terms]

    def __str__(self) -> str:
        if self.is_zero:
            return '0'
        return ' + '.join(f'({coeff}) {self.word_of(key)}' for key, coeff in self.terms)

    def __repr__(self) -> str:
        return f'NCPoly({self}, {self.order})'


def normal_order(
    word: Word,
    order: str,
    coeff: Number = ONE,
    rng: Optional[random.Random] = None,
) -> NCPoly:
    """expand coeff * word in the PBW basis of `order`.

    With an `rng`, the descent to rewrite is drawn at random instead of
    taking the leftmost one; the result must not depend on the choice.
    """
    kind = word.kind or MOMENTUM
    letters = tuple(generator.letter for generator in word.letters)
    if rng is None:
        terms = dict(_normal_form(letters, order))
    else:
        terms = _rewrite(letters, order, rng.choice)
    scalar = QScalar.of(coeff)
    return NCPoly.from_dict(
        {key: value * scalar for key, value in terms.items()}, order, kind
    )


def ncmul(a: NCPoly, b: NCPoly) -> NCPoly:
    a._check_compatible(b)
    result: Dict[Exponents, QScalar] = {}
    for key_a, coeff_a in a.terms:
        letters_a = ordered_letters(key_a, a.order)
        for key_b, coeff_b in b.terms:
            letters = letters_a + ordered_letters(key_b, b.order)
            coeff = coeff_a * coeff_b
            for key, factor in _normal_form(letters, a.order):
                result[key] = result.get(key, ZERO) + coeff * factor
    return NCPoly.from_dict(result, a.order, a.kind)


_SWAP = {V: VBAR, VBAR: V, MINUS: MINUS, PLUS: PLUS}


def omega_conjugate(a: NCPoly) -> NCPoly:
    """the anti-linear anti-involution: words reversed, v <-> vbar, q -> q^-1.

    The image is expanded in the opposite order.
    """
    target = opposite(a.order)
    result: Dict[Exponents, QScalar] = {}
    for key, coeff in a.terms:
        letters = tuple(_SWAP[letter] for letter in reversed(ordered_letters(key, a.order)))
        conjugate = coeff.conjugate()
        for new_key, factor in _normal_form(letters, target):
            result[new_key] = result.get(new_key, ZERO) + conjugate * factor
    return NCPoly.from_dict(result, target, a.kind)


def cone_element(order: str) -> NCPoly:
    """L = k- k+ - q^-1 kv kvbar = k+ k- - q kv kvbar."""
    if order == HAT:
        return NCPoly.from_dict(
            {(0, 1, 1, 0): ONE, (1, 0, 0, 1): -q_power(-1)}, HAT
        )
    return NCPoly.from_dict(
        {(0, 1, 1, 0): ONE, (1, 0, 0, 1): -q_power(1)}, TILDE
    )


@lru_cache(maxsize=None)
def _reduce_word(key: Exponents, order: str) -> Tuple[Tuple[Exponents, QScalar], ...]:
    v, minus, plus, vbar = key
    if minus == 0 or plus == 0:
        return ((key, ONE),)
    if order == HAT:
        # v^a -^(b-1) [- +] +^(c-1) vbar^d, with - + -> q^-1 v vbar
        letters = (
            (V,) * v + (MINUS,) * (minus - 1) + (V, VBAR)
            + (PLUS,) * (plus - 1) + (VBAR,) * vbar
        )
        factor = q_power(-1)
    else:
        # vbar^d +^(c-1) [+ -] -^(b-1) v^a, with + - -> q vbar v
        letters = (
            (VBAR,) * vbar + (PLUS,) * (plus - 1) + (VBAR, V)
            + (MINUS,) * (minus - 1) + (V,) * v
        )
        factor = q_power(1)
    result: Dict[Exponents, QScalar] = {}
    for new_key, coeff in _normal_form(letters, order):
        for reduced_key, reduced in _reduce_word(new_key, order):
            result[reduced_key] = result.get(reduced_key, ZERO) + factor * coeff * reduced
    return tuple(sorted(
        (reduced_key, value) for reduced_key, value in result.items()
        if not value.is_zero
    ))


def cone_reduce(a: NCPoly) -> NCPoly:
    """reduce modulo the two-sided ideal generated by the cone element."""
    if a.kind != MOMENTUM:
        raise MixedKinds('cone reduction applies to momentum polynomials only')
    result: Dict[Exponents, QScalar] = {}
    for key, coeff in a.terms:
        for reduced_key, factor in _reduce_word(key, a.order):
            result[reduced_key] = result.get(reduced_key, ZERO) + coeff * factor
    return NCPoly.from_dict(result, a.order, a.kind)
