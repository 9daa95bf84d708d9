from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
import logging

from sympy import Rational

from qconformal.coeff import QScalar, ZERO, ONE, Number, qint, q_power, limit_q1
from qconformal.ncalg import (
    NCPoly, HAT, TILDE, MOMENTUM, Exponents,
    cone_reduce, omega_conjugate, opposite,
)

logger = logging.getLogger(__name__)

VARIABLES = ('z', 'zbar', 'v', 'minus', 'plus', 'vbar')
_INDEX = {name: i for i, name in enumerate(VARIABLES)}

# (alpha, beta, j, n, l, m): powers of z, zbar, v, x-, x+, vbar
Key = Tuple[int, int, int, int, int, int]

GEN_KINDS = ('Mhat', 'Minv', 'T', 'Tinv', 'D', 'partial')


class NegativeExponent(ValueError):
    pass


def _check_key(key: Sequence[int]) -> Key:
    if len(key) != 6 or any(e < 0 for e in key):
        raise NegativeExponent(f'invalid exponent tuple: {tuple(key)}')
    return tuple(key)


@dataclass(frozen=True, eq=False)
class FieldState:
    """a finite sum of monomials z^a zbar^b phi_{jnlm}, each carrying a
    momentum polynomial on its left."""

    terms: Tuple[Tuple[Key, NCPoly], ...]
    basis: str

    @classmethod
    def from_dict(cls, terms: Dict[Key, NCPoly], basis: str) -> 'FieldState':
        return cls(
            tuple(sorted(
                ((key, poly) for key, poly in terms.items() if not poly.is_zero),
                key=lambda item: item[0],
            )),
            basis,
        )

    @classmethod
    def zero(cls, basis: str) -> 'FieldState':
        return cls((), basis)

    def as_dict(self) -> Dict[Key, NCPoly]:
        return dict(self.terms)

    def __iter__(self) -> Iterator[Tuple[Key, NCPoly]]:
        return iter(self.terms)

    @property
    def is_zero(self) -> bool:
        return len(self.terms) == 0

    def _check_basis(self, other: 'FieldState') -> None:
        if self.basis != other.basis:
            raise ValueError(
                f'cannot combine {self.basis} and {other.basis} states'
            )

    def __add__(self, other: 'FieldState') -> 'FieldState':
        self._check_basis(other)
        result = self.as_dict()
        for key, poly in other.terms:
            result[key] = result[key] + poly if key in result else poly
        return FieldState.from_dict(result, self.basis)

    def __neg__(self) -> 'FieldState':
        return self.scale(-1)

    def __sub__(self, other: 'FieldState') -> 'FieldState':
        return self + (-other)

    def scale(self, value: Number) -> 'FieldState':
        return FieldState.from_dict(
            {key: poly.scale(value) for key, poly in self.terms}, self.basis
        )

    def __mul__(self, other) -> 'FieldState':
        """commuting variables multiply, momenta multiply left to right."""
        if not isinstance(other, FieldState):
            return self.scale(other)
        self._check_basis(other)
        result: Dict[Key, NCPoly] = {}
        for key_a, poly_a in self.terms:
            for key_b, poly_b in other.terms:
                key = tuple(x + y for x, y in zip(key_a, key_b))
                poly = poly_a * poly_b
                result[key] = result[key] + poly if key in result else poly
        return FieldState.from_dict(result, self.basis)

    def __rmul__(self, other) -> 'FieldState':
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldState):
            return False
        return self.basis == other.basis and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.terms, self.basis))

    def left_multiply(self, poly: NCPoly) -> 'FieldState':
        return FieldState.from_dict(
            {key: poly * coeff for key, coeff in self.terms}, self.basis
        )

    def map_coefficients(self, function) -> 'FieldState':
        return FieldState.from_dict(
            {key: function(poly) for key, poly in self.terms}, self.basis
        )

    def cone_reduce(self) -> 'FieldState':
        return self.map_coefficients(cone_reduce)

    def render(self) -> List[str]:
        lines = []
        for (alpha, beta, j, n, l, m), poly in self.terms:
            position = f'z^{alpha} zb^{beta} | v^{j} x-^{n} x+^{l} vb^{m}'
            for exponents, coeff in poly:
                lines.append(f'{coeff} | {position} | {poly.word_of(exponents)}')
        return lines

    def __str__(self) -> str:
        return '\n'.join(self.render()) or '0'


def monomial(
    alpha: int, beta: int, j: int, n: int, l: int, m: int,
    coeff: Optional[NCPoly] = None,
    basis: str = HAT,
) -> FieldState:
    key = _check_key((alpha, beta, j, n, l, m))
    if coeff is None:
        coeff = NCPoly.unit(basis)
    return FieldState.from_dict({key: coeff}, basis)


def z_polynomial(
    coefficients: Dict[Tuple[int, int], NCPoly], basis: str
) -> FieldState:
    """sum of z^a zbar^b * P_ab(k) with no coordinate dependence."""
    return FieldState.from_dict(
        {_check_key((a, b, 0, 0, 0, 0)): poly for (a, b), poly in coefficients.items()},
        basis,
    )


class OpExpr(object):
    """operators on field states; products act right to left."""

    def __add__(self, other: 'OpExpr') -> 'OpExpr':
        return Sum((self, other))

    def __sub__(self, other: 'OpExpr') -> 'OpExpr':
        return Sum((self, Product((ScalarMul(QScalar.of(-1)), other))))

    def __neg__(self) -> 'OpExpr':
        return Product((ScalarMul(QScalar.of(-1)), self))

    def __mul__(self, other: Union['OpExpr', Number]) -> 'OpExpr':
        if isinstance(other, OpExpr):
            return Product((self, other))
        return Product((self, ScalarMul(QScalar.of(other))))

    def __rmul__(self, other: Number) -> 'OpExpr':
        return Product((ScalarMul(QScalar.of(other)), self))

    def __pow__(self, exponent: int) -> 'OpExpr':
        return Product((self,) * exponent) if exponent else Identity

    def __call__(self, state: FieldState) -> FieldState:
        return apply(self, state)


@dataclass(frozen=True)
class GenOp(OpExpr):
    kind: str
    variable: str

    def __post_init__(self):
        if self.kind not in GEN_KINDS or self.variable not in _INDEX:
            raise ValueError(f'unknown generator {self.kind}_{self.variable}')

    def __str__(self) -> str:
        return f'{self.kind}_{self.variable}'


@dataclass(frozen=True)
class QBracket(OpExpr):
    """[c0 + sum_k c_k N_k]_q"""

    c0: int
    coeffs: Tuple[Tuple[str, int], ...]

    def __str__(self) -> str:
        parts = [str(self.c0)] + [f'{c:+d}N_{name}' for name, c in self.coeffs]
        return f"[{''.join(parts)}]"


@dataclass(frozen=True)
class ScalarMul(OpExpr):
    value: QScalar

    def __str__(self) -> str:
        return f'({self.value})'


@dataclass(frozen=True)
class Sum(OpExpr):
    terms: Tuple[OpExpr, ...]

    def __str__(self) -> str:
        return '(' + ' + '.join(str(term) for term in self.terms) + ')'


@dataclass(frozen=True)
class Product(OpExpr):
    factors: Tuple[OpExpr, ...]

    def __str__(self) -> str:
        return ' '.join(str(factor) for factor in self.factors) or '1'


Identity = Product(())


def M(variable: str) -> GenOp:
    return GenOp('Mhat', variable)


def Minv(variable: str) -> GenOp:
    return GenOp('Minv', variable)


def T(variable: str) -> GenOp:
    return GenOp('T', variable)


def Ti(variable: str) -> GenOp:
    return GenOp('Tinv', variable)


def D(variable: str) -> GenOp:
    return GenOp('D', variable)


def partial(variable: str) -> GenOp:
    return GenOp('partial', variable)


def bracket(c0: int, **coeffs: int) -> QBracket:
    return QBracket(c0, tuple(sorted(coeffs.items())))


def scalar(value: Number) -> ScalarMul:
    return ScalarMul(QScalar.of(value))


def chain(*factors: OpExpr) -> Product:
    return Product(tuple(factors))


def total(*terms: OpExpr) -> Sum:
    return Sum(tuple(terms))


Action = Tuple[Tuple[Key, QScalar], ...]


def _shift(key: Key, index: int, delta: int) -> Key:
    shifted = list(key)
    shifted[index] += delta
    return tuple(shifted)


def _merge(target: Dict[Key, QScalar], key: Key, value: QScalar) -> None:
    target[key] = target.get(key, ZERO) + value


@lru_cache(maxsize=None)
def _act(op: OpExpr, key: Key) -> Action:
    if isinstance(op, GenOp):
        index = _INDEX[op.variable]
        exponent = key[index]
        if op.kind == 'T':
            return ((key, q_power(exponent)),)
        if op.kind == 'Tinv':
            return ((key, q_power(-exponent)),)
        if op.kind == 'Mhat':
            return ((_shift(key, index, 1), ONE),)
        if op.kind == 'Minv':
            if exponent == 0:
                raise NegativeExponent(
                    f'lowering {op.variable} below exponent 0 in {key}'
                )
            return ((_shift(key, index, -1), ONE),)
        # D and partial: the number factor first, so exponent 0 vanishes
        if exponent == 0:
            return ()
        factor = qint(exponent) if op.kind == 'D' else QScalar.of(exponent)
        return ((_shift(key, index, -1), factor),)

    if isinstance(op, QBracket):
        value = op.c0 + sum(c * key[_INDEX[name]] for name, c in op.coeffs)
        factor = qint(value)
        return ((key, factor),) if not factor.is_zero else ()

    if isinstance(op, ScalarMul):
        return ((key, op.value),) if not op.value.is_zero else ()

    if isinstance(op, Sum):
        result: Dict[Key, QScalar] = {}
        for term in op.terms:
            for new_key, value in _act(term, key):
                _merge(result, new_key, value)
        return tuple((k, v) for k, v in result.items() if not v.is_zero)

    if isinstance(op, Product):
        current: Dict[Key, QScalar] = {key: ONE}
        for factor in reversed(op.factors):
            following: Dict[Key, QScalar] = {}
            for old_key, old_value in current.items():
                for new_key, value in _act(factor, old_key):
                    _merge(following, new_key, old_value * value)
            current = {k: v for k, v in following.items() if not v.is_zero}
            if not current:
                break
        return tuple(current.items())

    raise TypeError(f'not an operator expression: {op!r}')


def apply(op: OpExpr, state: FieldState) -> FieldState:
    """linear action; momentum coefficients pass through unchanged."""
    result: Dict[Key, NCPoly] = {}
    for key, poly in state.terms:
        for new_key, value in _act(op, key):
            scaled = poly.scale(value)
            result[new_key] = result[new_key] + scaled if new_key in result else scaled
    return FieldState.from_dict(result, state.basis)


LimitKey = Tuple[Key, Exponents]


def limit_q1_state(state: FieldState) -> Dict[LimitKey, Rational]:
    """q -> 1 specialization; momenta commute there, so words are keyed by
    their exponents alone."""
    result: Dict[LimitKey, Rational] = {}
    for key, poly in state.terms:
        for exponents, coeff in poly:
            value = limit_q1(coeff)
            if value != 0:
                result[(key, exponents)] = result.get((key, exponents), 0) + value
    return {k: v for k, v in result.items() if v != 0}


def exponent_box(
    z_max: int = 3,
    zbar_max: Optional[int] = None,
    coordinate_max: int = 3,
) -> Iterator[Key]:
    zbar_max = z_max if zbar_max is None else zbar_max
    for key in product(
        range(z_max + 1),
        range(zbar_max + 1),
        *[range(coordinate_max + 1)] * 4,
    ):
        yield key


def compare_operators(
    a: OpExpr,
    b: OpExpr,
    keys: Iterable[Key],
    basis: str = HAT,
    limit: bool = False,
) -> List[Key]:
    """monomials on which the two operators disagree."""
    mismatches = []
    for key in keys:
        state = monomial(*key, basis=basis)
        left, right = apply(a, state), apply(b, state)
        if limit:
            same = limit_q1_state(left) == limit_q1_state(right)
        else:
            same = (left - right).is_zero
        if not same:
            mismatches.append(key)
    return mismatches


def omega_state(state: FieldState) -> FieldState:
    """omega on a mixed state.

    omega(v^j x-^n x+^l vbar^m) = q^{(m-j)(n-l)} vbar^j x+^l x-^n v^m, the
    tilde monomial with j and m exchanged; z and zbar are left alone.
    """
    target = opposite(state.basis)
    result: Dict[Key, NCPoly] = {}
    for (alpha, beta, j, n, l, m), poly in state.terms:
        sign = 1 if state.basis == HAT else -1
        phase = q_power(sign * (m - j) * (n - l))
        image = omega_conjugate(poly).scale(phase)
        key = (alpha, beta, m, n, l, j)
        result[key] = result[key] + image if key in result else image
    return FieldState.from_dict(result, target)
