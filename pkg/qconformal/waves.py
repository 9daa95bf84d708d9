from typing import Dict, Iterator, List, Mapping, NamedTuple, Optional, Tuple
from dataclasses import dataclass, field
import random
import logging

from sympy import Rational

from qconformal.coeff import (
    QScalar, ZERO, ONE, Number,
    q_power, qfact, qgamma_recip, qbeta, limit_q1,
)
from qconformal.ncalg import (
    NCPoly, Letter, HAT, TILDE, V, MINUS, PLUS, VBAR,
    cone_reduce,
)
from qconformal.fieldspace import FieldState, z_polynomial, omega_state

logger = logging.getLogger(__name__)

_EXP_ORDER = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


@dataclass(frozen=True)
class ExpPoly:
    """an integer polynomial P(a, b) used as the extra q-power q^{P(a,b)}."""

    coefficients: Tuple[Tuple[Tuple[int, int], int], ...] = ()

    def evaluate(self, a: int, b: int) -> int:
        return sum(c * a ** i * b ** j for (i, j), c in self.coefficients)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for _, c in self.coefficients)

    @classmethod
    def parse(cls, text: str) -> 'ExpPoly':
        """'c00,c10,c01,c20,c11,c02'; shorter lists leave the rest 0."""
        items = [item.strip() for item in text.split(',') if item.strip()]
        if len(items) > len(_EXP_ORDER):
            raise ValueError(f'too many coefficients in exponent polynomial: {text}')
        try:
            values = [int(item) for item in items]
        except ValueError:
            raise ValueError(f'failed to parse exponent polynomial: {text}')
        return cls(tuple(
            (powers, value) for powers, value in zip(_EXP_ORDER, values) if value
        ))

    @classmethod
    def random(cls, rng: random.Random, low: int = -2, high: int = 2) -> 'ExpPoly':
        return cls(tuple(
            (powers, value)
            for powers, value in ((p, rng.randint(low, high)) for p in _EXP_ORDER)
            if value
        ))

    def __str__(self) -> str:
        values = dict(self.coefficients)
        return ','.join(str(values.get(powers, 0)) for powers in _EXP_ORDER)


@dataclass(frozen=True)
class ReflectedPoly:
    """-P(s - b, s - a): the exponent polynomial seen through omega."""

    poly: ExpPoly
    s: int

    def evaluate(self, a: int, b: int) -> int:
        return -self.poly.evaluate(self.s - b, self.s - a)


ZERO_POLY = ExpPoly()


def _plane_exponent(s: int, a: int, b: int, n: int, basis: str) -> int:
    if basis == HAT:
        return n * (s - 2 * a - 2 * b + 2 * n) + a * (s - a - 1) + b * (-s + a + b + 1)
    return n * (2 * a + 2 * b - 2 * n - s) + a * (a - s - 1) + b * (s - a - b + 1)


def plane_component(s: int, basis: str, poly=None) -> FieldState:
    """the s-th component of the q-plane wave in the given basis.

    The (a, b, n) range is not hard-coded: terms are dropped exactly when a
    reciprocal Gamma_q factor vanishes.
    """
    if s < 0:
        raise ValueError(f'plane component index must be >= 0, got {s}')
    poly = poly or ZERO_POLY
    beta = qbeta(s, basis)
    terms = {}
    for a in range(s + 1):
        for b in range(s + 1):
            for n in range(min(a, b) + 1):
                weight = (
                    qgamma_recip(a - n + 1)
                    * qgamma_recip(b - n + 1)
                    * qgamma_recip(s - a - b + n + 1)
                )
                if weight.is_zero:
                    continue
                sign = -1 if (s - a - b) % 2 else 1
                exponent = _plane_exponent(s, a, b, n, basis) + poly.evaluate(a, b)
                coeff = beta * weight * q_power(exponent) * sign / qfact(n)
                momenta = (s - a - b + n, b - n, a - n, n)
                key = (0, 0, n, a - n, b - n, s - a - b + n)
                terms[key] = NCPoly.from_dict({momenta: coeff}, basis)
    return FieldState.from_dict(terms, basis)


def assemble_exp(
    s_max: int, basis: str, polys: Optional[Mapping[int, ExpPoly]] = None
) -> List[Tuple[int, QScalar, FieldState]]:
    """the plane-wave series as (s, 1/[s]_q!, component) triples; nothing
    is summed."""
    polys = polys or {}
    return [
        (s, ONE / qfact(s), plane_component(s, basis, polys.get(s)))
        for s in range(s_max + 1)
    ]


def momentum(basis: str, *factors: Tuple[Letter, int]) -> NCPoly:
    """the product k_a^i k_b^j ... taken in the written order."""
    result = NCPoly.unit(basis)
    for letter, power in factors:
        if power:
            result = result * NCPoly.generator(letter, basis, power)
    return result


def _linear(basis: str, constant: Letter, coeff: QScalar, variable: str,
            shifted: Letter) -> FieldState:
    """(k_c - coeff * w * k_d) with w = z or zbar"""
    power = (1, 0) if variable == 'z' else (0, 1)
    return z_polynomial({
        (0, 0): NCPoly.generator(constant, basis),
        power: NCPoly.generator(shifted, basis).scale(-coeff),
    }, basis)


# homogeneous solutions: per (sign, basis) the variable, the q-exponents
# (s-coefficient, offset) of the two linear factors, and per family a the
# prefix letters L1^i L2^(m-i-j) L3^j and the letters of the two factors.
_HOMOGENEOUS = {
    ('+', HAT): ('z', ((1, 6), (1, 3)), {
        1: ((V, MINUS, VBAR), ((V, MINUS), (V, MINUS))),
        2: ((V, None, VBAR), ((V, MINUS), (PLUS, VBAR))),
        3: ((V, PLUS, VBAR), ((PLUS, VBAR), (PLUS, VBAR))),
    }),
    ('-', HAT): ('zbar', ((0, -1), (0, 0)), {
        1: ((V, MINUS, VBAR), ((VBAR, MINUS), (VBAR, MINUS))),
        2: ((V, None, VBAR), ((PLUS, V), (VBAR, MINUS))),
        3: ((V, PLUS, VBAR), ((PLUS, V), (PLUS, V))),
    }),
    ('+', TILDE): ('z', ((0, 0), (0, 1)), {
        1: ((VBAR, MINUS, V), ((V, MINUS), (V, MINUS))),
        2: ((VBAR, None, V), ((PLUS, VBAR), (V, MINUS))),
        3: ((VBAR, PLUS, V), ((PLUS, VBAR), (PLUS, VBAR))),
    }),
    ('-', TILDE): ('zbar', ((1, 3), (1, 4)), {
        1: ((VBAR, MINUS, V), ((VBAR, MINUS), (VBAR, MINUS))),
        2: ((V, None, VBAR), ((VBAR, MINUS), (PLUS, V))),
        3: ((V, PLUS, VBAR), ((PLUS, V), (PLUS, V))),
    }),
}

# exponents as first written down for tilde minus; these leave a residual
# that only vanishes at q = 1.
_PRINTED_EXPONENTS = {
    ('-', TILDE): ((1, 1), (1, 2)),
}

CONSTANT_ROLES = {
    ('+', HAT): 'p_hat',
    ('-', HAT): 'r_hat',
    ('+', TILDE): 'p_tilde',
    ('-', TILDE): 'r_tilde',
}


@dataclass(frozen=True)
class SolutionConstants:
    """a sparse table of independent constants; missing entries are 0."""

    role: str
    values: Mapping[tuple, QScalar] = field(default_factory=dict)

    def get(self, *index) -> QScalar:
        return QScalar.of(self.values.get(tuple(index), ZERO))

    @classmethod
    def one_hot(cls, role: str, *index) -> 'SolutionConstants':
        return cls(role, {tuple(index): ONE})


def homogeneous_indices(m: int) -> Iterator[Tuple[int, int, int]]:
    """(a, i, j) of the constants of one (m, s) block; j = 0 for a = 2."""
    for i in range(m + 1):
        for j in range(m - i + 1):
            yield (1, i, j)
        yield (2, i, 0)
        for j in range(m - i + 1):
            yield (3, i, j)


def homogeneous_coefficient(
    sign: str, basis: str, m: int, s: int, constants: SolutionConstants,
    variant: str = 'corrected',
) -> FieldState:
    """F^{h+-}_{ms}(k) as a momentum-valued polynomial in z or zbar.

    variant='printed' swaps in the exponents of _PRINTED_EXPONENTS where
    one is recorded."""
    variable, exponents, families = _HOMOGENEOUS[(sign, basis)]
    if variant == 'printed':
        exponents = _PRINTED_EXPONENTS.get((sign, basis), exponents)
    elif variant != 'corrected':
        raise ValueError(f'unknown homogeneous variant: {variant}')
    scales = [q_power(c * s + offset) for c, offset in exponents]
    result = FieldState.zero(basis)
    for a, i, j in homogeneous_indices(m):
        value = constants.get(m, s, a, i, j)
        if value.is_zero:
            continue
        (first, middle, last), factors = families[a]
        if middle is None:
            prefix = momentum(basis, (first, i), (last, m - i))
        else:
            prefix = momentum(basis, (first, i), (middle, m - i - j), (last, j))
        term = z_polynomial({(0, 0): prefix.scale(value)}, basis)
        for (constant, shifted), scale in zip(factors, scales):
            term = term * _linear(basis, constant, scale, variable, shifted)
        result = result + term
    return result


def maxwell_homogeneous(
    sign: str, basis: str, m: int, s: int, constants: SolutionConstants,
    variant: str = 'corrected',
) -> FieldState:
    """the (m, s) homogeneous solution block times its plane component."""
    coefficient = homogeneous_coefficient(sign, basis, m, s, constants, variant)
    if coefficient.is_zero:
        return coefficient
    return coefficient * plane_component(s, basis)


Gammas = Mapping[Letter, Number]


def normalizer(s: int, basis: str, variant: str = 'shifted') -> QScalar:
    """d_s. 'printed' is beta^s / beta^{s+1}; 'shifted' is
    beta^{s-1} / beta^s, which is what the field-current identity needs,
    with value 1 at s = 0."""
    if variant == 'printed':
        return qbeta(s, basis) / qbeta(s + 1, basis)
    if variant == 'shifted':
        return ONE if s == 0 else qbeta(s - 1, basis) / qbeta(s, basis)
    raise ValueError(f'unknown normalizer variant: {variant}')


class _Pair(NamedTuple):
    first: Letter
    first_scale: QScalar
    second: Letter
    second_scale: QScalar
    constant: Letter
    shift: QScalar
    shifted: Letter


def _inhomogeneous_layout(sign: str, basis: str, s: int):
    if (sign, basis) == ('+', HAT):
        return 'z', 2 * q_power(-s), [
            _Pair(MINUS, q_power(-s - 5), V, ONE, V, q_power(s + 3), MINUS),
            _Pair(VBAR, q_power(-s - 5), PLUS, ONE, PLUS, q_power(s + 3), VBAR),
        ]
    if (sign, basis) == ('-', HAT):
        return 'zbar', 2 * q_power(-2 * s - 2), [
            _Pair(MINUS, ONE, VBAR, q_power(-2), VBAR, ONE, MINUS),
            _Pair(V, ONE, PLUS, q_power(-2), PLUS, ONE, V),
        ]
    if (sign, basis) == ('+', TILDE):
        return 'z', 2 * q_power(s - 2), [
            _Pair(MINUS, ONE, V, q_power(-1), V, q_power(1), MINUS),
            _Pair(VBAR, ONE, PLUS, q_power(-1), PLUS, q_power(1), VBAR),
        ]
    if (sign, basis) == ('-', TILDE):
        return 'zbar', QScalar.of(2), [
            _Pair(MINUS, q_power(-s - 3), VBAR, q_power(1), VBAR, q_power(s + 2), MINUS),
            _Pair(V, q_power(-s - 3), PLUS, q_power(1), PLUS, q_power(s + 2), V),
        ]
    raise ValueError(f'unknown sign/basis: {sign}/{basis}')


def inhomogeneous_coefficient(
    sign: str, basis: str, m: int, s: int, gammas: Gammas,
    variant: str = 'shifted',
) -> FieldState:
    """F^{+-}_{ms}(k) as a momentum-valued polynomial in z or zbar."""
    variable, prefactor, pairs = _inhomogeneous_layout(sign, basis, s)
    power = (1, 0) if variable == 'z' else (0, 1)
    prefactor = prefactor * normalizer(s, basis, variant)
    result = FieldState.zero(basis)
    for pair in pairs:
        head = z_polynomial({
            (0, 0): momentum(basis, (pair.first, m)).scale(
                pair.first_scale * gammas.get(pair.first, 0)),
            power: momentum(basis, (pair.second, m)).scale(
                pair.second_scale * gammas.get(pair.second, 0)),
        }, basis)
        result = result + head * _linear(
            basis, pair.constant, pair.shift, variable, pair.shifted)
    return result.scale(prefactor)


def source_polynomial(basis: str, m: int, gammas: Gammas) -> NCPoly:
    """K^s_m(k) = sum_kappa gamma_kappa k_kappa^{m+1}"""
    result = NCPoly.zero(basis)
    for letter in (V, MINUS, PLUS, VBAR):
        value = gammas.get(letter, 0)
        if value:
            result = result + NCPoly.generator(letter, basis, m + 1).scale(value)
    return result


def currents(basis: str, m: int, s: int, gammas: Gammas) -> Dict[Letter, NCPoly]:
    """J^{ms}_kappa(k) for kappa = v, -, +, vbar."""
    source = source_polynomial(basis, m, gammas)

    def times(letter: Letter, scale: QScalar) -> NCPoly:
        return (source * NCPoly.generator(letter, basis)).scale(scale)

    if basis == HAT:
        return {
            PLUS: times(MINUS, -ONE),
            MINUS: times(PLUS, -q_power(-s - 2)),
            V: times(VBAR, ONE),
            VBAR: times(V, q_power(-s - 2)),
        }
    return {
        PLUS: times(MINUS, -q_power(s + 1)),
        MINUS: times(PLUS, -q_power(-1)),
        V: times(VBAR, ONE),
        VBAR: times(V, q_power(s)),
    }


def current_state(basis: str, m: int, s: int, gammas: Gammas) -> FieldState:
    """J0 = zbar z J+ + z Jv + zbar Jvbar + J- on the plane component s-1."""
    if s < 1:
        raise IndexError(f'currents pair with plane component s-1; got s={s}')
    parts = currents(basis, m, s, gammas)
    coefficient = z_polynomial({
        (1, 1): parts[PLUS],
        (1, 0): parts[V],
        (0, 1): parts[VBAR],
        (0, 0): parts[MINUS],
    }, basis)
    return coefficient * plane_component(s - 1, basis)


def maxwell_inhomogeneous(
    sign: str, basis: str, m: int, s: int, gammas: Gammas,
    variant: str = 'shifted',
) -> Tuple[FieldState, FieldState]:
    """(field at plane index s, current at plane index s-1)"""
    current = current_state(basis, m, s, gammas)
    coefficient = inhomogeneous_coefficient(sign, basis, m, s, gammas, variant)
    field_ = coefficient * plane_component(s, basis)
    return field_, current


# (J letter, k letter, q-exponent as (s-coefficient, offset)) per identity
_IDENTITIES = {
    HAT: [
        ('master', [(PLUS, PLUS, (0, 1)), (V, V, (0, 0)),
                    (VBAR, VBAR, (1, 2)), (MINUS, MINUS, (1, 1))]),
        ('diagonal-1', [(PLUS, PLUS, (0, 1)), (V, V, (0, 0))]),
        ('diagonal-2', [(VBAR, VBAR, (0, 1)), (MINUS, MINUS, (0, 0))]),
        ('diagonal-3', [(PLUS, PLUS, (0, 0)), (VBAR, VBAR, (1, 1))]),
        ('diagonal-4', [(V, V, (0, 0)), (MINUS, MINUS, (1, 1))]),
        ('crossed-1', [(PLUS, VBAR, (0, 1)), (V, MINUS, (0, 0))]),
        ('crossed-2', [(VBAR, PLUS, (0, 1)), (MINUS, V, (0, 0))]),
        ('crossed-3', [(PLUS, V, (0, 0)), (VBAR, MINUS, (1, 1))]),
        ('crossed-4', [(V, PLUS, (0, 0)), (MINUS, VBAR, (1, 1))]),
    ],
    TILDE: [
        ('master', [(PLUS, PLUS, (0, 0)), (V, V, (1, 0)),
                    (VBAR, VBAR, (0, 0)), (MINUS, MINUS, (1, 0))]),
        ('diagonal-1', [(PLUS, PLUS, (0, 0)), (V, V, (1, 0))]),
        ('diagonal-2', [(VBAR, VBAR, (0, 0)), (MINUS, MINUS, (1, 0))]),
        ('diagonal-3', [(PLUS, PLUS, (0, 0)), (VBAR, VBAR, (0, 0))]),
        ('diagonal-4', [(V, V, (0, 0)), (MINUS, MINUS, (0, 0))]),
        ('crossed-1', [(PLUS, VBAR, (0, 0)), (V, MINUS, (1, 0))]),
        ('crossed-2', [(VBAR, PLUS, (0, 0)), (MINUS, V, (1, 0))]),
        ('crossed-3', [(PLUS, V, (0, 0)), (VBAR, MINUS, (0, 0))]),
        ('crossed-4', [(V, PLUS, (0, 0)), (MINUS, VBAR, (0, 0))]),
    ],
}


def current_identity_suite(
    basis: str, m: int, s: int, gammas: Gammas, on_cone: bool = True,
) -> List[Tuple[str, NCPoly]]:
    """the master contraction and its eight splittings, as residuals."""
    parts = currents(basis, m, s, gammas)
    results = []
    for name, summands in _IDENTITIES[basis]:
        residual = NCPoly.zero(basis)
        for current, letter, (c, offset) in summands:
            residual = residual + (
                parts[current] * NCPoly.generator(letter, basis)
            ).scale(q_power(c * s + offset))
        results.append((name, cone_reduce(residual) if on_cone else residual))
    return results


def scalar_ratio(a: NCPoly, b: NCPoly) -> Optional[QScalar]:
    """r with a = r * b, or None when no such scalar exists."""
    if b.is_zero:
        return ZERO if a.is_zero else None
    key, value = b.terms[0]
    ratio = a.as_dict().get(key, ZERO) / value
    return ratio if (a - b.scale(ratio)).is_zero else None


def state_ratio(a: FieldState, b: FieldState) -> Optional[QScalar]:
    if b.is_zero:
        return ZERO if a.is_zero else None
    key, poly = b.terms[0]
    other = a.as_dict().get(key, NCPoly.zero(b.basis))
    ratio = scalar_ratio(other, poly)
    if ratio is None:
        return None
    return ratio if (a - b.scale(ratio)).is_zero else None


def s_independent_gammas(sign: str, basis: str, s: int, base: Gammas,
                         variant: str = 'shifted') -> Dict[Letter, QScalar]:
    """gamma^s = gamma * q^{2s}/d_s (hat) or gamma * q^{-s}/d~_s (tilde)"""
    d = normalizer(s, basis, variant)
    scale = q_power(2 * s) / d if basis == HAT else q_power(-s) / d
    return {letter: scale * value for letter, value in base.items()}


def s_independence(
    sign: str, basis: str, m: int, s_values: Tuple[int, ...], base: Gammas,
    variant: str = 'shifted',
) -> List[FieldState]:
    """differences F_{m s} - F_{m s0} under the s-uniformizing gamma choice."""
    coefficients = [
        inhomogeneous_coefficient(
            sign, basis, m, s,
            s_independent_gammas(sign, basis, s, base, variant), variant)
        for s in s_values
    ]
    return [coefficient - coefficients[0] for coefficient in coefficients[1:]]


def current_scale_consistency(basis: str, m: int, s: int, base: Gammas) -> bool:
    """whether one scalar c makes c * J^{m,s+1}_kappa = J^{m,s}_kappa for
    every kappa at once."""
    here = currents(basis, m, s, base)
    there = currents(basis, m, s + 1, base)
    ratios = {scalar_ratio(here[letter], there[letter]) for letter in here}
    return None not in ratios and len(ratios) == 1


def omega_plane_comparison(s: int, poly: Optional[ExpPoly] = None) -> FieldState:
    """omega(h^_s) - h~_s with the exponent polynomial mapped through omega."""
    poly = poly or ZERO_POLY
    image = omega_state(plane_component(s, HAT, poly))
    target = plane_component(s, TILDE, ReflectedPoly(poly, s))
    return image - target


def classical_pairing(k: Mapping[Letter, Rational], x: Mapping[Letter, Rational]) -> Rational:
    """1/2 (k+ x- + k- x+ - kv vbar - kvbar v)"""
    return Rational(1, 2) * (
        k[PLUS] * x[MINUS] + k[MINUS] * x[PLUS] - k[V] * x[VBAR] - k[VBAR] * x[V]
    )


def evaluate_classical(
    state: FieldState, k: Mapping[Letter, Rational], x: Mapping[Letter, Rational]
) -> Rational:
    """the q -> 1 value at commuting numeric momenta and coordinates."""
    total = Rational(0)
    for (alpha, beta, j, n, l, m_), poly in state.terms:
        if alpha or beta:
            raise ValueError('classical evaluation needs a z-independent state')
        position = x[V] ** j * x[MINUS] ** n * x[PLUS] ** l * x[VBAR] ** m_
        for exponents, coeff in poly:
            value = limit_q1(coeff) * position
            for letter in (V, MINUS, PLUS, VBAR):
                value = value * k[letter] ** exponents[letter]
            total += value
    return total


def _random_rational(rng: random.Random) -> Rational:
    numerator = 0
    while numerator == 0:
        numerator = rng.randint(-9, 9)
    return Rational(numerator, rng.randint(1, 9))


def random_on_cone(rng: random.Random) -> Tuple[Dict[Letter, Rational], Dict[Letter, Rational]]:
    """commuting momenta with k- k+ = kv kvbar and arbitrary coordinates."""
    k = {V: _random_rational(rng), MINUS: _random_rational(rng), VBAR: _random_rational(rng)}
    k[PLUS] = k[V] * k[VBAR] / k[MINUS]
    x = {letter: _random_rational(rng) for letter in (V, MINUS, PLUS, VBAR)}
    return k, x


def classical_plane_oracle(s: int, rng: random.Random, samples: int = 20) -> List[str]:
    """mismatches between f_s at q = 1 and the s-th power of the pairing."""
    component = plane_component(s, HAT)
    mismatches = []
    for _ in range(samples):
        k, x = random_on_cone(rng)
        got = evaluate_classical(component, k, x)
        expected = classical_pairing(k, x) ** s
        if got != expected:
            mismatches.append(f'{got} != {expected} at k={k}, x={x}')
    return mismatches
