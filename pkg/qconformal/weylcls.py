"""classical (q = 1) tensors of linearized conformal gravity and Maxwell
theory, and their helicity-polynomial dictionaries."""

from typing import Dict, List, NamedTuple, Tuple, Union
from itertools import product
import random
import logging

import numpy
import simplejson as json
from sympy import (
    I, Integer, LeviCivita, Poly, Rational, Symbol, diff, expand, symbols, sympify,
)

from qconformal.ncalg import NCPoly, HAT
from qconformal.fieldspace import (
    FieldState, OpExpr, M, partial, bracket, scalar, chain, total, limit_q1_state,
)
from qconformal.eqlib import build_weyl

logger = logging.getLogger(__name__)

X = symbols('x0 x1 x2 x3')
XP, XM, V, VB = symbols('xp xm v vb')
Z, ZB = symbols('z zb')
LIGHT_CONE = (V, XM, XP, VB)

ETA = numpy.diag([Integer(1), Integer(-1), Integer(-1), Integer(-1)])
ETA_INV = ETA

HALF = Rational(1, 2)

Components = Dict[Tuple[int, int], object]


class NotSymmetric(ValueError):
    pass


class NotAntisymmetric(ValueError):
    pass


class SymmetryViolation(ValueError):
    pass


class Inconsistent(ValueError):
    pass


class WeylComponents(NamedTuple):
    c: Tuple[object, ...]
    plus: Tuple[object, ...]
    minus: Tuple[object, ...]
    tprime: Dict[Tuple[int, int], object]


_TO_LIGHT_CONE = {
    X[0]: (XP + XM) / 2,
    X[3]: (XP - XM) / 2,
    X[1]: (V + VB) / 2,
    X[2]: I * (V - VB) / 2,
}

_FROM_LIGHT_CONE = {
    XP: X[0] + X[3],
    XM: X[0] - X[3],
    V: X[1] - I * X[2],
    VB: X[1] + I * X[2],
}


def coord_map(expr) -> object:
    """x0..x3 -> x+, x-, v, vbar"""
    return expand(sympify(expr).xreplace(_TO_LIGHT_CONE))


def inverse_coord_map(expr) -> object:
    return expand(sympify(expr).xreplace(_FROM_LIGHT_CONE))


def box(expr) -> object:
    return expand(
        diff(expr, X[0], 2) - diff(expr, X[1], 2)
        - diff(expr, X[2], 2) - diff(expr, X[3], 2)
    )


def light_cone_box(expr) -> object:
    """the image of the box: 4 (d- d+ - dv dvbar)"""
    return expand(4 * (diff(expr, XM, XP) - diff(expr, V, VB)))


def zeros(rank: int) -> numpy.ndarray:
    result = numpy.empty((4,) * rank, dtype=object)
    result.fill(Integer(0))
    return result


def sym_tensor(entries: Components) -> numpy.ndarray:
    """a symmetric rank-2 tensor from its upper or lower triangle."""
    result = zeros(2)
    for (mu, nu), value in entries.items():
        value = sympify(value)
        other = entries.get((nu, mu))
        if other is not None and expand(sympify(other) - value) != 0:
            raise NotSymmetric(f'h[{mu},{nu}] = {value} but h[{nu},{mu}] = {other}')
        result[mu, nu] = result[nu, mu] = value
    return result


def check_symmetric(h: numpy.ndarray) -> None:
    for mu, nu in product(range(4), repeat=2):
        if expand(h[mu, nu] - h[nu, mu]) != 0:
            raise NotSymmetric(f'tensor is not symmetric at ({mu},{nu})')


def trace(h: numpy.ndarray) -> object:
    return expand(sum(ETA_INV[mu, mu] * h[mu, mu] for mu in range(4)))


def traceless_part(h: numpy.ndarray) -> numpy.ndarray:
    t = trace(h)
    result = zeros(2)
    for mu, nu in product(range(4), repeat=2):
        result[mu, nu] = expand(h[mu, nu] - ETA[mu, nu] * t / 4)
    return result


def riemann(h: numpy.ndarray) -> numpy.ndarray:
    """R_{mnst} = 1/2 (d_m d_t h_ns + d_n d_s h_mt - d_m d_s h_nt - d_n d_t h_ms)"""
    check_symmetric(h)
    result = zeros(4)
    for m, n, s, t in product(range(4), repeat=4):
        result[m, n, s, t] = expand(HALF * (
            diff(h[n, s], X[m], X[t]) + diff(h[m, t], X[n], X[s])
            - diff(h[n, t], X[m], X[s]) - diff(h[m, s], X[n], X[t])
        ))
    return result


def ricci(r: numpy.ndarray) -> numpy.ndarray:
    result = zeros(2)
    for n, t in product(range(4), repeat=2):
        result[n, t] = expand(sum(ETA_INV[m, m] * r[m, n, m, t] for m in range(4)))
    return result


def scalar_curvature(ric: numpy.ndarray) -> object:
    return trace(ric)


def linearized_weyl(h: numpy.ndarray) -> numpy.ndarray:
    """C_{mnst} of g = eta + h to first order in h."""
    r = riemann(h)
    ric = ricci(r)
    curvature = scalar_curvature(ric)
    g = ETA
    result = zeros(4)
    for m, n, s, t in product(range(4), repeat=4):
        result[m, n, s, t] = expand(
            r[m, n, s, t]
            - HALF * (g[m, s] * ric[n, t] + g[n, t] * ric[m, s]
                      - g[m, t] * ric[n, s] - g[n, s] * ric[m, t])
            + Rational(1, 6) * (g[m, s] * g[n, t] - g[m, t] * g[n, s]) * curvature
        )
    return result


def weyl_equations_index(h: numpy.ndarray) -> numpy.ndarray:
    """d^n d^t C_{mnst}"""
    c = linearized_weyl(h)
    result = zeros(2)
    for m, s in product(range(4), repeat=2):
        result[m, s] = expand(sum(
            ETA_INV[n, n] * ETA_INV[t, t] * diff(c[m, n, s, t], X[n], X[t])
            for n, t in product(range(4), repeat=2)
        ))
    return result


def check_weyl_symmetries(c: numpy.ndarray) -> None:
    """antisymmetry, pair symmetry, first Bianchi identity and tracelessness,
    all exact."""
    for m, n, s, t in product(range(4), repeat=4):
        value = c[m, n, s, t]
        if expand(value + c[n, m, s, t]) != 0 or expand(value + c[m, n, t, s]) != 0:
            raise SymmetryViolation(f'not antisymmetric at ({m},{n},{s},{t})')
        if expand(value - c[s, t, m, n]) != 0:
            raise SymmetryViolation(f'no pair symmetry at ({m},{n},{s},{t})')
        if expand(value + c[m, s, t, n] + c[m, t, n, s]) != 0:
            raise SymmetryViolation(f'first Bianchi identity fails at ({m},{n},{s},{t})')
    for n, t in product(range(4), repeat=2):
        if expand(sum(ETA_INV[m, m] * c[m, n, m, t] for m in range(4))) != 0:
            raise SymmetryViolation(f'trace does not vanish at ({n},{t})')


_WEYL_INDICES = (
    (0, 1, 2, 3), (2, 1, 2, 1), (0, 2, 0, 2), (3, 0, 1, 2), (2, 0, 2, 1),
    (1, 0, 1, 2), (2, 0, 2, 3), (3, 1, 3, 2), (2, 1, 2, 3), (1, 2, 1, 3),
)


def weyl_components(c: numpy.ndarray) -> Tuple[object, ...]:
    """the ten independent components C0 .. C9"""
    return tuple(expand(c[index]) for index in _WEYL_INDICES)


def helicity_components(c: Tuple[object, ...]) -> Tuple[Tuple[object, ...], Tuple[object, ...]]:
    """(C+_0..C+_4, C-_0..C-_4) with the printed normalizations"""
    c0, c1, c2, c3, c4, c5, c6, c7, c8, c9 = c
    plus = (
        c2 - HALF * c1 - c6 + I * (c0 + HALF * c3 + c7),
        2 * (c4 - c8 + I * (c9 - c5)),
        3 * (c1 - I * c3),
        8 * (c4 + c8 + I * (c9 + c5)),
        c2 - HALF * c1 + c6 + I * (c0 + HALF * c3 - c7),
    )
    minus = (
        c2 - HALF * c1 - c6 - I * (c0 + HALF * c3 + c7),
        2 * (c4 - c8 - I * (c9 - c5)),
        3 * (c1 + I * c3),
        2 * (c4 + c8 - I * (c9 + c5)),
        c2 - HALF * c1 + c6 - I * (c0 + HALF * c3 - c7),
    )
    return tuple(map(expand, plus)), tuple(map(expand, minus))


def helicity_tensor(t: numpy.ndarray) -> Dict[Tuple[int, int], object]:
    """T'_ij (or h'_ij) for the bidegree-(2,2) polynomial in z, zbar."""
    result = {
        (2, 2): t[0, 0] + 2 * t[0, 3] + t[3, 3],
        (1, 1): t[0, 0] - t[3, 3],
        (0, 0): t[0, 0] - 2 * t[0, 3] + t[3, 3],
        (2, 1): t[0, 1] + I * t[0, 2] + t[1, 3] + I * t[2, 3],
        (1, 2): t[0, 1] - I * t[0, 2] + t[1, 3] - I * t[2, 3],
        (1, 0): t[0, 1] + I * t[0, 2] - t[1, 3] - I * t[2, 3],
        (0, 1): t[0, 1] - I * t[0, 2] - t[1, 3] + I * t[2, 3],
        (2, 0): t[1, 1] + 2 * I * t[1, 2] - t[2, 2],
        (0, 2): t[1, 1] - 2 * I * t[1, 2] - t[2, 2],
    }
    return {key: expand(value) for key, value in result.items()}


def weyl_polynomial(components: Tuple[object, ...], variable: Symbol) -> object:
    return expand(sum(value * variable ** k for k, value in enumerate(components)))


def tensor_polynomial(tprime: Dict[Tuple[int, int], object]) -> object:
    return expand(sum(value * Z ** i * ZB ** j for (i, j), value in tprime.items()))


def dictionaries(c: numpy.ndarray, t: numpy.ndarray) -> WeylComponents:
    check_weyl_symmetries(c)
    components = weyl_components(c)
    plus, minus = helicity_components(components)
    return WeylComponents(components, plus, minus, helicity_tensor(t))


def _real_imaginary(value) -> Tuple[Rational, Rational]:
    re, im = sympify(value).as_real_imag()
    return Rational(re), Rational(im)


def to_states(expr, basis: str = HAT) -> Tuple[FieldState, FieldState]:
    """split a polynomial in z, zbar and light-cone coordinates with
    Gaussian-rational coefficients into real and imaginary states."""
    expr = expand(sympify(expr))
    if expr == 0:
        return FieldState.zero(basis), FieldState.zero(basis)
    poly = Poly(expr, Z, ZB, *LIGHT_CONE)
    real, imaginary = {}, {}
    for monom, coeff in poly.terms():
        re, im = _real_imaginary(coeff)
        if re != 0:
            real[tuple(monom)] = NCPoly.scalar(re, basis)
        if im != 0:
            imaginary[tuple(monom)] = NCPoly.scalar(im, basis)
    return FieldState.from_dict(real, basis), FieldState.from_dict(imaginary, basis)


def from_state(state: FieldState) -> object:
    """the q -> 1 value of a coordinate-only state as a sympy polynomial."""
    result = Integer(0)
    for (key, exponents), value in limit_q1_state(state).items():
        if any(exponents):
            raise ValueError(f'state carries momentum dependence {exponents}')
        alpha, beta, j, n, l, m = key
        result += value * Z ** alpha * ZB ** beta * V ** j * XM ** n * XP ** l * VB ** m
    return expand(result)


def apply_classical(op: OpExpr, expr) -> object:
    """apply a real operator to a complex polynomial at q = 1."""
    real, imaginary = to_states(expr)
    return expand(from_state(op(real)) + I * from_state(op(imaginary)))


def classical_maxwell(sign: str) -> OpExpr:
    """1/2((dv + zbar d+)[2 - Nz] - (d- + zbar dvbar) dz) and its conjugate."""
    w, dw = ('zbar', 'z') if sign == '+' else ('z', 'zbar')
    first, second = ('v', 'vbar') if sign == '+' else ('vbar', 'v')
    coeffs = {dw: -1}
    return chain(
        scalar(HALF),
        chain(
            total(partial(first), chain(M(w), partial('plus'))),
            bracket(2, **coeffs),
        ) - chain(
            total(partial('minus'), chain(M(w), partial(second))),
            partial(dw),
        ),
    )


def maxwell_fields(potential) -> Tuple[numpy.ndarray, List[object]]:
    """F_{mn} = d_m A_n - d_n A_m and J_n = d^m F_{mn}"""
    potential = [sympify(a) for a in potential]
    f = zeros(2)
    for m, n in product(range(4), repeat=2):
        f[m, n] = expand(diff(potential[n], X[m]) - diff(potential[m], X[n]))
    current = [
        expand(sum(ETA_INV[m, m] * diff(f[m, n], X[m]) for m in range(4)))
        for n in range(4)
    ]
    return f, current


def maxwell_dictionary(f: numpy.ndarray, current) -> Tuple[object, object, object]:
    """(F+(z), F-(zbar), J0(z, zbar))"""
    for m, n in product(range(4), repeat=2):
        if expand(f[m, n] + f[n, m]) != 0:
            raise NotAntisymmetric(f'field strength is not antisymmetric at ({m},{n})')

    def helicity(sign: int) -> List[object]:
        return [
            expand(f[k, 0] + sign * I / 2 * sum(
                LeviCivita(k, l, m) * f[l, m]
                for l, m in product(range(1, 4), repeat=2)
            ))
            for k in range(1, 4)
        ]

    p1, p2, p3 = helicity(1)
    m1, m2, m3 = helicity(-1)
    j0, j1, j2, j3 = [sympify(j) for j in current]
    f_plus = Z ** 2 * (p1 + I * p2) - 2 * Z * p3 - (p1 - I * p2)
    f_minus = ZB ** 2 * (m1 - I * m2) - 2 * ZB * m3 - (m1 + I * m2)
    j_zero = ZB * Z * (j0 + j3) + Z * (j1 + I * j2) + ZB * (j1 - I * j2) + (j0 - j3)
    return expand(f_plus), expand(f_minus), expand(j_zero)


def proportionality(got, expected) -> Union[None, str, object]:
    """c with got = c * expected; None when both vanish, 'inconsistent' when
    no constant exists."""
    got, expected = expand(got), expand(expected)
    if expected == 0:
        return None if got == 0 else 'inconsistent'
    gens = (Z, ZB) + LIGHT_CONE + X
    a = Poly(expected, *gens)
    monom, coeff = a.terms()[0]
    constant = Poly(got, *gens).as_dict().get(monom, 0) / coeff if got != 0 else Integer(0)
    constant = sympify(constant)
    return constant if expand(got - constant * expected) == 0 else 'inconsistent'


def maxwell_consistency(potential) -> Dict[str, object]:
    """compare the indexless q = 1 Maxwell operators on F+-(z) with the
    helicity image of d^m F_{mn}."""
    f, current = maxwell_fields(potential)
    f_plus, f_minus, j_zero = maxwell_dictionary(f, current)
    expected = coord_map(j_zero)
    result = {}
    for sign, field in (('+', f_plus), ('-', f_minus)):
        got = apply_classical(classical_maxwell(sign), coord_map(field))
        result[sign] = proportionality(got, expected)
    logger.debug('maxwell consistency for %s: %s', potential, result)
    return result


def indexless_metric(h: numpy.ndarray) -> object:
    """h(z, zbar) in light-cone coordinates"""
    return coord_map(tensor_polynomial(helicity_tensor(h)))


def index_vs_indexless(h: numpy.ndarray, sign: str, n: int = 2) -> Dict[str, object]:
    """per-component constants c_k with (route B)_k = c_k (route A)_k.

    Route A extracts C+-_k from the linearized Weyl tensor; route B applies
    the classical operator I~+-(n) to h(z, zbar). Leftover dependence on the
    conjugate variable is reported as inconsistent.
    """
    c = linearized_weyl(h)
    plus, minus = helicity_components(weyl_components(c))
    expected = plus if sign == '+' else minus
    variable, other = (Z, ZB) if sign == '+' else (ZB, Z)
    image = apply_classical(build_weyl(sign, n, deformed=False), indexless_metric(h))
    by_degree = Poly(image, variable, other).as_dict() if image != 0 else {}
    constants: List[Union[None, str, object]] = [
        proportionality(by_degree.get((k, 0), Integer(0)), coord_map(expected[k]))
        for k in range(5)
    ]
    leftover = any(j > 0 or i > 4 for i, j in by_degree)
    consistent = not leftover and 'inconsistent' not in constants
    return {'sign': sign, 'n': n, 'constants': constants, 'consistent': consistent}


def calibrate(seeds: List[numpy.ndarray], sign: str, n: int = 2,
              strict: bool = False) -> Dict[str, object]:
    """per-seed constants of index_vs_indexless and their merge.

    A component whose seeds disagree, or any seed reported inconsistent,
    is merged to 'inconsistent'. With strict=True the first disagreement
    raises Inconsistent instead.
    """
    merged: List[Union[None, str, object]] = [None] * 5
    per_seed = []
    consistent = True
    for h in seeds:
        report = index_vs_indexless(h, sign, n)
        per_seed.append(report['constants'])
        if not report['consistent']:
            consistent = False
            if strict:
                raise Inconsistent(f'seed {h.tolist()} admits no constants')
        for k, constant in enumerate(report['constants']):
            if constant is None or isinstance(merged[k], str):
                continue
            if isinstance(constant, str):
                merged[k] = constant
            elif merged[k] is None:
                merged[k] = constant
            elif expand(merged[k] - constant) != 0:
                if strict:
                    raise Inconsistent(
                        f'component {k}: constant {constant} differs from {merged[k]}'
                    )
                merged[k] = 'inconsistent'
    consistent = consistent and not any(isinstance(c, str) for c in merged)
    if not consistent:
        logger.info('calibration of %s over %d seeds is inconsistent: %s',
                    sign, len(seeds), merged)
    return {'sign': sign, 'n': n, 'constants': merged, 'per_seed': per_seed,
            'consistent': consistent}


def random_symmetric(rng: random.Random, degree: int = 2,
                     traceless: bool = True) -> numpy.ndarray:
    """random integer-coefficient polynomial entries in x0..x3"""
    monomials = [
        powers for powers in product(range(degree + 1), repeat=4)
        if sum(powers) <= degree
    ]
    entries = {}
    for mu in range(4):
        for nu in range(mu, 4):
            entries[(mu, nu)] = sum(
                rng.randint(-2, 2) * X[0] ** a * X[1] ** b * X[2] ** c * X[3] ** d
                for a, b, c, d in rng.sample(monomials, min(3, len(monomials)))
            )
    h = sym_tensor(entries)
    return traceless_part(h) if traceless else h


def parse_seed(text: str) -> numpy.ndarray:
    """{"h": {"mu,nu": "polynomial"}}"""
    data = json.loads(text)
    if 'h' not in data:
        raise ValueError('tensor seed needs an "h" entry')
    entries = {}
    for key, value in data['h'].items():
        try:
            mu, nu = (int(index) for index in key.split(','))
        except ValueError:
            raise ValueError(f'failed to parse tensor index: {key}')
        if not (0 <= mu < 4 and 0 <= nu < 4):
            raise ValueError(f'tensor index out of range: {key}')
        entries[(mu, nu)] = sympify(value, locals={str(x): x for x in X})
    return sym_tensor(entries)
