import random
from itertools import product

import pytest
from sympy import I, Rational, expand

from qconformal.fieldspace import Identity, partial
from qconformal.utils import read_seed_lines
from qconformal.weylcls import (
    X, XP, XM, V, VB, Z, ZB, ETA, HALF,
    NotSymmetric, NotAntisymmetric,
    coord_map, inverse_coord_map, box, light_cone_box,
    zeros, sym_tensor, check_symmetric, trace, traceless_part,
    riemann, linearized_weyl, weyl_equations_index, check_weyl_symmetries,
    weyl_components, dictionaries, apply_classical, to_states, from_state,
    maxwell_fields, maxwell_dictionary, proportionality, maxwell_consistency,
    index_vs_indexless, random_symmetric, parse_seed, calibrate, Inconsistent,
)
from qconformal import weylcls

seeds = [parse_seed(line) for line in read_seed_lines('tests/seeds.jsonl')]

POLYNOMIALS = [
    X[0] * X[1] + X[2] ** 2 - X[3],
    (X[0] - X[3]) ** 3 * X[1],
    X[0] ** 2 * X[2] ** 2 - 3 * X[1] * X[3],
]


def test_coord_map():
    assert coord_map(X[0]) == expand((XP + XM) / 2)
    assert coord_map(X[1] ** 2 + X[2] ** 2) == V * VB
    assert inverse_coord_map(V) == X[1] - I * X[2]
    for expr in POLYNOMIALS:
        assert inverse_coord_map(coord_map(expr)) == expand(expr)


@pytest.mark.parametrize('expr', POLYNOMIALS)
def test_box_in_light_cone_coordinates(expr):
    assert light_cone_box(coord_map(expr)) == coord_map(box(expr))


def test_sym_tensor():
    h = sym_tensor({(0, 1): X[0], (1, 0): X[0]})
    assert h[1, 0] == X[0]
    check_symmetric(h)
    with pytest.raises(NotSymmetric):
        sym_tensor({(0, 1): X[0], (1, 0): X[1]})
    broken = zeros(2)
    broken[0, 1] = X[2]
    with pytest.raises(NotSymmetric):
        check_symmetric(broken)
    with pytest.raises(NotSymmetric):
        riemann(broken)


def test_traceless_part():
    h = sym_tensor({(0, 0): X[0], (1, 2): X[3]})
    assert trace(h) == X[0]
    assert trace(traceless_part(h)) == 0


def test_weyl_components_of_a_seed():
    c = weyl_components(linearized_weyl(seeds[0]))
    assert c[1] == 0
    assert c[2] == HALF


def test_conformally_flat_perturbation():
    c = linearized_weyl(seeds[1])
    assert all(value == 0 for value in c.flat)
    assert all(value == 0 for value in linearized_weyl(ETA * X[3] ** 2).flat)


@pytest.mark.parametrize('seed', range(3))
def test_weyl_symmetries_and_low_degrees(seed):
    h = random_symmetric(random.Random(seed), degree=3)
    check_weyl_symmetries(linearized_weyl(h))
    equations = weyl_equations_index(h)
    assert all(equations[mu, nu] == 0 for mu, nu in product(range(4), repeat=2))


def test_weyl_equations_of_a_quartic_seed():
    equations = weyl_equations_index(seeds[2])
    assert any(equations[mu, nu] != 0 for mu, nu in product(range(4), repeat=2))
    for mu, nu in product(range(4), repeat=2):
        assert expand(equations[mu, nu] - equations[nu, mu]) == 0
    assert trace(equations) == 0


def test_dictionaries():
    h = seeds[0]
    result = dictionaries(linearized_weyl(h), h)
    assert len(result.c) == 10
    assert len(result.plus) == len(result.minus) == 5
    assert result.tprime[(2, 0)] == 2 * X[0] ** 2
    assert result.tprime[(1, 1)] == 0


def test_states_round_trip():
    expr = 3 * Z * V + I * XM / 2 - ZB ** 2 * XP * VB
    real, imaginary = to_states(expr)
    assert from_state(real) == 3 * Z * V - ZB ** 2 * XP * VB
    assert from_state(imaginary) == XM / 2
    assert apply_classical(Identity, expr) == expand(expr)
    assert apply_classical(partial('z'), Z ** 2 * V + I * XP) == 2 * Z * V
    assert apply_classical(partial('z'), 0) == 0


def test_maxwell_fields():
    f, current = maxwell_fields(('0', 'x0**3', '0', '0'))
    assert f[0, 1] == 3 * X[0] ** 2
    assert f[1, 0] == -3 * X[0] ** 2
    assert current == [0, 6 * X[0], 0, 0]
    f_plus, f_minus, j_zero = maxwell_dictionary(f, current)
    assert f_plus == expand(3 * X[0] ** 2 * (1 - Z ** 2))
    assert f_minus == expand(3 * X[0] ** 2 * (1 - ZB ** 2))
    assert j_zero == expand(6 * X[0] * (Z + ZB))
    with pytest.raises(NotAntisymmetric):
        maxwell_dictionary(sym_tensor({(0, 1): X[0]}), current)


def test_proportionality():
    assert proportionality(2 * Z * V, Z * V) == 2
    assert proportionality(Z, ZB) == 'inconsistent'
    assert proportionality(Z, 0) == 'inconsistent'
    assert proportionality(0, 0) is None
    assert proportionality(0, Z) == 0


@pytest.mark.parametrize('potential, expected', [
    (('0', 'x0**3', '0', '0'), {'+': HALF, '-': HALF}),
    (('x0**3', '0', '0', '0'), {'+': None, '-': None}),
])
def test_maxwell_consistency(potential, expected):
    assert maxwell_consistency(potential) == expected


@pytest.mark.parametrize('sign', ['+', '-'])
def test_index_vs_indexless_of_zero_metric(sign):
    report = index_vs_indexless(zeros(2), sign)
    assert report == {'sign': sign, 'n': 2, 'constants': [None] * 5, 'consistent': True}


def test_parse_seed_errors():
    with pytest.raises(ValueError):
        parse_seed('{"g": {}}')
    with pytest.raises(ValueError):
        parse_seed('{"h": {"4,0": "1"}}')
    with pytest.raises(ValueError):
        parse_seed('{"h": {"a": "1"}}')
    assert parse_seed('{"h": {"0,3": "x3"}}')[3, 0] == X[3]


def test_random_symmetric_is_traceless():
    h = random_symmetric(random.Random(3))
    check_symmetric(h)
    assert trace(h) == 0


def test_calibrate_keeps_constants_of_every_seed(monkeypatch):
    reports = iter([
        {'constants': [HALF, HALF, None, Rational(1, 8), HALF], 'consistent': True},
        {'constants': [HALF, HALF, None, HALF, HALF], 'consistent': True},
        {'constants': [HALF, 'inconsistent', None, HALF, HALF], 'consistent': False},
    ])
    monkeypatch.setattr(weylcls, 'index_vs_indexless', lambda h, sign, n: next(reports))
    report = calibrate([seeds[0]] * 3, '+')
    assert not report['consistent']
    assert len(report['per_seed']) == 3
    assert report['per_seed'][0][3] == Rational(1, 8)
    assert report['constants'] == [HALF, 'inconsistent', None, 'inconsistent', HALF]


def test_calibrate_strict(monkeypatch):
    monkeypatch.setattr(weylcls, 'index_vs_indexless', lambda h, sign, n: {
        'constants': [HALF, HALF, HALF, Rational(1, 8) if sign == '+' else HALF, HALF],
        'consistent': True,
    })
    report = calibrate([seeds[0]], '+', strict=True)
    assert report['consistent']
    assert report['constants'][3] == Rational(1, 8)
    answers = iter([Rational(1, 8), HALF])
    monkeypatch.setattr(weylcls, 'index_vs_indexless', lambda h, sign, n: {
        'constants': [HALF, HALF, HALF, next(answers), HALF], 'consistent': True,
    })
    with pytest.raises(Inconsistent):
        calibrate([seeds[0], seeds[0]], '+', strict=True)


def test_calibrate_conformally_flat_seed():
    report = calibrate([seeds[1], seeds[1]], '-')
    assert len(report['per_seed']) == 2
    assert report['per_seed'][0] == report['per_seed'][1]
