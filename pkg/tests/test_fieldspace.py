import pytest

from qconformal.coeff import ONE, Q, qint, q_power
from qconformal.ncalg import NCPoly, HAT, TILDE, V, MINUS, PLUS, VBAR
from qconformal.fieldspace import (
    FieldState, NegativeExponent, Identity,
    monomial, z_polynomial, apply, limit_q1_state, exponent_box,
    compare_operators, omega_state,
    M, Minv, T, Ti, D, partial, bracket, scalar, chain, total,
)


def scaled(value, basis=HAT):
    return NCPoly.scalar(value, basis)


def test_from_dict_sorts_and_drops_zero_terms():
    state = monomial(0, 0, 1, 0, 0, 0)
    assert state.terms == (((0, 0, 1, 0, 0, 0), NCPoly.unit(HAT)),)
    state = FieldState.from_dict({
        (1, 0, 0, 0, 0, 0): NCPoly.unit(HAT),
        (0, 2, 0, 0, 0, 0): NCPoly.zero(HAT),
        (0, 0, 0, 0, 0, 1): scaled(Q),
    }, HAT)
    assert [key for key, _ in state] == [(0, 0, 0, 0, 0, 1), (1, 0, 0, 0, 0, 0)]
    assert FieldState.from_dict({(0, 0, 0, 0, 0, 0): NCPoly.zero(TILDE)}, TILDE).is_zero


def test_monomial_rejects_negative_exponents():
    with pytest.raises(NegativeExponent):
        monomial(0, 0, -1, 0, 0, 0)
    with pytest.raises(NegativeExponent):
        Minv('v')(monomial(0, 0, 0, 0, 0, 0))


@pytest.mark.parametrize('op, expected', [
    (D('z'), monomial(2, 0, 0, 1, 0, 0, coeff=scaled(qint(3)))),
    (partial('z'), monomial(2, 0, 0, 1, 0, 0, coeff=scaled(3))),
    (T('z'), monomial(3, 0, 0, 1, 0, 0, coeff=scaled(q_power(3)))),
    (Ti('minus'), monomial(3, 0, 0, 1, 0, 0, coeff=scaled(q_power(-1)))),
    (M('zbar'), monomial(3, 1, 0, 1, 0, 0)),
    (Minv('minus'), monomial(3, 0, 0, 0, 0, 0)),
    (bracket(1, z=-1), monomial(3, 0, 0, 1, 0, 0, coeff=scaled(qint(-2)))),
    (scalar(Q), monomial(3, 0, 0, 1, 0, 0, coeff=scaled(Q))),
    (Identity, monomial(3, 0, 0, 1, 0, 0)),
])
def test_generators(op, expected):
    assert apply(op, monomial(3, 0, 0, 1, 0, 0)) == expected


def test_vanishing_actions():
    state = monomial(0, 2, 0, 0, 0, 0)
    assert D('z')(state).is_zero
    assert partial('v')(state).is_zero
    assert bracket(0, z=1)(state).is_zero
    assert bracket(-2, zbar=1)(state).is_zero


def test_products_act_right_to_left():
    state = monomial(1, 0, 0, 0, 0, 0)
    assert chain(D('z'), M('z'))(state) == monomial(1, 0, 0, 0, 0, 0, coeff=scaled(qint(2)))
    assert chain(M('z'), D('z'))(state) == state
    assert (D('z') * 2)(state) == (2 * D('z'))(state)
    assert (D('z') - D('z'))(state).is_zero
    assert (-D('z'))(state) == monomial(0, 0, 0, 0, 0, 0, coeff=scaled(-1))


def test_q_derivative_identity():
    # D_z = [N_z]_q / z, so z D_z is the bracket [N_z]_q
    assert compare_operators(
        chain(M('z'), D('z')), bracket(0, z=1), exponent_box(3, 1, 1)) == []
    assert compare_operators(
        total(D('z'), D('z')), chain(scalar(2), D('z')), exponent_box(2, 1, 1)) == []


def test_compare_operators_reports_mismatches():
    mismatches = compare_operators(D('z'), partial('z'), exponent_box(2, 0, 0))
    assert mismatches == [(2, 0, 0, 0, 0, 0)]
    assert compare_operators(
        D('z'), partial('z'), exponent_box(2, 0, 0), limit=True) == []


def test_exponent_box():
    keys = list(exponent_box(1, 1, 1))
    assert len(keys) == 64
    assert len(set(keys)) == 64
    assert len(list(exponent_box(2))) == 9 * 256


def test_state_algebra():
    a = monomial(1, 0, 0, 0, 0, 0, coeff=NCPoly.generator(V, HAT))
    b = z_polynomial({(0, 1): NCPoly.generator(PLUS, HAT)}, HAT)
    product = a * b
    assert product.as_dict() == {
        (1, 1, 0, 0, 0, 0): NCPoly.generator(V, HAT) * NCPoly.generator(PLUS, HAT),
    }
    assert (b * a).as_dict()[(1, 1, 0, 0, 0, 0)] == NCPoly.from_dict(
        {(1, 0, 1, 0): Q}, HAT)
    assert (a - a).is_zero
    assert (a + a) == a.scale(2) == 2 * a
    with pytest.raises(ValueError):
        a + monomial(1, 0, 0, 0, 0, 0, basis=TILDE)
    assert str(FieldState.zero(HAT)) == '0'


def test_limit_q1_state():
    state = D('z')(monomial(3, 0, 1, 0, 0, 0, coeff=NCPoly.generator(MINUS, HAT)))
    assert limit_q1_state(state) == {((2, 0, 1, 0, 0, 0), (0, 1, 0, 0)): 3}


def test_cone_reduce_state():
    cone = NCPoly.from_dict({(0, 1, 1, 0): ONE, (1, 0, 0, 1): -q_power(-1)}, HAT)
    state = monomial(0, 0, 1, 0, 0, 0, coeff=cone)
    assert not state.is_zero
    assert state.cone_reduce().is_zero


def test_omega_state():
    state = monomial(2, 1, 1, 1, 0, 0)
    image = omega_state(state)
    assert image.basis == TILDE
    assert image == monomial(2, 1, 0, 1, 0, 1, coeff=scaled(q_power(-1), TILDE), basis=TILDE)
    assert omega_state(image) == state


def test_omega_state_conjugates_momenta():
    state = monomial(0, 0, 0, 0, 0, 0, coeff=NCPoly.generator(VBAR, HAT).scale(Q))
    assert omega_state(state) == monomial(
        0, 0, 0, 0, 0, 0,
        coeff=NCPoly.generator(V, TILDE).scale(q_power(-1)), basis=TILDE)
