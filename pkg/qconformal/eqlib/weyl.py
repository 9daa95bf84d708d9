from fractions import Fraction

from qconformal.coeff import LAMBDA, q_power, qint
from qconformal.ncalg import HAT
from qconformal.fieldspace import (
    OpExpr, M, T, Ti, D, partial, scalar, chain, total,
)

HALF = Fraction(1, 2)


class BasisUnavailable(ValueError):
    pass


def _classical_simple(a: int) -> OpExpr:
    if a == 1:
        return partial('z')
    if a == 2:
        return total(
            chain(M('zbar'), M('z'), partial('plus')),
            chain(M('z'), partial('v')),
            chain(M('zbar'), partial('vbar')),
            partial('minus'),
        )
    return partial('zbar')


def _deformed_simple(a: int) -> OpExpr:
    if a == 1:
        return chain(D('z'), T('z'), T('v'), T('plus'), Ti('minus'), Ti('vbar'))
    if a == 2:
        return chain(
            total(
                chain(scalar(q_power(1)), M('z'), D('v'), T('minus'), T('minus')),
                chain(M('z'), M('zbar'), D('plus'), T('minus'), T('vbar'), Ti('v')),
                chain(D('minus'), T('minus')),
                chain(scalar(q_power(-1)), M('zbar'), D('vbar')),
            ) - chain(scalar(LAMBDA), M('v'), M('zbar'), D('minus'), D('plus'), T('vbar')),
            T('vbar'), Ti('zbar'),
        )
    return chain(D('zbar'), T('zbar'))


def build_qI_simple(a: int, deformed: bool) -> OpExpr:
    """the simple-root operators I1 = dz, I2, I3 = dzbar, or their
    q-deformed hat-basis versions."""
    if a not in (1, 2, 3):
        raise ValueError(f'simple root index must be 1, 2 or 3, got {a}')
    return _deformed_simple(a) if deformed else _classical_simple(a)


def build_weyl(sign: str, n: int, deformed: bool, basis: str = HAT) -> OpExpr:
    """the parameter-dependent operators I~(n); n = 4 gives the Weyl
    equations, n = 2 the Weyl tensor in terms of the metric."""
    if deformed and basis != HAT:
        raise BasisUnavailable(
            f'q-deformed Weyl operators exist only in the hat basis, not {basis}'
        )
    outer = build_qI_simple(1 if sign == '+' else 3, deformed)
    middle = build_qI_simple(2, deformed)
    if deformed:
        first = qint(n) * qint(n - 1)
        mixed = qint(2) * qint(n - 1) * qint(n + 1)
        last = qint(n) * qint(n + 1)
    else:
        first = n * (n - 1)
        mixed = 2 * (n * n - 1)
        last = n * (n + 1)
    return chain(
        scalar(HALF),
        chain(scalar(first), outer, outer, middle, middle)
        - chain(scalar(mixed), outer, middle, middle, outer)
        + chain(scalar(last), middle, middle, outer, outer),
    )


def build_weyl_long(sign: str) -> OpExpr:
    """the expanded classical Weyl operators, written out in z, zbar and
    light-cone derivatives."""
    z, zb = M('z'), M('zbar')
    dp, dm = partial('plus'), partial('minus')
    dv, dvb = partial('v'), partial('vbar')
    dz, dzb = partial('z'), partial('zbar')

    shared = total(
        chain(z, z, zb, zb, dp, dp),
        chain(z, z, dv, dv),
        chain(zb, zb, dvb, dvb),
        chain(dm, dm),
        chain(scalar(2), z, z, zb, dv, dp),
        chain(scalar(2), z, zb, zb, dp, dvb),
        chain(scalar(2), z, zb, total(chain(dm, dp), chain(dv, dvb))),
        chain(scalar(2), zb, dm, dvb),
        chain(scalar(2), z, dv, dm),
    )
    if sign == '+':
        middle = total(
            chain(z, zb, zb, dp, dp),
            chain(z, dv, dv),
            chain(scalar(2), z, zb, dv, dp),
            chain(zb, zb, dp, dvb),
            chain(zb, total(chain(dm, dp), chain(dv, dvb))),
            chain(dv, dm),
        )
        last = total(
            chain(zb, zb, dp, dp),
            chain(dv, dv),
            chain(scalar(2), zb, dv, dp),
        )
        derivative = dz
    else:
        middle = total(
            chain(z, z, zb, dp, dp),
            chain(zb, dvb, dvb),
            chain(scalar(2), z, zb, dp, dvb),
            chain(z, z, dv, dp),
            chain(z, total(chain(dm, dp), chain(dv, dvb))),
            chain(dm, dvb),
        )
        last = total(
            chain(z, z, dp, dp),
            chain(dvb, dvb),
            chain(scalar(2), z, dp, dvb),
        )
        derivative = dzb
    return total(
        chain(shared, derivative, derivative),
        chain(scalar(-6), middle, derivative),
        chain(scalar(12), last),
    )
