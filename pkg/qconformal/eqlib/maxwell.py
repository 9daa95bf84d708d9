from fractions import Fraction

from qconformal.coeff import LAMBDA, q_power, qint
from qconformal.ncalg import HAT, TILDE
from qconformal.fieldspace import (
    OpExpr, M, T, Ti, D, bracket, scalar, chain, total,
)
from qconformal.eqlib.weyl import build_qI_simple

HALF = Fraction(1, 2)
PLUS_SIGN = '+'
MINUS_SIGN = '-'


def _hat_plus(n: int) -> OpExpr:
    first = chain(
        total(
            chain(scalar(q_power(1)), D('v')),
            chain(M('zbar'), D('plus'), Ti('minus'), Ti('v'), T('vbar')),
        ),
        T('minus'),
        bracket(n + 2, z=-1),
    )
    inner = total(
        chain(D('minus'), T('minus')),
        chain(scalar(q_power(-1)), M('zbar'), D('vbar')),
    ) - chain(scalar(LAMBDA), M('v'), M('zbar'), D('minus'), D('plus'), T('vbar'))
    second = chain(scalar(q_power(-n - 2)), inner, Ti('minus'), D('z'))
    return chain(
        scalar(HALF),
        first - second,
        T('plus'), T('v'), T('z'), Ti('zbar'),
    )


def _hat_minus(n: int) -> OpExpr:
    group = total(
        D('vbar'),
        chain(scalar(q_power(1)), M('z'), D('plus'), T('vbar'), T('minus'), Ti('v')),
    ) - chain(scalar(q_power(1) * LAMBDA), M('v'), D('minus'), D('plus'), T('vbar'))
    first = chain(scalar(HALF), group, T('vbar'), bracket(n + 2, zbar=-1))
    second = chain(
        scalar(q_power(n + 3) * HALF),
        total(D('minus'), chain(scalar(q_power(1)), M('z'), D('v'), T('minus'))),
        D('zbar'), T('minus'), T('vbar'),
    )
    return first - second


def _tilde_plus(n: int) -> OpExpr:
    first = chain(
        scalar(q_power(1) * HALF),
        total(
            D('v'),
            chain(M('zbar'), D('plus'), T('minus'), Ti('vbar'), T('v')),
        ),
        T('v'),
        bracket(n + 2, z=-1),
    )
    inner = total(
        D('minus'),
        chain(M('zbar'), D('vbar'), T('minus')),
        chain(scalar(LAMBDA * q_power(-1)), M('v'), M('zbar'),
              D('minus'), D('plus'), Ti('vbar'), T('minus')),
    )
    second = chain(
        scalar(q_power(n + 3) * HALF), inner, D('z'), T('minus'), T('v'),
    )
    return first - second


def _tilde_minus(n: int) -> OpExpr:
    group = total(
        chain(D('vbar'), T('vbar'), T('minus')),
        chain(M('z'), D('plus'), T('v')),
        chain(scalar(q_power(-1) * LAMBDA), M('v'), D('minus'), D('plus'), T('minus')),
    )
    first = chain(group, bracket(n + 2, zbar=-1))
    second = chain(
        scalar(q_power(-n - 2)),
        total(D('minus'), chain(M('z'), D('v'), Ti('minus'))),
        D('zbar'), T('vbar'),
    )
    return chain(
        scalar(HALF),
        first - second,
        T('plus'), T('zbar'), Ti('z'),
    )


_BUILDERS = {
    (PLUS_SIGN, HAT): _hat_plus,
    (MINUS_SIGN, HAT): _hat_minus,
    (PLUS_SIGN, TILDE): _tilde_plus,
    (MINUS_SIGN, TILDE): _tilde_minus,
}


def build_qmaxwell(sign: str, n: int, basis: str) -> OpExpr:
    """the q-Maxwell intertwiner of the given helicity sign, transcribed
    term by term with its scalar prefactors."""
    try:
        builder = _BUILDERS[(sign, basis)]
    except KeyError:
        raise ValueError(f'unknown q-Maxwell operator: sign={sign}, basis={basis}')
    return builder(n)


def build_qmaxwell_factorized(sign: str, n: int) -> OpExpr:
    """1/2([n+2]_q A B - [n+3]_q B A) with A = qI1 (plus) or qI3 (minus)
    and B = qI2; hat basis only, for comparison with build_qmaxwell."""
    outer = build_qI_simple(1 if sign == PLUS_SIGN else 3, deformed=True)
    middle = build_qI_simple(2, deformed=True)
    return chain(
        scalar(HALF),
        chain(scalar(qint(n + 2)), outer, middle)
        - chain(scalar(qint(n + 3)), middle, outer),
    )


def build_current_conservation(basis: str, variant: str = 'corrected') -> OpExpr:
    """I13, the q-deformed divergence acting on the indexless current.

    In the tilde basis the lambda term enters with a plus sign; variant=
    'printed' keeps the minus sign it was first written with, which breaks
    conservation from s = 3 on."""
    if variant not in ('corrected', 'printed'):
        raise ValueError(f'unknown conservation variant: {variant}')
    if basis == HAT:
        return total(
            chain(scalar(q_power(3)), bracket(-1, z=1), T('z'), D('zbar'),
                  D('v'), T('v'), T('minus'), T('plus')),
            chain(scalar(q_power(1)), D('z'), T('z'), D('zbar'),
                  D('minus'), T('v'), T('plus')),
            chain(scalar(q_power(1)), bracket(-1, z=1), T('z'),
                  bracket(-1, zbar=1), D('plus'), T('plus'), T('vbar')),
            chain(scalar(q_power(-1)), bracket(-1, zbar=1), D('z'), T('z'),
                  D('vbar'), T('v'), Ti('minus'), T('plus')),
        ) - chain(
            scalar(LAMBDA), M('v'), bracket(-1, zbar=1), D('z'), T('z'),
            D('minus'), D('plus'), T('v'), Ti('minus'), T('plus'), T('vbar'),
        )
    if basis == TILDE:
        divergence = total(
            chain(bracket(-1, z=1), D('zbar'), T('zbar'), D('v'),
                  T('vbar'), T('plus'), Ti('minus')),
            chain(scalar(q_power(1)), D('zbar'), T('zbar'), D('z'),
                  D('minus'), T('vbar'), T('plus')),
            chain(scalar(q_power(1)), bracket(-1, zbar=1), T('zbar'),
                  bracket(-1, z=1), D('plus'), T('plus'), T('v')),
            chain(scalar(q_power(2)), bracket(-1, zbar=1), D('z'), T('zbar'),
                  D('vbar'), T('vbar'), T('minus'), T('plus')),
        )
        lam = chain(
            scalar(LAMBDA * q_power(1)), M('v'), bracket(-1, zbar=1), D('z'),
            T('zbar'), D('minus'), D('plus'), T('minus'), T('plus'),
        )
        if variant == 'printed':
            return divergence - lam
        return divergence + lam
    raise ValueError(f'unknown basis: {basis}')
