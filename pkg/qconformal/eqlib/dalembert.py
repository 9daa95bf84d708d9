from qconformal.coeff import Q
from qconformal.ncalg import HAT, TILDE
from qconformal.fieldspace import OpExpr, D, T, partial, chain, scalar


def build_qdalembert(basis: str) -> OpExpr:
    """the q-d'Alembert operator in the hat or tilde basis.

    Both tend to d- d+ - dv dvbar as q -> 1.
    """
    if basis == HAT:
        return chain(
            chain(scalar(Q), D('minus'), D('plus'), T('v'), T('vbar'))
            - chain(D('v'), D('vbar')),
            T('v'), T('minus'), T('plus'), T('vbar'),
        )
    if basis == TILDE:
        return chain(
            chain(D('minus'), D('plus'))
            - chain(scalar(Q), D('v'), D('vbar'), T('v'), T('vbar')),
            T('minus'), T('plus'),
        )
    raise ValueError(f'unknown basis: {basis}')


def classical_dalembert() -> OpExpr:
    return chain(partial('minus'), partial('plus')) - chain(partial('v'), partial('vbar'))
