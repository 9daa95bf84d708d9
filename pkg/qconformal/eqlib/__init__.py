from qconformal.types import EquationSpec
from qconformal.fieldspace import OpExpr
from qconformal.eqlib.dalembert import build_qdalembert, classical_dalembert
from qconformal.eqlib.maxwell import (
    build_qmaxwell, build_qmaxwell_factorized, build_current_conservation,
)
from qconformal.eqlib.weyl import (
    build_qI_simple, build_weyl, build_weyl_long, BasisUnavailable,
)

__all__ = [
    'build', 'build_qdalembert', 'classical_dalembert', 'build_qmaxwell',
    'build_qmaxwell_factorized', 'build_current_conservation',
    'build_qI_simple', 'build_weyl', 'build_weyl_long', 'BasisUnavailable',
]


def build(spec: EquationSpec) -> OpExpr:
    """the q-deformed operator addressed by an EquationSpec."""
    family = spec.family
    if family == 'dalembert':
        return build_qdalembert(spec.basis)
    if family in ('maxwell_plus', 'maxwell_minus'):
        sign = '+' if family == 'maxwell_plus' else '-'
        return build_qmaxwell(sign, spec.n, spec.basis)
    if family == 'current_conservation':
        return build_current_conservation(spec.basis)
    if family in ('weyl_plus', 'weyl_minus'):
        sign = '+' if family == 'weyl_plus' else '-'
        return build_weyl(sign, spec.n, deformed=True, basis=spec.basis)
    if family in ('metric_to_weyl_plus', 'metric_to_weyl_minus'):
        sign = '+' if family == 'metric_to_weyl_plus' else '-'
        return build_weyl(sign, 2, deformed=True, basis=spec.basis)
    raise KeyError(f'unsupported equation family: {family}')
