import pytest

from qconformal.ncalg import HAT, TILDE
from qconformal.fieldspace import exponent_box, compare_operators, monomial
from qconformal.eqlib import build, build_qdalembert, classical_dalembert
from qconformal.types import EquationSpec
from qconformal.waves import ExpPoly, ZERO_POLY, plane_component

polys = [ZERO_POLY, ExpPoly.parse('1,-2,1,0,2,-1'), ExpPoly.parse('0,0,0,-1,1,1')]


@pytest.mark.parametrize('basis', [HAT, TILDE])
@pytest.mark.parametrize('s', range(4))
@pytest.mark.parametrize('poly', polys, ids=str)
def test_plane_components_solve_on_cone(basis, s, poly):
    op = build_qdalembert(basis)
    residual = op(plane_component(s, basis, poly))
    assert residual.cone_reduce().is_zero


@pytest.mark.parametrize('basis', [HAT, TILDE])
def test_residual_needs_the_cone(basis):
    residual = build_qdalembert(basis)(plane_component(2, basis))
    assert not residual.is_zero
    assert residual.cone_reduce().is_zero


@pytest.mark.parametrize('basis', [HAT, TILDE])
def test_classical_limit(basis):
    assert compare_operators(
        build_qdalembert(basis), classical_dalembert(),
        exponent_box(1, 1, 2), limit=True,
    ) == []


def test_deformation_is_visible():
    state = monomial(0, 0, 1, 1, 1, 1)
    assert build_qdalembert(HAT)(state) != classical_dalembert()(state)


def test_build():
    assert build(EquationSpec.parse('dalembert/tilde')) == build_qdalembert(TILDE)
    with pytest.raises(ValueError):
        build_qdalembert('check')
