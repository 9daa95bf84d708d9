import pytest

from qconformal.ncalg import TILDE
from qconformal.fieldspace import exponent_box, compare_operators
from qconformal.eqlib import (
    build, build_qI_simple, build_weyl, build_weyl_long, BasisUnavailable,
)
from qconformal.types import EquationSpec


@pytest.mark.parametrize('sign', ['+', '-'])
def test_factorized_weyl_operator_matches_expanded_form(sign):
    assert compare_operators(
        build_weyl(sign, 4, deformed=False), build_weyl_long(sign),
        exponent_box(4, 4, 1),
    ) == []


@pytest.mark.parametrize('sign', ['+', '-'])
@pytest.mark.parametrize('n', [0, 2, 4])
def test_classical_limit(sign, n):
    assert compare_operators(
        build_weyl(sign, n, deformed=True), build_weyl(sign, n, deformed=False),
        exponent_box(3, 3, 1), limit=True,
    ) == []


@pytest.mark.parametrize('a', [1, 2, 3])
def test_simple_root_limits(a):
    assert compare_operators(
        build_qI_simple(a, deformed=True), build_qI_simple(a, deformed=False),
        exponent_box(2, 2, 1), limit=True,
    ) == []


def test_basis_unavailable():
    with pytest.raises(BasisUnavailable):
        build_weyl('+', 4, deformed=True, basis=TILDE)
    with pytest.raises(BasisUnavailable):
        build(EquationSpec.parse('weyl_minus/tilde/4'))
    with pytest.raises(ValueError):
        build_qI_simple(4, deformed=False)


def test_build():
    assert build(EquationSpec.parse('weyl_plus/hat/4')) == build_weyl('+', 4, deformed=True)
    assert build(EquationSpec.parse('metric_to_weyl_minus/hat/7')) == build_weyl('-', 2, deformed=True)
    with pytest.raises(KeyError):
        build(EquationSpec('scalar'))
