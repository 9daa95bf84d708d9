from typing import Any, Callable, Dict, List, Optional, Tuple
from itertools import product
from multiprocessing import Pool
from math import comb
import math
import time
import logging

from sympy import expand

from qconformal.coeff import Q
from qconformal.ncalg import (
    NCPoly, Word, Letter, HAT, TILDE, V, MINUS, PLUS, VBAR,
    K_V, K_MINUS, K_PLUS, K_VBAR,
    InternalNontermination, normal_order, ncmul, omega_conjugate, cone_element,
)
from qconformal.fieldspace import (
    FieldState, OpExpr, ScalarMul, Sum, Product,
    exponent_box, compare_operators, omega_state,
)
from qconformal.eqlib import (
    build_qdalembert, classical_dalembert, build_qmaxwell,
    build_current_conservation, build_weyl, build_weyl_long,
)
from qconformal.waves import (
    ExpPoly, ReflectedPoly, ZERO_POLY, SolutionConstants, CONSTANT_ROLES,
    plane_component, maxwell_homogeneous, maxwell_inhomogeneous,
    homogeneous_indices, current_state, current_identity_suite,
    s_independence, current_scale_consistency, omega_plane_comparison,
    state_ratio, classical_plane_oracle,
)
from qconformal.weylcls import (
    X, HALF, SymmetryViolation, calibrate, check_weyl_symmetries,
    classical_maxwell, linearized_weyl, maxwell_consistency, random_symmetric,
    sym_tensor, trace, weyl_equations_index,
)
from qconformal.types import SIGNS, SuiteConfig, VerifyReport
from qconformal.utils import derived_rng
from qconformal import __version__

logger = logging.getLogger(__name__)

Case = Tuple[str, str, Dict[str, Any]]
Outcome = Tuple[str, List[str]]

LETTERS = {'v': V, 'minus': MINUS, 'plus': PLUS, 'vbar': VBAR}

# exponent boxes per check, kept at desk scale
REL_BOX = (4, 4, 2)
LIMIT_BOX = (4, 4, 1)
CLASSICAL_BOX = (3, 3, 2)

CALIBRATION_SEEDS = 10
SYMMETRY_SEEDS = 3
MUTATIONS = 10

POTENTIALS = (
    ('0', 'x0**3', '0', '0'),
    ('x1**3', '0', '0', '0'),
    ('0', 'x3**3', '0', '0'),
    ('0', '(x0 - x3)**3', '0', '0'),
    ('0', '(x0 + x3)**3', '0', '0'),
    ('0', '0', '(x0 - x1)**3', '0'),
)


def _chunks(list_, num_chunks):
    splits = math.ceil(len(list_) / max(num_chunks, 1))
    for i in range(0, len(list_), max(splits, 1)):
        yield list_[i:i + splits]


def _on_cone(state: FieldState, cfg: SuiteConfig) -> FieldState:
    return state.cone_reduce() if cfg.on_cone else state


def _check_state(state: FieldState) -> Outcome:
    return ('pass', []) if state.is_zero else ('fail', state.render())


def _check_keys(mismatches) -> Outcome:
    if not mismatches:
        return 'pass', []
    return 'fail', [f'mismatch at {key}' for key in mismatches]


def _polys(cfg: SuiteConfig, label: str) -> List[ExpPoly]:
    if cfg.poly_spec:
        return [ExpPoly.parse(cfg.poly_spec)]
    rng = derived_rng(cfg.seed, label)
    return [ZERO_POLY] + [ExpPoly.random(rng) for _ in range(3)]


def _gammas(params: Dict[str, Any]) -> Dict[Letter, int]:
    return {LETTERS[params['gamma']]: 1}


# dalembert

def _dalembert_cases(cfg: SuiteConfig) -> List[Case]:
    cases = []
    for basis in cfg.bases:
        for poly in _polys(cfg, f'dalembert:{basis}'):
            for s in range(cfg.s_max + 1):
                params = {'basis': basis, 's': s, 'poly': str(poly)}
                cases.append(('dalembert', f'{basis}/s={s}/P={poly}', params))
    return cases


def _plane_wave_check(params, cfg, op: Optional[OpExpr] = None) -> Outcome:
    basis = params['basis']
    op = op or build_qdalembert(basis)
    state = plane_component(params['s'], basis, ExpPoly.parse(params['poly']))
    return _check_state(_on_cone(op(state), cfg))


# maxwell

def _maxwell_cases(cfg: SuiteConfig) -> List[Case]:
    cases = []
    for basis, sign in product(cfg.bases, SIGNS):
        for m, s in product(range(cfg.m_max + 1), range(cfg.s_max + 1)):
            for a, i, j in homogeneous_indices(m):
                params = {'kind': 'homogeneous', 'basis': basis, 'sign': sign,
                          'm': m, 's': s, 'constant': [a, i, j]}
                cases.append(('maxwell', f'homogeneous/{basis}/{sign}/m={m}/s={s}/{a},{i},{j}', params))
        for m, s in product(range(cfg.m_max + 1), range(1, cfg.s_max + 1)):
            for gamma in LETTERS:
                params = {'kind': 'inhomogeneous', 'basis': basis, 'sign': sign,
                          'm': m, 's': s, 'gamma': gamma}
                cases.append(('maxwell', f'inhomogeneous/{basis}/{sign}/m={m}/s={s}/{gamma}', params))
    for basis in cfg.bases:
        for m, gamma in product(range(cfg.m_max + 1), LETTERS):
            params = {'kind': 'uniform', 'basis': basis, 'm': m, 'gamma': gamma}
            cases.append(('maxwell', f'uniform/{basis}/m={m}/{gamma}', params))
    return cases


def _homogeneous_check(params, cfg, op: Optional[OpExpr] = None) -> Outcome:
    sign, basis, m, s = params['sign'], params['basis'], params['m'], params['s']
    a, i, j = params['constant']
    constants = SolutionConstants.one_hot(CONSTANT_ROLES[(sign, basis)], m, s, a, i, j)
    op = op or build_qmaxwell(sign, cfg.n, basis)
    return _check_state(_on_cone(op(maxwell_homogeneous(sign, basis, m, s, constants)), cfg))


def _inhomogeneous_check(params, cfg, op: Optional[OpExpr] = None) -> Outcome:
    sign, basis, m, s = params['sign'], params['basis'], params['m'], params['s']
    field, current = maxwell_inhomogeneous(sign, basis, m, s, _gammas(params))
    op = op or build_qmaxwell(sign, cfg.n, basis)
    return _check_state(_on_cone(op(field) - current, cfg))


def _uniform_check(params, cfg) -> Outcome:
    basis = params['basis']
    sign = '-' if basis == HAT else '+'
    differences = s_independence(sign, basis, params['m'], (0, 1, 2), _gammas(params))
    lines = [line for difference in differences for line in difference.render()]
    return ('pass', []) if not lines else ('fail', lines)


# current

def _current_cases(cfg: SuiteConfig) -> List[Case]:
    cases = []
    for basis in cfg.bases:
        for m, s, gamma in product(range(cfg.m_max + 1), range(1, cfg.s_max + 1), LETTERS):
            base = {'basis': basis, 'm': m, 's': s, 'gamma': gamma}
            cases.append(('current', f'conservation/{basis}/m={m}/s={s}/{gamma}',
                          {'kind': 'conservation', **base}))
            cases.append(('current', f'identities/{basis}/m={m}/s={s}/{gamma}',
                          {'kind': 'identities', **base}))
            cases.append(('current', f'scale/{basis}/m={m}/s={s}/{gamma}',
                          {'kind': 'scale', **base}))
    return cases


def _conservation_check(params, cfg, op: Optional[OpExpr] = None) -> Outcome:
    basis = params['basis']
    state = current_state(basis, params['m'], params['s'], _gammas(params))
    op = op or build_current_conservation(basis)
    return _check_state(_on_cone(op(state), cfg))


def _identities_check(params, cfg) -> Outcome:
    suite = current_identity_suite(
        params['basis'], params['m'], params['s'], _gammas(params), cfg.on_cone)
    lines = [
        f'{name}: {line}'
        for name, residual in suite
        for line in residual.render()
    ]
    return ('pass', []) if not lines else ('fail', lines)


def _scale_check(params, cfg) -> Outcome:
    if current_scale_consistency(params['basis'], params['m'], params['s'], _gammas(params)):
        return 'inconclusive', ['one scale relates the currents at s and s+1']
    return 'pass', []


# weyl

def _weyl_cases(cfg: SuiteConfig) -> List[Case]:
    cases = []
    for sign in SIGNS:
        cases.append(('weyl', f'rel/{sign}', {'kind': 'rel', 'sign': sign}))
        for n in (0, 2, 4):
            cases.append(('weyl', f'limit/{sign}/n={n}', {'kind': 'limit', 'sign': sign, 'n': n}))
        cases.append(('weyl', f'calibration/{sign}', {'kind': 'calibration', 'sign': sign}))
    for index in range(SYMMETRY_SEEDS):
        cases.append(('weyl', f'symmetries/{index}', {'kind': 'symmetries', 'index': index}))
    cases.append(('weyl', 'equations/quartic', {'kind': 'quartic'}))
    for index in range(len(POTENTIALS)):
        cases.append(('weyl', f'maxwell-dictionary/{index}', {'kind': 'dictionary', 'index': index}))
    return cases


def _rel_check(params, cfg) -> Outcome:
    sign = params['sign']
    return _check_keys(compare_operators(
        build_weyl(sign, 4, deformed=False), build_weyl_long(sign),
        exponent_box(*REL_BOX),
    ))


def _limit_check(params, cfg) -> Outcome:
    sign, n = params['sign'], params['n']
    return _check_keys(compare_operators(
        build_weyl(sign, n, deformed=True), build_weyl(sign, n, deformed=False),
        exponent_box(*LIMIT_BOX), limit=True,
    ))


def _symmetries_check(params, cfg) -> Outcome:
    h = random_symmetric(derived_rng(cfg.seed, f'symmetries:{params["index"]}'), degree=3)
    try:
        check_weyl_symmetries(linearized_weyl(h))
    except SymmetryViolation as e:
        return 'fail', [str(e)]
    equations = weyl_equations_index(h)
    lines = [
        f'({mu},{nu}) | {equations[mu, nu]}'
        for mu, nu in product(range(4), repeat=2)
        if equations[mu, nu] != 0
    ]
    return ('pass', []) if not lines else ('fail', lines)


def _quartic_check(params, cfg) -> Outcome:
    equations = weyl_equations_index(sym_tensor({(1, 2): X[0] ** 4}))
    lines = []
    for mu, nu in product(range(4), repeat=2):
        if (equations[mu, nu] - equations[nu, mu]).expand() != 0:
            lines.append(f'not symmetric at ({mu},{nu})')
    if trace(equations) != 0:
        lines.append(f'trace | {trace(equations)}')
    if all(equations[mu, nu] == 0 for mu, nu in product(range(4), repeat=2)):
        lines.append('equations vanish identically')
    return ('pass', []) if not lines else ('fail', lines)


def _calibration_check(params, cfg) -> Outcome:
    seeds = [
        random_symmetric(derived_rng(cfg.seed, f'calibration:{index}'), degree=2)
        for index in range(CALIBRATION_SEEDS)
    ]
    report = calibrate(seeds, params['sign'])
    params['constants'] = [_constant_text(c) for c in report['constants']]
    params['per_seed'] = [[_constant_text(c) for c in row] for row in report['per_seed']]
    found = {expand(c) for c in report['constants'] if c is not None and not isinstance(c, str)}
    if report['consistent'] and len(found) <= 1:
        return 'pass', []
    lines = [
        f'component {k} | {_constant_text(c)}'
        for k, c in enumerate(report['constants'])
    ]
    for k in range(5):
        values = sorted({str(row[k]) for row in params['per_seed']})
        if len(values) > 1:
            lines.append(f'component {k} per seed | {", ".join(values)}')
    return 'inconclusive', lines


def _constant_text(constant) -> Optional[str]:
    return None if constant is None else str(constant)


def _dictionary_check(params, cfg) -> Outcome:
    potential = POTENTIALS[params['index']]
    constants = maxwell_consistency(potential)
    params['constants'] = {sign: None if c is None else str(c) for sign, c in constants.items()}
    if all(c is None or c == HALF for c in constants.values()):
        return 'pass', []
    return 'inconclusive', [f'{sign} | {c}' for sign, c in constants.items()]


# omega

def _omega_cases(cfg: SuiteConfig) -> List[Case]:
    return [
        ('omega', f's={s}/P={poly}', {'s': s, 'poly': str(poly)})
        for poly in _polys(cfg, 'omega')
        for s in range(cfg.s_max + 1)
    ]


def _omega_check(params, cfg) -> Outcome:
    s, poly = params['s'], ExpPoly.parse(params['poly'])
    difference = omega_plane_comparison(s, poly)
    if difference.is_zero:
        return 'pass', []
    ratio = state_ratio(
        omega_state(plane_component(s, HAT, poly)),
        plane_component(s, TILDE, ReflectedPoly(poly, s)),
    )
    lines = ['omega of the hat component is not the reflected tilde component']
    if ratio is not None:
        return 'inconclusive', lines + [f'proportional | {ratio}']
    return 'inconclusive', lines + difference.render()


# algebra

_MOMENTA = (K_V, K_MINUS, K_PLUS, K_VBAR)


def _algebra_cases(cfg: SuiteConfig) -> List[Case]:
    cases = [('algebra', f'pbw/d={d}', {'kind': 'pbw', 'degree': d}) for d in range(7)]
    for order in (HAT, TILDE):
        cases.append(('algebra', f'confluence/{order}', {'kind': 'confluence', 'order': order}))
        cases.append(('algebra', f'centrality/{order}', {'kind': 'centrality', 'order': order}))
        cases.append(('algebra', f'omega/{order}', {'kind': 'omega', 'order': order}))
    return cases


def _random_word(rng, length: int) -> Word:
    return Word(tuple(rng.choice(_MOMENTA) for _ in range(length)))


def _pbw_check(params, cfg) -> Outcome:
    degree = params['degree']
    rng = derived_rng(cfg.seed, f'pbw:{degree}')
    lines = []
    for order in (HAT, TILDE):
        keys = {
            key
            for letters in product(_MOMENTA, repeat=degree)
            for key, _ in normal_order(Word(letters), order)
        }
        if len(keys) != comb(degree + 3, 3):
            lines.append(f'{order}: {len(keys)} basis words of degree {degree}')
        for _ in range(20):
            poly = normal_order(_random_word(rng, degree), order)
            if poly.degrees() - {degree}:
                lines.append(f'{order}: degrees {sorted(poly.degrees())}')
    return ('pass', []) if not lines else ('fail', lines)


def _confluence_check(params, cfg) -> Outcome:
    order = params['order']
    rng = derived_rng(cfg.seed, f'confluence:{order}')
    lines = []
    for _ in range(500):
        word = _random_word(rng, rng.randint(0, 8))
        if normal_order(word, order) != normal_order(word, order, rng=rng):
            lines.append(f'{word} | rewriting is not confluent')
    return ('pass', []) if not lines else ('fail', lines)


def _centrality_check(params, cfg) -> Outcome:
    order = params['order']
    cone = cone_element(order)
    lines = []
    for letter in Letter:
        k = NCPoly.generator(letter, order)
        for line in (ncmul(cone, k) - ncmul(k, cone)).render():
            lines.append(f'[L, {letter.name}] | {line}')
    return ('pass', []) if not lines else ('fail', lines)


def _random_poly(rng, order: str) -> NCPoly:
    result = NCPoly.zero(order)
    for _ in range(3):
        word = _random_word(rng, rng.randint(0, 3))
        result = result + normal_order(word, order, coeff=rng.randint(-3, 3) * Q ** rng.randint(-2, 2))
    return result


def _omega_algebra_check(params, cfg) -> Outcome:
    order = params['order']
    rng = derived_rng(cfg.seed, f'omega:{order}')
    lines = []
    for _ in range(20):
        a, b = _random_poly(rng, order), _random_poly(rng, order)
        if omega_conjugate(omega_conjugate(a)) != a:
            lines.append(f'{a} | omega is not an involution')
        if omega_conjugate(a * b) != omega_conjugate(b) * omega_conjugate(a):
            lines.append(f'{a} ; {b} | omega does not reverse products')
        if a.reorder(TILDE if order == HAT else HAT).reorder(order) != a:
            lines.append(f'{a} | reordering does not round-trip')
    return ('pass', []) if not lines else ('fail', lines)


# classical

def _classical_cases(cfg: SuiteConfig) -> List[Case]:
    cases = [
        ('classical', f'plane/s={s}', {'kind': 'plane', 's': s})
        for s in range(cfg.s_max + 1)
    ]
    for sign in SIGNS:
        cases.append(('classical', f'maxwell-bases/{sign}', {'kind': 'maxwell_bases', 'sign': sign}))
        cases.append(('classical', f'maxwell-limit/{sign}', {'kind': 'maxwell_limit', 'sign': sign}))
    for basis in cfg.bases:
        cases.append(('classical', f'dalembert-limit/{basis}', {'kind': 'dalembert_limit', 'basis': basis}))
    return cases


def _plane_check(params, cfg) -> Outcome:
    s = params['s']
    mismatches = classical_plane_oracle(s, derived_rng(cfg.seed, f'plane:{s}'))
    return ('pass', []) if not mismatches else ('fail', mismatches)


def _maxwell_bases_check(params, cfg) -> Outcome:
    sign = params['sign']
    return _check_keys(compare_operators(
        build_qmaxwell(sign, cfg.n, HAT), build_qmaxwell(sign, cfg.n, TILDE),
        exponent_box(*CLASSICAL_BOX), limit=True,
    ))


def _maxwell_limit_check(params, cfg) -> Outcome:
    sign = params['sign']
    return _check_keys(compare_operators(
        build_qmaxwell(sign, 0, HAT), classical_maxwell(sign),
        exponent_box(*CLASSICAL_BOX), limit=True,
    ))


def _dalembert_limit_check(params, cfg) -> Outcome:
    return _check_keys(compare_operators(
        build_qdalembert(params['basis']), classical_dalembert(),
        exponent_box(*CLASSICAL_BOX), limit=True,
    ))


# mutation

def count_scalars(op: OpExpr) -> int:
    if isinstance(op, ScalarMul):
        return 1
    if isinstance(op, Sum):
        return sum(count_scalars(term) for term in op.terms)
    if isinstance(op, Product):
        return sum(count_scalars(factor) for factor in op.factors)
    return 0


def mutate(op: OpExpr, index: int) -> OpExpr:
    """multiply the index-th scalar node (pre-order) by q."""
    remaining = [index]

    def walk(node: OpExpr) -> OpExpr:
        if isinstance(node, ScalarMul):
            hit = remaining[0] == 0
            remaining[0] -= 1
            return ScalarMul(node.value * Q) if hit else node
        if isinstance(node, Sum):
            return Sum(tuple(walk(term) for term in node.terms))
        if isinstance(node, Product):
            return Product(tuple(walk(factor) for factor in node.factors))
        return node

    if not 0 <= index < count_scalars(op):
        raise IndexError(f'no scalar node {index} in operator')
    return walk(op)


def _mutation_targets(cfg: SuiteConfig) -> Dict[str, Tuple[Callable[[], OpExpr], List[Tuple[Callable, Dict[str, Any]]]]]:
    # the lambda terms need two coordinate powers, so only s >= 2 reaches them
    zero = str(ZERO_POLY)
    gammas = list(LETTERS)

    def inhomogeneous(sign, basis):
        return [(_inhomogeneous_check, {'sign': sign, 'basis': basis, 'm': m, 's': s, 'gamma': g})
                for m in (0, 1) for s in (2, 3) for g in gammas]

    def conservation(basis):
        return [(_conservation_check, {'basis': basis, 'm': m, 's': s, 'gamma': g})
                for m in (0, 1) for s in (2, 3) for g in gammas]

    return {
        'qdalembert/hat': (
            lambda: build_qdalembert(HAT),
            [(_plane_wave_check, {'basis': HAT, 's': s, 'poly': zero}) for s in (2, 3)],
        ),
        'qdalembert/tilde': (
            lambda: build_qdalembert(TILDE),
            [(_plane_wave_check, {'basis': TILDE, 's': s, 'poly': zero}) for s in (2, 3)],
        ),
        'qmaxwell/hat/+': (lambda: build_qmaxwell('+', cfg.n, HAT), inhomogeneous('+', HAT)),
        'qmaxwell/tilde/-': (lambda: build_qmaxwell('-', cfg.n, TILDE), inhomogeneous('-', TILDE)),
        'conservation/hat': (lambda: build_current_conservation(HAT), conservation(HAT)),
        'conservation/tilde': (lambda: build_current_conservation(TILDE), conservation(TILDE)),
    }


def _mutation_cases(cfg: SuiteConfig) -> List[Case]:
    targets = _mutation_targets(cfg)
    candidates = [
        (name, index)
        for name, (builder, _) in targets.items()
        for index in range(count_scalars(builder()))
    ]
    rng = derived_rng(cfg.seed, 'mutation')
    chosen = rng.sample(candidates, min(MUTATIONS, len(candidates)))
    return [
        ('mutation', f'{name}/node={index}', {'target': name, 'index': index})
        for name, index in chosen
    ]


def _mutation_check(params, cfg) -> Outcome:
    # mutations are judged on-cone whatever the flag says
    cfg = cfg._replace(on_cone=True)
    builder, checks = _mutation_targets(cfg)[params['target']]
    original = builder()
    mutated = mutate(original, params['index'])
    baseline = [check(case, cfg, op=original)[0] == 'pass' for check, case in checks]
    if not any(baseline):
        return 'inconclusive', ['no baseline case passes for this operator']
    for passed, (check, case) in zip(baseline, checks):
        if passed and check(case, cfg, op=mutated)[0] == 'fail':
            return 'pass', []
    return 'fail', ['mutation survives every baseline-passing case']


_CASES = {
    'dalembert': _dalembert_cases,
    'maxwell': _maxwell_cases,
    'current': _current_cases,
    'weyl': _weyl_cases,
    'omega': _omega_cases,
    'algebra': _algebra_cases,
    'classical': _classical_cases,
    'mutation': _mutation_cases,
}

_CHECKS = {
    ('dalembert', None): _plane_wave_check,
    ('maxwell', 'homogeneous'): _homogeneous_check,
    ('maxwell', 'inhomogeneous'): _inhomogeneous_check,
    ('maxwell', 'uniform'): _uniform_check,
    ('current', 'conservation'): _conservation_check,
    ('current', 'identities'): _identities_check,
    ('current', 'scale'): _scale_check,
    ('weyl', 'rel'): _rel_check,
    ('weyl', 'limit'): _limit_check,
    ('weyl', 'calibration'): _calibration_check,
    ('weyl', 'symmetries'): _symmetries_check,
    ('weyl', 'quartic'): _quartic_check,
    ('weyl', 'dictionary'): _dictionary_check,
    ('omega', None): _omega_check,
    ('algebra', 'pbw'): _pbw_check,
    ('algebra', 'confluence'): _confluence_check,
    ('algebra', 'centrality'): _centrality_check,
    ('algebra', 'omega'): _omega_algebra_check,
    ('classical', 'plane'): _plane_check,
    ('classical', 'maxwell_bases'): _maxwell_bases_check,
    ('classical', 'maxwell_limit'): _maxwell_limit_check,
    ('classical', 'dalembert_limit'): _dalembert_limit_check,
    ('mutation', None): _mutation_check,
}


def build_cases(cfg: SuiteConfig) -> List[Case]:
    try:
        return _CASES[cfg.suite](cfg)
    except KeyError:
        raise ValueError(f'unknown suite: {cfg.suite}')


def run_case(case: Case, cfg: SuiteConfig) -> VerifyReport:
    suite, case_id, params = case
    params = dict(params)
    check = _CHECKS[(suite, params.get('kind'))]
    start = time.perf_counter()
    status, residual = check(params, cfg)
    elapsed = round((time.perf_counter() - start) * 1000, 3) if cfg.timing else None
    logger.debug('%s %s: %s', suite, case_id, status)
    return VerifyReport(
        suite=suite,
        case=case_id,
        params=params,
        status=status,
        residual=tuple(residual),
        time_ms=elapsed,
        version=__version__,
    )


def _run_chunk(cases: List[Case], cfg: SuiteConfig) -> List[VerifyReport]:
    return [run_case(case, cfg) for case in cases]


def exit_code(reports: List[VerifyReport]) -> int:
    return 1 if any(report.status == 'fail' for report in reports) else 0


def run_suite(cfg: SuiteConfig) -> Tuple[List[VerifyReport], int]:
    """run every case of the configured suite; returns the reports in case
    order and the process exit code."""
    cases = build_cases(cfg)
    logger.info('running %s suite: %d cases', cfg.suite, len(cases))
    try:
        if cfg.num_processes <= 1 or len(cases) <= 1:
            reports = _run_chunk(cases, cfg)
        else:
            with Pool(cfg.num_processes) as pool:
                tasks = [
                    pool.apply_async(_run_chunk, args=(chunk, cfg))
                    for chunk in _chunks(cases, cfg.num_processes)
                ]
                reports = [report for task in tasks for report in task.get()]
    except InternalNontermination as e:
        logger.error('normal ordering did not terminate: %s', e)
        return [], 3
    failures = sum(report.status == 'fail' for report in reports)
    inconclusive = sum(report.status == 'inconclusive' for report in reports)
    logger.info('finished %s suite: %d cases, %d failures, %d inconclusive',
                cfg.suite, len(reports), failures, inconclusive)
    if inconclusive:
        logger.warning('%d of %d %s cases are inconclusive; see their residuals',
                       inconclusive, len(reports), cfg.suite)
    return reports, exit_code(reports)
