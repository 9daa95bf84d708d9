from typing import Any, Dict, NamedTuple, Optional, Tuple

BASES = ('hat', 'tilde')
SIGNS = ('+', '-')

SUITES = (
    'dalembert', 'maxwell', 'current', 'weyl',
    'omega', 'algebra', 'classical', 'mutation',
)

FAMILIES = (
    'dalembert',
    'maxwell_plus',
    'maxwell_minus',
    'current_conservation',
    'weyl_plus',
    'weyl_minus',
    'metric_to_weyl_plus',
    'metric_to_weyl_minus',
)

STATUSES = ('pass', 'fail', 'inconclusive')


class EquationSpec(NamedTuple):
    family: str
    basis: str = 'hat'
    n: int = 0

    @classmethod
    def parse(cls, text: str) -> 'EquationSpec':
        """'maxwell_plus/hat/0', 'dalembert/tilde' or 'weyl_minus'"""
        items = text.split('/')
        if not 1 <= len(items) <= 3:
            raise ValueError(f'failed to parse equation: {text}')
        family = items[0]
        basis = items[1] if len(items) > 1 else 'hat'
        n = int(items[2]) if len(items) > 2 else 0
        if family not in FAMILIES or basis not in BASES:
            raise ValueError(f'unknown equation: {text}')
        return cls(family, basis, n)

    def __str__(self) -> str:
        return f'{self.family}/{self.basis}/{self.n}'


class SuiteConfig(NamedTuple):
    suite: str
    basis: str = 'both'
    s_max: int = 3
    m_max: int = 2
    n: int = 0
    poly_spec: Optional[str] = None
    seed: int = 0
    on_cone: bool = True
    format: str = 'json'
    num_processes: int = 1
    timing: bool = False

    @property
    def bases(self) -> Tuple[str, ...]:
        return BASES if self.basis == 'both' else (self.basis,)


class VerifyReport(NamedTuple):
    suite: str
    case: str
    params: Dict[str, Any]
    status: str
    residual: Tuple[str, ...] = ()
    time_ms: Optional[float] = None
    version: str = ''
