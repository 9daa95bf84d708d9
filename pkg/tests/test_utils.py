import argparse

import pytest

from qconformal.argparse import UsageError, suite_config
from qconformal.utils import derived_rng, read_config, read_seed_lines, remove_comment


def namespace(**kwargs):
    values = dict(
        suite='dalembert', basis=None, s_max=None, m_max=None, n=None,
        poly_spec=None, seed=None, on_cone=None, format=None, out=None,
        num_processes=None, timing=None, silent=True, config=None,
    )
    values.update(kwargs)
    return argparse.Namespace(**values)


def test_derived_rng():
    assert derived_rng(0, 'a').random() == derived_rng(0, 'a').random()
    assert derived_rng(0, 'a').random() != derived_rng(0, 'b').random()
    assert derived_rng(0, 'a').random() != derived_rng(1, 'a').random()


def test_remove_comment():
    assert remove_comment('{"h": {}}  # flat') == '{"h": {}}'
    assert remove_comment('# only a comment') == ''


def test_read_seed_lines():
    lines = read_seed_lines('tests/seeds.jsonl')
    assert len(lines) == 3
    assert all(line.startswith('{') for line in lines)


def test_read_config(tmp_path):
    path = tmp_path / 'verify.yaml'
    path.write_text('s-max: 2\nbasis: tilde\noff_cone: true\n')
    assert read_config(str(path)) == {'s_max': 2, 'basis': 'tilde', 'off_cone': True}
    path.write_text('- 1\n- 2\n')
    with pytest.raises(ValueError):
        read_config(str(path))
    path.write_text('')
    assert read_config(str(path)) == {}


def test_suite_config_defaults():
    cfg = suite_config(namespace())
    assert cfg.suite == 'dalembert'
    assert cfg.bases == ('hat', 'tilde')
    assert (cfg.s_max, cfg.m_max, cfg.n, cfg.seed) == (3, 2, 0, 0)
    assert cfg.on_cone and not cfg.timing
    assert cfg.format == 'json'


def test_suite_config_precedence():
    file_config = {'s_max': 1, 'basis': 'tilde', 'seed': 5}
    cfg = suite_config(namespace(s_max=2, on_cone=False), file_config)
    assert cfg.s_max == 2
    assert cfg.basis == 'tilde'
    assert cfg.bases == ('tilde',)
    assert cfg.seed == 5
    assert cfg.on_cone is False


@pytest.mark.parametrize('args, file_config', [
    ({'s_max': -1}, None),
    ({'num_processes': 0}, None),
    ({}, {'basis': 'both-ways'}),
    ({}, {'format': 'html'}),
    ({}, {'depth': 3}),
    ({}, {'suite': 'weyl'}),
    ({}, {'m_max': 'two'}),
])
def test_suite_config_errors(args, file_config):
    with pytest.raises(UsageError):
        suite_config(namespace(**args), file_config)
