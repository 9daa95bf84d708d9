import pytest
import simplejson as json
from lxml import etree

from qconformal.types import VerifyReport
from qconformal.printer import to_string, print_
from qconformal.printer.my_json import json_of


@pytest.fixture()
def passed():
    return VerifyReport(
        suite='dalembert',
        case='hat/s=2/P=0,0,0,0,0,0',
        params={'basis': 'hat', 's': 2, 'poly': '0,0,0,0,0,0'},
        status='pass',
        version='0.1.0',
    )


@pytest.fixture()
def failed():
    return VerifyReport(
        suite='maxwell',
        case='inhomogeneous/hat/-/m=0/s=1/v',
        params={'kind': 'inhomogeneous', 'basis': 'hat', 'sign': '-'},
        status='fail',
        residual=('q^-2 - 1 | z^0 zb^1 | v^0 x-^0 x+^0 vb^0 | kv^1 k-^0 k+^0 kvbar^1',),
        time_ms=12.5,
        version='0.1.0',
    )


def test_json(passed, failed):
    lines = to_string([passed, failed], format='json').splitlines()
    assert len(lines) == 2
    record = json.loads(lines[0])
    assert list(record) == ['suite', 'case', 'params', 'status', 'residual', 'time_ms', 'version']
    assert record['residual'] == []
    assert record['time_ms'] is None
    assert json.loads(lines[1])['residual'] == list(failed.residual)
    assert json_of(failed)['params']['sign'] == '-'


def test_text(passed, failed):
    text = to_string([passed, failed], format='text')
    lines = text.splitlines()
    assert lines[0].split() == ['dalembert', passed.case, 'pass']
    assert lines[1].split()[-2:] == ['12.500', 'ms']
    assert lines[2] == '    ' + failed.residual[0]
    assert text.endswith('\n')


def test_xml(passed, failed):
    root = etree.fromstring(to_string([passed, failed], format='xml').encode('utf-8'))
    assert root.tag == 'verify'
    assert root.get('version') == '0.1.0'
    cases = root.findall('case')
    assert [case.get('status') for case in cases] == ['pass', 'fail']
    assert cases[1].get('time_ms') == '12.5'
    assert cases[1].find('term').text == failed.residual[0]
    params = {param.get('name'): param.get('value') for param in cases[0].find('params')}
    assert params == {'basis': 'hat', 's': '2', 'poly': '0,0,0,0,0,0'}


@pytest.mark.parametrize('format', ['json', 'text', 'xml'])
def test_empty(format):
    assert to_string([], format=format) == ''


def test_unsupported_format(passed):
    with pytest.raises(KeyError):
        to_string([passed], format='html')


def test_print(passed, capsys):
    print_([passed], format='json')
    assert json.loads(capsys.readouterr().out)['status'] == 'pass'
