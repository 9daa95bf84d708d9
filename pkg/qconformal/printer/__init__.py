from typing import List

import simplejson as json
from lxml import etree

from qconformal.types import VerifyReport
from qconformal.printer.my_json import json_of
from qconformal.printer.text import text_of
from qconformal.printer.xml import xml_of

FORMATS = ('json', 'text', 'xml')


def _process_xml(xml_node):
    return etree \
        .tostring(xml_node, encoding='utf-8', pretty_print=True) \
        .decode('utf-8')


def _json_lines(reports: List[VerifyReport]) -> str:
    return ''.join(
        json.dumps(json_of(report), ensure_ascii=False) + '\n'
        for report in reports
    )


_formatters = {
    'json': _json_lines,
    'text': text_of,
}


def to_string(reports: List[VerifyReport], format: str = 'json') -> str:
    """convert verification reports into one string representation

    Args:
        reports (List[VerifyReport]): reports in case order
        format (str, optional): 'json' (one record per line), 'text' or
            'xml'. Defaults to 'json'.

    Raises:
        KeyError: if the format option is not supported, this error occurs.

    Returns:
        str: string in the target format; empty for no reports
    """
    if format == 'xml':
        if not reports:
            return ''
        return _process_xml(xml_of(reports, version=reports[0].version))

    try:
        formatter = _formatters[format]
    except KeyError:
        raise KeyError(f'unsupported format type: {format}')
    return formatter(reports)


def print_(reports: List[VerifyReport], format: str = 'json', **kwargs) -> None:
    """print reports; other keyword arguments go to Python's print."""
    print(to_string(reports, format=format), end='', **kwargs)
