from typing import List

from lxml import etree

from qconformal.types import VerifyReport


def _process_report(report: VerifyReport) -> etree.Element:
    node = etree.Element('case')
    node.set('suite', report.suite)
    node.set('id', report.case)
    node.set('status', report.status)
    if report.time_ms is not None:
        node.set('time_ms', str(report.time_ms))
    params = etree.SubElement(node, 'params')
    for key, value in report.params.items():
        param = etree.SubElement(params, 'param')
        param.set('name', key)
        param.set('value', str(value))
    for term in report.residual:
        etree.SubElement(node, 'term').text = term
    return node


def xml_of(reports: List[VerifyReport], version: str = '') -> etree.Element:
    """convert reports to an XML etree.Element.

    Args:
        reports (List[VerifyReport]): verified cases
        version (str): engine version stored on the root node

    Returns:
        etree.Element: XML object
    """
    root = etree.Element('verify')
    if version:
        root.set('version', version)
    for report in reports:
        root.append(_process_report(report))
    return root
