from typing import List

from qconformal.types import VerifyReport


def text_of(reports: List[VerifyReport]) -> str:
    """an aligned table, one row per case, residual terms indented below."""
    if not reports:
        return ''
    case_width = max(len(report.case) for report in reports)
    suite_width = max(len(report.suite) for report in reports)
    lines = []
    for report in reports:
        row = f'{report.suite:<{suite_width}}  {report.case:<{case_width}}  {report.status:<12}'
        if report.time_ms is not None:
            row += f'  {report.time_ms:.3f} ms'
        lines.append(row.rstrip())
        for term in report.residual:
            lines.append(f'    {term}')
    return '\n'.join(lines) + '\n'
