from typing import Any, Dict

from qconformal.types import VerifyReport


def json_of(report: VerifyReport) -> Dict[str, Any]:
    """a report as a Python dict with keys in the fixed order

    suite, case, params, status, residual, time_ms, version.

    Args:
        report (VerifyReport): one verified case

    Returns:
        Dict[str, Any]: JSON-ready dict
    """
    return {
        'suite': report.suite,
        'case': report.case,
        'params': report.params,
        'status': report.status,
        'residual': list(report.residual),
        'time_ms': report.time_ms,
        'version': report.version,
    }
