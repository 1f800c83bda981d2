import sys
import zlib
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line(
        'markers', 'acceptance(number, title): acceptance criterion, summarized at the end')


@pytest.fixture
def rng(request):
    # deterministic per test so failures reproduce
    seed = zlib.crc32(request.node.nodeid.encode())
    return np.random.default_rng(seed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker('acceptance')
    if marker is None or report.when not in ('setup', 'call'):
        return
    if report.when == 'setup' and report.passed:
        return
    number, title = marker.args
    detail = '; '.join(f'{k}={v}' for k, v in item.user_properties)
    _ACCEPTANCE[number] = (title, report.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section('acceptance criteria')
    for number in sorted(_ACCEPTANCE):
        title, passed, detail = _ACCEPTANCE[number]
        status = 'PASS' if passed else 'FAIL'
        line = f'[{status}] criterion {number}: {title}'
        if detail:
            line += f'  ({detail})'
        terminalreporter.write_line(line)
