"""One test per acceptance criterion; each prints a PASS/FAIL line even under capture."""

import pytest

from ewl_pd.reproduce import CHECKS
from ewl_pd.verify import DEFAULT_SEED


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i}" for i in range(1, len(CHECKS) + 1)])
def test_criterion(check, capsys):
    result = check(seed=DEFAULT_SEED)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.details
