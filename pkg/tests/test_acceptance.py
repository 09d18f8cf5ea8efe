"""One test per acceptance criterion; each prints its verdict line.

Criterion 8 (KS distance falling along the small-t ladder) does not hold
for this process and is left failing; see the project notes.
"""

import pytest

from mpplab.validation import CRITERIA, run_criterion


@pytest.mark.slow
@pytest.mark.parametrize("number", [c.number for c in CRITERIA], ids=[f"criterion-{c.number:02d}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()
