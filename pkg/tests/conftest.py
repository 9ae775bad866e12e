import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid:
                continue
            label = nodeid.split("::", 1)[1]
            lines.append((label, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for label, verdict in sorted(lines, key=lambda t: _criterion_key(t[0])):
            terminalreporter.write_line(f"{verdict}  {label}")


def _criterion_key(label):
    digits = "".join(ch for ch in label.split("_")[1] if ch.isdigit()) if "_" in label else ""
    return (int(digits) if digits else 99, label)


@pytest.fixture
def worked_example():
    from ncdchain import BitString

    return BitString.from_str("000010010000001100")
