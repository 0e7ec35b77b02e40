import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import acceptance_log


def pytest_terminal_summary(terminalreporter):
	if not acceptance_log.RESULTS:
		return
	terminalreporter.section("acceptance")
	for number in sorted(acceptance_log.RESULTS):
		ok, title, detail = acceptance_log.RESULTS[number]
		line = "criterion %d: %s  %s" % (number, "PASS" if ok else "FAIL", title)
		if detail:
			line += " (%s)" % detail
		terminalreporter.write_line(line)
