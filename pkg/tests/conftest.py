import os
import re
import sys

sys.path.insert(0, os.path.dirname(__file__))

from circuitbound.cli import FUZZ_EXP_BOUNDS, FUZZ_VOL_CAP
from circuitbound.forge import random_instance


def make_instance(n, seed, require_halfspace=True):
    """Random instance with the fuzz driver's per-dimension exponent ranges."""
    return random_instance(
        n,
        seed,
        exp_bound=FUZZ_EXP_BOUNDS.get(n, 1),
        require_halfspace=require_halfspace,
        vol_cap=FUZZ_VOL_CAP,
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one line per acceptance criterion at the end of the run."""
    mod = sys.modules.get("test_acceptance")
    if mod is None:
        return
    failed_nums = set()
    for rep in terminalreporter.stats.get("failed", []):
        m = re.search(r"test_criterion_(\d+)", rep.nodeid)
        if m:
            failed_nums.add(int(m.group(1)))
    if not mod.RESULTS and not failed_nums:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for num in sorted(set(mod.RESULTS) | failed_nums):
        if num in failed_nums:
            terminalreporter.write_line(f"  ACCEPTANCE {num}: FAIL (see failure above)")
        else:
            terminalreporter.write_line(f"  ACCEPTANCE {num}: PASS - {mod.RESULTS[num]}")
