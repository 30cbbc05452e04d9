from hypothesis import HealthCheck, settings, strategies as st

from operahedra.trees import enumerate_trees

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_TREES = [t for n in range(1, 6) for t in enumerate_trees(n)]
TINY_TREES = [t for n in range(1, 5) for t in enumerate_trees(n)]

small_trees = st.sampled_from(SMALL_TREES)
tiny_trees = st.sampled_from(TINY_TREES)


def perms(max_n: int = 7):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(range(1, n + 1)).map(tuple))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") == "call" and "test_acceptance.py" in rep.nodeid:
                lines.append((rep.nodeid.split("::")[-1], "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{status}  {name}")
