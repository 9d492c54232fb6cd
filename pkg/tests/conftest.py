from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ncorders.golden import FieldElem, GoldenInt

settings.register_profile(
    "ncorders",
    max_examples=1000,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ncorders")

# every property test runs on at least this many generated instances
PROPERTY_EXAMPLES = 1000

small = st.integers(-60, 60)
goldens = st.builds(GoldenInt, small, small)
nonzero_goldens = goldens.filter(bool)
fractions = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))
fields = st.builds(FieldElem, fractions, fractions)
nonzero_fields = fields.filter(bool)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
