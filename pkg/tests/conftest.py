import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from troprank import TropMatrix

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)
small_ints = st.integers(min_value=0, max_value=6)


@st.composite
def matrices(draw, rows=(1, 5), cols=(1, 5), entries=small_ints, square=False):
    m = draw(st.integers(*rows))
    n = m if square else draw(st.integers(*cols))
    return TropMatrix.from_rows([[Fraction(draw(entries)) for _ in range(n)] for _ in range(m)])


def M(*rows):
    return TropMatrix.from_rows(rows)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
