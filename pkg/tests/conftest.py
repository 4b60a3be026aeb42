import sys

import mpmath
import pytest

from oracles import catalan_cvz

sys.set_int_max_str_digits(0)

REF_BITS = 2400


@pytest.fixture(scope="session")
def G_ref():
    """Catalan's constant from the independent accelerated series, 2400 bits."""
    return catalan_cvz(REF_BITS)


@pytest.fixture(scope="session")
def G_cert(G_ref):
    from catalan_forms.hyper_eval import CertifiedReal

    return CertifiedReal(G_ref, mpmath.mpf(2) ** -(REF_BITS - 8), REF_BITS)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    lines = [v for k, v in sorted((k, v) for k, v in test_acceptance.RESULTS.items() if isinstance(k, int))]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
