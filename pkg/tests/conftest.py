import math
import pathlib

import pytest
from hypothesis import strategies as st

from gcalc.garith import GNum

DATA_DIR = pathlib.Path(__file__).parent / "data"

# Bounded logs keep every derived quantity finite and well conditioned.
finite_logs = st.floats(min_value=-30.0, max_value=30.0, allow_nan=False, allow_infinity=False)
gnums = finite_logs.map(GNum)
nonzero_gnums = st.floats(min_value=-30.0, max_value=30.0, allow_nan=False).filter(
    lambda l: abs(l) > 1e-6
).map(GNum)


def assert_gclose(a: GNum, b, abs_tol: float = 1e-9):
    b_log = b.logval if isinstance(b, GNum) else math.log(b)
    assert math.isclose(a.logval, b_log, rel_tol=0.0, abs_tol=abs_tol), (
        f"logs differ: {a.logval!r} vs {b_log!r}"
    )


@pytest.fixture
def sin_table_text() -> str:
    return (DATA_DIR / "sin_table.csv").read_text(encoding="utf-8")


@pytest.fixture
def sin_table(sin_table_text):
    from gcalc.gexpr import read_table

    return read_table(sin_table_text)
