import sys
from pathlib import Path

import pytest
from hypothesis import settings

from dsdenum.kernel import parse_kernel
from dsdenum.model import Domain

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"


def domains(**lengths):
    return {k: Domain(k, v) for k, v in lengths.items()}


def K(expr, name=None, default=10, **lengths):
    """Parse a kernel string; undeclared lengths default to ``default`` nt."""
    names = {tok.rstrip("(*") for tok in expr.split() if tok not in ("+", ")")}
    table = {n: Domain(n, lengths.get(n, default)) for n in names}
    return parse_kernel(expr, table, name=name)


@pytest.fixture
def data_dir():
    return DATA


def load(name):
    """Initial complexes of a data file, in file order."""
    from dsdenum.kernel import parse_input

    return list(parse_input((DATA / name).read_text()).complexes.values())
