import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from cyclicflats import Matroid, uniform, vamos  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def labelled(n, table, labels=None):
    """Matroid built from the oracle's cyclic flats of a rank table."""
    labels = labels or [f"e{i}" for i in range(n)]
    flats = [([labels[i] for i in range(n) if z >> i & 1], r) for z, r in oracles.cyclic_flats(table, n)]
    return Matroid.from_labels(labels, flats)


def table_of(m):
    """Rank table of m in its own ground order, read through the package."""
    return [m.rank_mask(x) for x in range(1 << m.size)]


def random_matroid(seed, max_n=7):
    rng = random.Random(seed)
    n, t = oracles.random_table(rng, max_n)
    return labelled(n, t), t


@pytest.fixture(scope="session")
def vm():
    return vamos()


@pytest.fixture(scope="session")
def u34():
    return uniform(3, 4)


def curated():
    """Small matroids (at most 7 elements) exercised exhaustively."""
    from cyclicflats import projective_geometry

    out = {f"U{r},{n}": uniform(r, n) for r, n in [(0, 2), (1, 3), (2, 3), (2, 4), (3, 4), (2, 5), (3, 5), (3, 6)]}
    out["Fano"] = projective_geometry(3, 2)
    out["loop+parallel"] = Matroid.from_labels(list("abcde"), [(["a"], 0), (["a", "b", "c"], 1)])
    out["coloops"] = Matroid.from_labels(list("abcd"), [([], 0), (["a", "b"], 1)])
    out["two lines"] = Matroid.from_labels(list("abcdef"), [([], 0), (list("abc"), 2), (list("def"), 2),
                                                             (list("abcdef"), 4)])
    return out


@pytest.fixture(scope="session")
def counterexample_report():
    from cyclicflats import verify_counterexample

    return verify_counterexample()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
