import sys
import time
from pathlib import Path

import pytest
from hypothesis import strategies as st

from petriflow import Net, fixtures

sys.path.insert(0, str(Path(__file__).parent))

# Instances with their initial markings, covering every bundled net.
FIXTURE_CASES = [
    ("tiny", {}),
    ("tinyk", {"k": 2}),
    ("tinyk", {"k": 3, "a0": 5}),
    ("tinyk", {"k": 4, "a0": 3, "b0": 1}),
    ("mutex", {}),
    ("mutex_param", {}),
    ("mutex_param", {"k": 2, "l": 1, "x": 2, "y": 3, "z": 4}),
    ("mutex_param", {"k": 1, "l": 2, "x": 1, "y": 1, "z": 2}),
    ("mutex3", {}),
    ("telecom", {}),
]


def case_id(case):
    name, params = case
    return name + "".join(f"-{k}{v}" for k, v in params.items())


@pytest.fixture(params=FIXTURE_CASES, ids=[case_id(c) for c in FIXTURE_CASES])
def fixture_net(request):
    name, params = request.param
    return fixtures.load(name, **params)


@st.composite
def small_nets(draw, max_places: int = 4, max_transitions: int = 4, max_weight: int = 2):
    n_p = draw(st.integers(1, max_places))
    n_t = draw(st.integers(1, max_transitions))
    w = st.integers(0, max_weight)
    pre = draw(st.lists(st.lists(w, min_size=n_t, max_size=n_t), min_size=n_p, max_size=n_p))
    post = draw(st.lists(st.lists(w, min_size=n_t, max_size=n_t), min_size=n_p, max_size=n_p))
    return Net(
        tuple(f"p{i}" for i in range(n_p)),
        tuple(f"t{j}" for j in range(n_t)),
        tuple(map(tuple, pre)),
        tuple(map(tuple, post)),
        name="random",
    )


@st.composite
def marked_nets(draw, max_tokens: int = 3, **kw):
    net = draw(small_nets(**kw))
    q0 = tuple(draw(st.lists(st.integers(0, max_tokens), min_size=len(net.places), max_size=len(net.places))))
    return net, q0


SESSION = {"start": time.perf_counter()}


def pytest_sessionstart(session):
    SESSION["start"] = time.perf_counter()


def pytest_collection_modifyitems(items):
    # acceptance checks run last so the suite-runtime criterion sees every test
    items.sort(key=lambda item: item.module.__name__ == "test_acceptance")


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
