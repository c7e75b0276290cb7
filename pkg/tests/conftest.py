from pathlib import Path

import hypothesis
import pytest

from jetmaps.config import reset_config
from jetmaps.dsl import read_problem
from jetmaps.ideal import infer_ranking, orient
from jetmaps.jets import JetContext

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("ci")

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def fresh_config():
    reset_config()
    yield
    reset_config()


@pytest.fixture
def fixture_path():
    def resolve(name: str) -> Path:
        return FIXTURES / name

    return resolve


@pytest.fixture
def load():
    """Problem plus its oriented source system."""

    def _load(name: str):
        problem = read_problem(FIXTURES / name)
        ranking = infer_ranking(
            problem.context,
            [eq.lhs for eq in problem.source_system],
            problem.options.get("ranking"),
        )
        return problem, orient(problem.source_system, problem.context, ranking)

    return _load


@pytest.fixture
def tx() -> JetContext:
    return JetContext(independents=("t", "x"), dependents=("u",))


@pytest.fixture
def xy() -> JetContext:
    return JetContext(independents=("x", "y"), dependents=("u",), parameters=("a",))
