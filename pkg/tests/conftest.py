import pytest
from hypothesis import HealthCheck, settings

from wfcheck.process import and_, seq, task, validate, xor

settings.register_profile(
    "ci", derandomize=True, max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None)
settings.load_profile("ci")


def build_example_model():
    """Two parallel lanes, one with a choice, then a retracting task."""
    root = seq(
        and_(
            xor(task("t1", "a"), task("t2", "b", "c")),
            task("t3", "c", "d"),
        ),
        task("t4", "-a"),
    )
    return validate(root, name="parallel_choice")


@pytest.fixture
def example_model():
    return build_example_model()
