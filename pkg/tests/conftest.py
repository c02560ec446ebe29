import pytest

from huro_teleop.server import default_course_bytes
from huro_teleop.world import load_course


@pytest.fixture(scope="session")
def default_course():
    return load_course(default_course_bytes())
