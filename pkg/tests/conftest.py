import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


@pytest.fixture
def fixture_path():
    def get(name):
        return os.path.join(FIXTURES, name)

    return get
