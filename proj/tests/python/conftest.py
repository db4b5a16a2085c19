import os
import shutil

import pytest


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("SEMSHIFT_CLI") or shutil.which("semshift")
    if not path:
        pytest.skip("semshift executable not available")
    return path
