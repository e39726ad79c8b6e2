import os

import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("SYMBIC_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="long-running; set SYMBIC_LONG=1 to enable")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)
