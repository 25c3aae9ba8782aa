"""
Collection wiring: the abstract mixin tests.base.TestBase is imported into
test modules under a Test* name; only its concrete unittest subclasses
should be collected.
"""
from tests.base import TestBase


def pytest_collection_modifyitems(config, items):
    items[:] = [item for item in items if getattr(item, "cls", None) is not TestBase]
