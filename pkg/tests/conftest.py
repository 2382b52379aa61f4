import pytest


def pytest_addoption(parser):
    parser.addoption("--run-g2", action="store_true", default=False,
                     help="include the G2 braid relations (slow)")


def pytest_configure(config):
    config.addinivalue_line("markers", "g2: G2 braid check, needs --run-g2")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-g2"):
        return
    skip = pytest.mark.skip(reason="needs --run-g2")
    for item in items:
        if "g2" in item.keywords:
            item.add_marker(skip)
