import pytest


def pytest_addoption(parser):
    parser.addoption('--fast', action='store_true', default=False, dest='fast', help="Skip exhaustive sweeps and brute-force comparisons (tests marked slow).")


def pytest_configure(config):
    config.addinivalue_line('markers', "slow: exhaustive sweeps and brute-force comparisons")


def pytest_collection_modifyitems(config, items):
    if not config.getoption('fast'):
        return
    skip = pytest.mark.skip(reason="skipped with --fast")
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip)
