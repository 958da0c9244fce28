"""Shared pytest configuration.

Long-running verification gates are marked `extended` and only run when
pytest is invoked with `--extended`.
"""

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--extended",
        action="store_true",
        default=False,
        help="also run the long (several-minute) verification gates",
    )


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "extended: long-running gate, enabled with --extended"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)
