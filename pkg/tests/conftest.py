import pytest
from hypothesis import settings

from acceptance_report import LINES
from smoothpoly.catalog import catalog_file
from smoothpoly.enumerate2d import enumerate_smooth_polygons
from smoothpoly.enumerate3d import classify_all

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def catalog16():
    return classify_all(16)


@pytest.fixture(scope="session")
def catalog16_file(catalog16):
    return catalog_file(catalog16)


@pytest.fixture(scope="session")
def polygons12():
    return enumerate_smooth_polygons(12)


@pytest.fixture(scope="session")
def catalog16_path(catalog16_file, tmp_path_factory):
    from smoothpoly.catalog import write

    path = tmp_path_factory.mktemp("catalog") / "smooth3.jsonl"
    write(catalog16_file, path)
    return path


def pytest_terminal_summary(terminalreporter):
    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
