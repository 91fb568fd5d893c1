import pytest


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='Run exhaustive searches and large counts.')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def optcurve_home(tmp_path, monkeypatch):
    monkeypatch.setenv('OPTCURVE_HOME', str(tmp_path / 'home'))
    monkeypatch.delenv('OPTCURVE_THREADS', raising=False)
    return tmp_path / 'home'
