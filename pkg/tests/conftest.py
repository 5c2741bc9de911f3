# tests/conftest.py

from pathlib import Path

import pytest

from homfin import fixtures
from homfin.algebra.group_rings import MonoidAlgebra
from homfin.algebra.resolutions import minimal_resolution
from homfin.algebra.scalars import parse_field

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# -----------------------------------------------------------------------------
# Algebras
# -----------------------------------------------------------------------------

@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def poly1():
    return fixtures.poly1(4)


@pytest.fixture(scope="session")
def poly2():
    return fixtures.poly2(6)


@pytest.fixture(scope="session")
def poly2_small():
    return fixtures.poly2(4)


@pytest.fixture(scope="session")
def free2():
    return fixtures.free2(4)


@pytest.fixture(scope="session")
def exterior2():
    return fixtures.exterior2(5)


@pytest.fixture(scope="session")
def cubic():
    return fixtures.cubic(5)


@pytest.fixture(scope="session")
def poly2_resolution(poly2):
    return minimal_resolution(poly2, n=3)


# -----------------------------------------------------------------------------
# Groups and Monoids
# -----------------------------------------------------------------------------

@pytest.fixture(scope="session")
def c2():
    return fixtures.cyclic_group(2)


@pytest.fixture(scope="session")
def c3():
    return fixtures.cyclic_group(3)


@pytest.fixture(scope="session")
def s3():
    return fixtures.symmetric_group(3)


@pytest.fixture(scope="session")
def semilattice():
    return fixtures.semilattice()


@pytest.fixture(scope="session")
def kc2_gf2(c2):
    return MonoidAlgebra(c2, parse_field("GF(2)"))


# -----------------------------------------------------------------------------
# CLI Environment
# -----------------------------------------------------------------------------

@pytest.fixture
def config_dir(tmp_path, monkeypatch):
    """An isolated config directory with console logging silenced."""
    directory = tmp_path / "config"
    directory.mkdir()
    (directory / "config.toml").write_text(
        '[engine]\ndegree_bound = 6\nhom_bound = 3\nfield = "Q"\nworkers = 1\n\n'
        '[output]\nformat = "table"\n\n'
        '[verify]\nlevel = "fast"\nseed = 7\n\n'
        '[logging]\nlog_level_console = "CRITICAL"\nlog_level_file = "CRITICAL"\n',
        encoding="utf-8",
    )
    monkeypatch.setenv("HOMFIN_CONFIG_DIR", str(directory))
    monkeypatch.setattr("platformdirs.user_log_dir", lambda *args, **kwargs: str(tmp_path / "logs"))
    for var in ("HOMFIN_DEGREE_BOUND", "HOMFIN_HOM_BOUND", "HOMFIN_FIELD", "HOMFIN_WORKERS"):
        monkeypatch.delenv(var, raising=False)
    return directory
