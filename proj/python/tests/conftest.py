import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = pathlib.Path(os.environ.get("PGRAPH_CLI", ROOT / "build" / "pgraph"))
    if not path.exists():
        pytest.skip(f"command-line tool not built at {path}")
    return str(path)


@pytest.fixture(scope="session")
def schema():
    import json

    return json.loads((ROOT / "schema" / "scenario.schema.json").read_text())
