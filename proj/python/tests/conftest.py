import json
import os
import shutil
import subprocess
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "docs" / "schemas"


def _cli_path():
    path = os.environ.get("IGOF_CLI") or shutil.which("igof")
    if not path:
        pytest.skip("igof executable not found (set IGOF_CLI)")
    return path


@pytest.fixture(scope="session")
def cli():
    exe = _cli_path()

    def run(*args, check=None):
        proc = subprocess.run([exe, *map(str, args)], capture_output=True, text=True)
        if check is not None:
            assert proc.returncode == check, proc.stderr
        return proc

    return run


@pytest.fixture(scope="session")
def fixtures_dir():
    path = os.environ.get("IGOF_FIXTURES")
    if not path or not Path(path).is_dir():
        pytest.skip("generated fixtures not available (set IGOF_FIXTURES)")
    return Path(path)


@pytest.fixture(scope="session")
def validate():
    jsonschema = pytest.importorskip("jsonschema")

    def check(doc, schema_name):
        schema = json.loads((SCHEMAS / schema_name).read_text())
        jsonschema.validate(doc, schema)

    return check
