import json
import sys
from importlib import resources
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

sys.path.insert(0, str(Path(__file__).parent))


def _load_schemas():
    out = {}
    for entry in resources.files("hyperdom").joinpath("schemas").iterdir():
        if entry.name.endswith(".json"):
            out[entry.name] = json.loads(entry.read_text())
    return out


SCHEMAS = _load_schemas()
REGISTRY = Registry().with_resources(
    (name, Resource.from_contents(body)) for name, body in SCHEMAS.items()
)


@pytest.fixture
def validate():
    def check(obj, name):
        Draft202012Validator(SCHEMAS[name], registry=REGISTRY).validate(obj)

    return check
