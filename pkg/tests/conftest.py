"""Shared test fixtures: schema validation and in-process CLI runs."""

from __future__ import annotations

import contextlib
import io
import json
from importlib import resources

import jsonschema
import pytest

from convex_cyclic import cli


@pytest.fixture(scope="session")
def validate_schema():
    """Validate a JSON instance against one of the packaged schemas."""
    root = resources.files("convex_cyclic").joinpath("schemas")
    cache: dict[str, dict] = {}

    def check(name: str, instance) -> None:
        if name not in cache:
            cache[name] = json.loads(root.joinpath(f"{name}.json").read_text(encoding="utf-8"))
        jsonschema.validate(instance, cache[name])

    return check


@pytest.fixture()
def run_cli():
    """Invoke the CLI in process; returns (exit_code, stdout, stderr)."""

    def run(argv: list[str]) -> tuple[int, str, str]:
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli.main(list(argv))
        return code, out.getvalue(), err.getvalue()

    return run
