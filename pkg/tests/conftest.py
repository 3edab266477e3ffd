"""Shared fixtures: example theory documents and a CLI runner."""

from __future__ import annotations

from pathlib import Path

import pytest

from causelp.parser import TheoryDocument, parse_theory

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def load_doc(name: str) -> TheoryDocument:
    return parse_theory((DATA / name).read_text())


@pytest.fixture
def example1() -> TheoryDocument:
    return load_doc("example1.ct")


@pytest.fixture
def example2() -> TheoryDocument:
    return load_doc("example2.ct")


@pytest.fixture
def example4() -> TheoryDocument:
    return load_doc("example4.ct")


@pytest.fixture
def example7() -> TheoryDocument:
    return load_doc("example7.ct")


@pytest.fixture
def examples567() -> TheoryDocument:
    return load_doc("examples567.ct")


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""
    from causelp.cli import main

    def run(*argv: str):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
