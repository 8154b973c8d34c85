from __future__ import annotations

from pathlib import Path

import pytest

from src.config.decode_config import DecodeConfig
from src.models.enums import DecodeMode
from src.models.token import make_constraints

BPE_CODES = """#version: 0.2
P i
Pi l
Pil o
Pilo t
p r
pr o
pro j
proj e
proje k
projek t</w>
N e
Ne v
Nev a
Neva d
Nevad a</w>
"""

PILOT_SOURCE = "Nevada has completed a pilot project ."
PILOT_REFERENCE = "In Nevada ist ein Pilot@@ projekt abgeschlossen ."
PILOT_OUTPUT = "In Nevada ist ein Pilot@@ projekt abgeschlossen"


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption("--run-bench", action="store_true", default=False, help="run wall-clock speed parity benchmarks")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--run-bench"):
        return
    skip_bench = pytest.mark.skip(reason="timing benchmark; pass --run-bench to run")
    for item in items:
        if "bench" in item.keywords:
            item.add_marker(skip_bench)


@pytest.fixture
def pilot_constraints():
    return make_constraints([["Nevada"], ["Pilot@@", "projekt"]])


@pytest.fixture
def make_config():
    def factory(mode: DecodeMode = DecodeMode.NO_INSERT, **overrides) -> DecodeConfig:
        return DecodeConfig(mode=mode, **overrides)

    return factory


@pytest.fixture
def bpe_codes_file(tmp_path: Path) -> Path:
    path = tmp_path / "codes.bpe"
    path.write_text(BPE_CODES, encoding="utf-8")
    return path


@pytest.fixture
def pilot_dictionary_file(tmp_path: Path) -> Path:
    path = tmp_path / "dict.tsv"
    path.write_text("Nevada\tNevada\npilot project\tPilotprojekt\n", encoding="utf-8")
    return path
