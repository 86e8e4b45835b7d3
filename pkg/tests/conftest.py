"""Shared fixtures: micro documents and miniature resource set."""

from __future__ import annotations

import os
from pathlib import Path

import pytest

from narrastyle.conllu import parse_conllu_file
from narrastyle.resources import load_resources, default_resource_dir

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
DOCS_DIR = os.path.join(DATA_DIR, "docs")
DOC_IDS = tuple(f"m{i:02d}" for i in range(1, 15))


@pytest.fixture(scope="session")
def mini_res():
    return load_resources(os.path.join(DATA_DIR, "resources"))


@pytest.fixture(scope="session")
def shipped_res():
    return load_resources(default_resource_dir())


@pytest.fixture(scope="session")
def docs():
    return {doc_id: parse_conllu_file(os.path.join(DOCS_DIR, f"{doc_id}.conllu"), doc_id)
            for doc_id in DOC_IDS}


@pytest.fixture(scope="session")
def docs_dir():
    return Path(DOCS_DIR)


@pytest.fixture(scope="session")
def mini_res_dir():
    return Path(DATA_DIR) / "resources"
