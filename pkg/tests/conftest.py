# 测试共享夹具：运行示例、第五节语料、R1–R4
from pathlib import Path

import pytest

from logic.normal_form import rename_apart, to_binding_normal_form
from logic.parser import read_formula_file
from model.files import read_signature_file, read_structure_file
from overlap.graphs import extract_schema
from utils.config import get_settings

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_path(name: str) -> str:
    return str(CORPUS / name)


def load_formula(name: str, signature):
    return read_formula_file(CORPUS / name, signature)


def load_normal_form(name: str, signature):
    return to_binding_normal_form(load_formula(name, signature))


def load_schemas(name: str, signature):
    """按出现顺序返回改名分离后的模式 σ1, σ2, …"""
    nf = rename_apart(load_normal_form(name, signature))
    return [extract_schema(leaf) for leaf in nf.leaves()]


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def running_sig():
    return read_signature_file(CORPUS / "running.sig")


@pytest.fixture
def running_str(running_sig):
    return read_structure_file(CORPUS / "running.str", running_sig)


@pytest.fixture
def triple_sig():
    return read_signature_file(CORPUS / "triple.sig")


@pytest.fixture
def binary_sig():
    return read_signature_file(CORPUS / "binary.sig")


@pytest.fixture
def unary_sig():
    return read_signature_file(CORPUS / "interp.sig")


@pytest.fixture
def bisim_structures(binary_sig):
    return {name: read_structure_file(CORPUS / f"{name}.str", binary_sig) for name in ("r1", "r2", "r3", "r4")}
