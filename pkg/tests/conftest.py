import json
from functools import lru_cache
from pathlib import Path

import pytest

from ncdiff import derivations, dual, preset, second_dual, star_dual
from ncdiff.formats import parse_algebra_file
from ncdiff.presets import CORPUS, corpus_name

ROOT = Path(__file__).resolve().parent.parent
DATA = Path(__file__).parent / "data"
ALGEBRA_FILES = sorted(p.name for p in (ROOT / "algebras").glob("*.json"))
CORPUS_IDS = [corpus_name(n, p) for n, p in CORPUS]


@lru_cache(maxsize=None)
def snapshots():
    return json.loads((DATA / "snapshots.json").read_text())


class Setup:
    """Algebra with V = Der(A) and its duals, computed once per test session."""

    def __init__(self, alg):
        self.alg = alg
        self.v = derivations(alg)
        self.dagger = dual(alg, self.v)

    @property
    def star(self):
        if not hasattr(self, "_star"):
            self._star = star_dual(self.alg, self.v)
        return self._star

    @property
    def bidual(self):
        if not hasattr(self, "_bidual"):
            self._bidual = second_dual(self.alg, self.dagger)
        return self._bidual


@lru_cache(maxsize=None)
def setup_for(key: str) -> Setup:
    if key.startswith("file:"):
        return Setup(parse_algebra_file(ROOT / "algebras" / key[5:]))
    for name, param in CORPUS:
        if corpus_name(name, param) == key:
            return Setup(preset(name, param))
    raise KeyError(key)


@pytest.fixture(params=CORPUS_IDS)
def corpus(request):
    return setup_for(request.param)


@pytest.fixture(params=[k for k in CORPUS_IDS if k != "matrix-3"])
def small(request):
    return setup_for(request.param)


@pytest.fixture
def m2():
    return setup_for("matrix-2")


@pytest.fixture
def dn():
    return setup_for("dual-numbers")
