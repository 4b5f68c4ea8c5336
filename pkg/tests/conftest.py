from __future__ import annotations

import pytest

from hibinccr import corpus_path, parse_poset


def load_corpus(name: str) -> str:
    return corpus_path(name).read_text(encoding="utf-8")


@pytest.fixture
def running_example():
    return parse_poset(load_corpus("running_example.poset"))


EXAMPLE_TREE_HINT = [1, 2, 3, 4, 5, 6]  # edges e2..e7
