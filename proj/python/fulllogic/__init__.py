"""Python interface to the full deontic reasoner.

Knowledge bases are parsed once and reused; every query returns plain
dictionaries with the same layout as the CLI's ``--format json`` output.
"""

import json

from ._core import (
    FullError,
    KnowledgeBase,
    ParseError,
    alpha_equivalent,
    load_kb,
    normalize,
    parse_kb,
)
from . import _core

__all__ = [
    "FullError",
    "KnowledgeBase",
    "ParseError",
    "alpha_equivalent",
    "check",
    "evaluate",
    "load_kb",
    "normalize",
    "parse_kb",
    "universalize",
]


def universalize(kb, maxim):
    """Universalization record of the named maxim."""
    return json.loads(_core.universalize_json(kb, maxim))


def evaluate(kb, maxim, op="perm", *, max_facts=10000, max_iterations=200, max_term_depth=4, trace=False):
    """Verdict for ``op`` in {"perm", "imp", "obl"} applied to the named maxim."""
    return json.loads(
        _core.evaluate_json(kb, maxim, op, max_facts, max_iterations, max_term_depth, trace)
    )


def check(kb, *, max_facts=10000, max_iterations=200, max_term_depth=4):
    """Consistency report for the background axioms."""
    return json.loads(_core.check_json(kb, max_facts, max_iterations, max_term_depth))
