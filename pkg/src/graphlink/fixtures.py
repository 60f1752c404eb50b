"""Named example graphs shipped with the package.

UNKNOT_NEG / UNKNOT_POS  single-vertex graphs, one per sign
E1                       one directed edge, the smallest interesting case
EVEN4                    even 4-cycle (principally unimodular)
ODD4                     odd 4-cycle, the minimal non-PU graph
OM3                      smallest configuration admitting the untwisting move
THETA11                  theta graph of three directed length-4 paths; PU
                         but realizes no link diagram
"""

from __future__ import annotations

from importlib import resources

from .graphs import LabeledGraph, parse_graph

__all__ = ["FIXTURES", "fixture", "fixture_text"]

FIXTURES = (
    "UNKNOT_NEG",
    "UNKNOT_POS",
    "E1",
    "EVEN4",
    "ODD4",
    "OM3",
    "THETA11",
)


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    path = resources.files(__package__) / "fixtures" / f"{name.lower()}.graph"
    return path.read_text(encoding="utf-8")


def fixture(name: str) -> LabeledGraph:
    return parse_graph(fixture_text(name))
