"""Bundled example graphs."""

from __future__ import annotations

from importlib import resources

from .graph import LabeledGraph, parse_graph

NAMES = ("G6", "G8", "G13", "GEVEN")


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath("fixtures", f"{name}.graph").read_text("utf-8")


def fixture(name: str) -> LabeledGraph:
    return parse_graph(fixture_text(name))
