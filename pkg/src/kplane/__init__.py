"""Exhaustive enumeration of simple k-plane drawings and related tooling."""

from .graphs import InvalidInput, LabeledGraph, Edge, Tag

__all__ = ["InvalidInput", "LabeledGraph", "Edge", "Tag"]
__version__ = "0.1.0"
