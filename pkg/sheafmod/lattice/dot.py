"""Hasse diagrams as DOT source."""

import graphviz

from sheafmod.lattice.models import Lattice, Poset


def hasse_dot(subject: Lattice | Poset, name: str | None = None) -> str:
    """DOT source of the cover relation, drawn bottom to top."""
    if isinstance(subject, Poset):
        labels = list(subject.elements)
        title = name or "poset"
    else:
        labels = list(subject.labels)
        title = name or subject.name
    graph = graphviz.Digraph(
        name=title, graph_attr={"rankdir": "BT"}, node_attr={"shape": "plaintext"}
    )
    for i, label in enumerate(labels):
        graph.node(f"n{i}", label)
    for lower, upper in subject.covers():
        graph.edge(f"n{lower}", f"n{upper}", arrowhead="none")
    return graph.source
