"""Coherence diagrams as directed graphs whose edges carry signed scalar terms.

A diagram has one source and one sink. Each registered path becomes a chain of edges from source to sink;
an edge holds a label, a sign and a term that evaluates a residue table on a context of index arrays.
Checking a diagram means summing the signed terms along each of its two paths.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Mapping, Sequence, Tuple

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)

Context = Mapping[str, Any]
Term = Callable[[Context], np.ndarray]


@dataclass(frozen=True)
class Step:
    label: str
    sign: int
    term: Term


class CoherenceDiagram:
    SOURCE = "source"
    SINK = "sink"

    def __init__(self, name: str) -> None:
        self.name = name
        self.graph = nx.DiGraph(name=name)
        self.graph.add_node(self.SOURCE)
        self.graph.add_node(self.SINK)
        self.path_names: List[str] = []

    def add_path(self, path_name: str, steps: Sequence[Step]) -> None:
        """Register a composite as a chain of edges; an empty composite is a single identity edge."""
        if path_name in self.path_names:
            raise ValueError(f"Path '{path_name}' already exists in diagram '{self.name}'.")
        chain = [Step("id", 1, lambda context: np.zeros((), dtype=np.int64))] if not steps else list(steps)
        # every path ends in its own vertex before the sink, so parallel composites never share an edge
        vertices = [self.SOURCE] + [f"{path_name}:{i}" for i in range(1, len(chain) + 1)]
        for i, step in enumerate(chain):
            if step.sign not in (1, -1):
                raise ValueError(f"Edge '{step.label}' must have sign +1 or -1, got {step.sign}.")
            self.graph.add_edge(vertices[i], vertices[i + 1], path=path_name, step=step)
        self.graph.add_edge(vertices[-1], self.SINK, path=path_name)
        self.path_names.append(path_name)

    def paths(self) -> Dict[str, List[str]]:
        """Source-to-sink vertex sequences keyed by path name."""
        found: Dict[str, List[str]] = {}
        for vertices in nx.all_simple_paths(self.graph, self.SOURCE, self.SINK):
            name = self.graph.edges[vertices[0], vertices[1]]["path"]
            found[name] = vertices
        return {name: found[name] for name in self.path_names}

    def path_steps(self, path_name: str) -> List[Step]:
        vertices = self.paths()[path_name]
        edges = [self.graph.edges[u, v] for u, v in zip(vertices, vertices[1:])]
        return [edge["step"] for edge in edges if "step" in edge]

    def describe(self, path_name: str) -> str:
        return " ; ".join(("+" if s.sign > 0 else "-") + s.label for s in self.path_steps(path_name))

    def evaluate(self, path_name: str, context: Context) -> np.ndarray:
        total: Any = np.zeros((), dtype=np.int64)
        for step in self.path_steps(path_name):
            total = total + step.sign * step.term(context)
        return total

    def check(self, context: Context) -> Tuple[np.ndarray, np.ndarray]:
        """Values of the two paths, in registration order."""
        if len(self.path_names) != 2:
            raise ValueError(f"Diagram '{self.name}' needs exactly two paths, has {len(self.path_names)}.")
        left, right = self.path_names
        logger.debug("Diagram %s: %s | %s", self.name, self.describe(left), self.describe(right))
        return self.evaluate(left, context), self.evaluate(right, context)
