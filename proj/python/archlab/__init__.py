"""Graph-theoretic measures of recurrent architectures."""

from ._archlab import ArchlabError, Graph, convergence, fixture, measure

__all__ = ["ArchlabError", "Graph", "convergence", "fixture", "measure"]
