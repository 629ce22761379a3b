"""
Extended dual graphs of curve configurations.

Vertices are the integral components and the singular points of the reduced
curve; every local analytic branch at a singular point contributes one edge
to the component carrying it. Branch data is supplied by the user.
"""
import logging

import networkx as nx

from .errors import ModelError

logger = logging.getLogger(__name__)

COMPONENT = 'component'
POINT = 'point'


class Singularity(object):

    def __init__(self, name, branches):
        self.name = str(name)
        self.branches = tuple(str(b) for b in branches)

    def __repr__(self):
        return 'Singularity(<%s: %s>)' % (self.name, ', '.join(self.branches))


class CurveConfigInput(object):
    """
    :param components: names of the integral components ``C_i``
    :param singularities: :class:`Singularity` list, or ``(name, branches)`` pairs
    """

    def __init__(self, components, singularities=(), name=None):
        self.name = name or 'curve'
        self.components = tuple(str(c) for c in components)
        self.singularities = tuple(s if isinstance(s, Singularity) else Singularity(*s)
                                   for s in singularities)
        self._validate()

    def _validate(self):
        if len(set(self.components)) != len(self.components):
            raise ModelError('%s: duplicate component names' % self.name)
        names = [s.name for s in self.singularities]
        if len(set(names)) != len(names):
            raise ModelError('%s: duplicate singular point names' % self.name)
        known = set(self.components)
        for s in self.singularities:
            if not s.branches:
                raise ModelError('%s: singular point %s has no branches' % (self.name, s.name))
            for b in s.branches:
                if b not in known:
                    raise ModelError('%s: branch at %s references unknown component %s'
                                     % (self.name, s.name, b))

    def closed_formula_betti1(self):
        """``sum (n_x - 1) - r + 1`` for a connected configuration"""
        return sum(len(s.branches) - 1 for s in self.singularities) - len(self.components) + 1


class DualGraph(object):

    def __init__(self, config, graph):
        self.config = config
        self.graph = graph

    def __repr__(self):
        return 'DualGraph(<%s: %d vertices %d edges>)' % (
            self.config.name, self.graph.number_of_nodes(), self.graph.number_of_edges())

    @property
    def vertices(self):
        return list(self.graph.nodes)

    @property
    def edges(self):
        return list(self.graph.edges(keys=True))

    def is_connected(self):
        return self.graph.number_of_nodes() > 0 and nx.is_connected(self.graph)


def build_graph(config):
    """
    The extended dual graph as a ``networkx.MultiGraph``. Component vertices
    ``('component', name)`` come first, then point vertices ``('point', name)``,
    each in input order; one edge per branch.
    """
    graph = nx.MultiGraph()
    graph.add_nodes_from((COMPONENT, c) for c in config.components)
    graph.add_nodes_from((POINT, s.name) for s in config.singularities)
    for s in config.singularities:
        for b in s.branches:
            graph.add_edge((POINT, s.name), (COMPONENT, b))
    return DualGraph(config, graph)


def betti1(dual):
    """Cycle rank ``edges - vertices + components`` of the extended dual graph"""
    graph = dual.graph
    if graph.number_of_nodes() == 0:
        return 0
    rank = graph.number_of_edges() - graph.number_of_nodes() + nx.number_connected_components(graph)
    if nx.is_connected(graph):
        formula = dual.config.closed_formula_betti1()
        if formula != rank:
            raise ModelError('%s: cycle rank %d disagrees with the branch formula %d'
                             % (dual.config.name, rank, formula))
    logger.debug('b1 of %s is %d', dual.config.name, rank)
    return rank


def same_betti1(first, second):
    """Whether two configurations (e.g. ``D`` and its proper transform) have equal ``b_1``"""
    return betti1(build_graph(first)) == betti1(build_graph(second))
