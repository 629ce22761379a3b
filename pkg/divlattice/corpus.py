"""The bundled example models"""
import itertools
from functools import lru_cache

from .modelfile import ModelLoader

LATTICES = ('L1', 'L2', 'L3')
RESOLUTIONS = ('elliptic', 'blowup', 'A1', 'A2', 'D4', 'minus3', 'pa1')
GRAPHS = ('nodal_cubic', 'nodal_cubic_transform', 'smooth_curve', 'triangle')
SCENARIOS = ('scenario_connectivity', 'scenario_pullback', 'scenario_reider')

# point class of each single-point germ
SINGULARITY_CLASSES = {
    'blowup': 'smooth',
    'A1': 'duval',
    'A2': 'duval',
    'D4': 'duval',
    'minus3': 'logterminal',
    'pa1': 'nonlt',
}

_loader = ModelLoader()


@lru_cache(maxsize=None)
def lattice(name):
    return _loader.load_lattice(name)


@lru_cache(maxsize=None)
def resolution(name):
    return _loader.load_resolution(name)


@lru_cache(maxsize=None)
def graph(name):
    return _loader.load_graph(name)


def all_lattices():
    """Every bundled lattice, the up- and downstairs lattices of the resolutions included"""
    seen = {}
    for name in LATTICES:
        seen.setdefault(lattice(name), None)
    for name in RESOLUTIONS:
        model = resolution(name)
        seen.setdefault(model.upstairs, None)
        seen.setdefault(model.downstairs, None)
    return list(seen)


def effective_divisors(lat, max_total, min_total=1):
    """Integral effective divisors on ``lat`` with coefficient sum in ``[min_total, max_total]``"""
    for coeffs in itertools.product(range(max_total + 1), repeat=len(lat)):
        if min_total <= sum(coeffs) <= max_total:
            yield lat.divisor(coeffs)
