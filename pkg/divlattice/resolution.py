"""
Contractions between two lattices.

A :class:`ResolutionModel` links a smooth upstairs lattice to the downstairs
lattice obtained by contracting the exceptional primes. Pull-backs follow
Mumford: the proper transform plus the unique exceptional correction making
the result orthogonal to every exceptional prime.
"""
import logging
from fractions import Fraction

import networkx as nx

from . import _linalg
from .errors import ModelError, PreconditionError
from .lattice import (NEGDEF, SINGCLASSES, IntersectionLattice, definiteness, intersect,
                      rounddown, roundup, support_graph)

logger = logging.getLogger(__name__)


class ResolutionModel(object):
    """
    :param upstairs: smooth lattice of the resolution
    :param downstairs: lattice of the contracted surface
    :param exceptional: names of the exceptional upstairs primes
    :param transform: map downstairs prime name -> upstairs prime name (proper transform)
    """

    def __init__(self, upstairs, downstairs, exceptional, transform, name=None):
        self.name = name or 'resolution'
        self.upstairs = upstairs
        self.downstairs = downstairs
        self.exceptional = tuple(upstairs.index(e) for e in exceptional)
        self.transform = {downstairs.index(k): upstairs.index(v) for k, v in transform.items()}
        self._validate()

    def __repr__(self):
        return 'ResolutionModel(<name: %s exceptional: %s>)' % (
            self.name, ', '.join(self.upstairs.primes[i] for i in self.exceptional))

    @classmethod
    def contract(cls, upstairs, exceptional, names=None, name=None):
        """
        Build the model contracting ``exceptional``; the downstairs matrix is
        defined by the projection formula ``C . C' = pi^*C . pi^*C'``.

        :param names: optional map upstairs name -> downstairs name for the
            surviving primes (defaults to the same names)
        """
        names = names or {}
        exc = [upstairs.index(e) for e in exceptional]
        survivors = [i for i in range(len(upstairs)) if i not in exc]
        rows = upstairs.submatrix(exc)
        if not definiteness(upstairs, sorted(exc), NEGDEF):
            raise ModelError('%s: exceptional primes are not negative definite' % upstairs.name)
        pulled = []
        for i in survivors:
            rhs = [-upstairs.matrix[i][j] for j in exc]
            correction = _linalg.solve(rows, rhs)
            coeffs = [0] * len(upstairs)
            coeffs[i] = 1
            for j, x in zip(exc, correction):
                coeffs[j] = x
            pulled.append(upstairs.divisor(coeffs))
        matrix = [[intersect(a, b) for b in pulled] for a in pulled]
        down_names = [names.get(upstairs.primes[i], upstairs.primes[i]) for i in survivors]
        downstairs = IntersectionLattice(down_names, matrix, smooth=False,
                                         name='%s/contracted' % upstairs.name)
        transform = {d: upstairs.primes[i] for d, i in zip(down_names, survivors)}
        return cls(upstairs, downstairs, [upstairs.primes[i] for i in exc], transform, name=name)

    def _validate(self):
        up = self.upstairs
        if not up.smooth:
            raise ModelError('%s: the upstairs lattice must be flagged smooth' % self.name)
        images = list(self.transform.values())
        if len(set(images)) != len(images):
            raise ModelError('%s: proper transform map is not injective' % self.name)
        if set(images) & set(self.exceptional):
            raise ModelError('%s: exceptional primes and proper transforms overlap' % self.name)
        if len(self.transform) != len(self.downstairs):
            raise ModelError('%s: every downstairs prime needs a proper transform' % self.name)
        if set(images) | set(self.exceptional) != set(range(len(up))):
            missing = sorted(set(range(len(up))) - set(images) - set(self.exceptional))
            raise ModelError('%s: upstairs primes %s are neither exceptional nor proper transforms'
                             % (self.name, ', '.join(up.primes[i] for i in missing)))
        if not definiteness(up, sorted(self.exceptional), NEGDEF):
            raise ModelError('%s: the exceptional intersection matrix is not negative definite' % self.name)
        down = self.downstairs
        pulled = [mumford_pullback(self, down.prime(i)) for i in range(len(down))]
        for i in range(len(down)):
            for j in range(i, len(down)):
                up_value = intersect(pulled[i], pulled[j])
                if up_value != down.matrix[i][j]:
                    raise ModelError('%s: projection formula fails for (%s, %s): upstairs %s, downstairs %s'
                                     % (self.name, down.primes[i], down.primes[j], up_value,
                                        down.matrix[i][j]))

    @property
    def exceptional_divisors(self):
        return [self.upstairs.prime(i) for i in self.exceptional]

    def exceptional_connected(self):
        return bool(self.exceptional) and nx.is_connected(support_graph(self.upstairs, self.exceptional))

    def _exceptional_solve(self, rhs):
        """Exceptional divisor ``X`` with ``X . E_j = rhs[j]``"""
        try:
            solution = _linalg.solve(self.upstairs.submatrix(self.exceptional), rhs)
        except ZeroDivisionError:
            raise ModelError('%s: singular exceptional intersection matrix' % self.name)
        coeffs = [0] * len(self.upstairs)
        for i, x in zip(self.exceptional, solution):
            coeffs[i] = x
        return self.upstairs.divisor(coeffs)


class DeltaReport(object):

    def __init__(self, Delta, Z, delta, condE=None, cluster_assertion=None):
        self.Delta = Delta
        self.Z = Z
        self.delta = delta
        self.condE = condE
        self.cluster_assertion = cluster_assertion

    def __repr__(self):
        return 'DeltaReport(<Delta: %s Z: %s delta: %s condE: %s>)' % (
            self.Delta, self.Z, self.delta, self.condE)


def mumford_pullback(model, d):
    """``pi^*D = D_hat + sum d_i E_i`` with ``pi^*D . E_j = 0`` for every exceptional ``E_j``"""
    if d.lattice != model.downstairs:
        raise PreconditionError('mumford_pullback needs a divisor on %s, got one on %s'
                                % (model.downstairs.name, d.lattice.name))
    up = model.upstairs
    coeffs = [0] * len(up)
    for i, c in enumerate(d.coeffs):
        coeffs[model.transform[i]] = c
    hat = up.divisor(coeffs)
    correction = model._exceptional_solve([-hat.pairing_with_prime(j) for j in model.exceptional])
    return hat + correction


def pushforward(model, d):
    """Drop exceptional coefficients and map proper transforms back down"""
    if d.lattice != model.upstairs:
        raise PreconditionError('pushforward needs a divisor on %s, got one on %s'
                                % (model.upstairs.name, d.lattice.name))
    return model.downstairs.divisor([d.coeffs[model.transform[i]] for i in range(len(model.downstairs))])


def anticanonical_cycle(model):
    """
    ``Delta = pi^*K_X - K_X'``, the exceptional Q-divisor with
    ``Delta . E_j = -K_X' . E_j``; ``K_X' . E_j`` comes from adjunction.
    """
    up = model.upstairs
    rhs = []
    for j in model.exceptional:
        if up.genus is None or up.genus[j] is None:
            raise ModelError('%s: anti-canonical cycle needs the genus of %s' % (model.name, up.primes[j]))
        rhs.append(-up.canonical_product(j))
    return model._exceptional_solve(rhs)


def fundamental_cycle(model):
    """
    The smallest integral ``Z > 0`` on all exceptional primes with
    ``Z . E_j <= 0`` for every ``j`` (Laufer's increment loop from ``sum E_j``).
    """
    if not model.exceptional_connected():
        raise PreconditionError('%s: fundamental cycle needs a connected exceptional set' % model.name)
    up = model.upstairs
    z = up.divisor([1 if i in model.exceptional else 0 for i in range(len(up))])
    while True:
        for j in model.exceptional:
            if z.pairing_with_prime(j) > 0:
                break
        else:
            return z
        z = z + up.prime(j)
        logger.debug('laufer: added %s, Z = %s', up.primes[j], z)


def default_Z(model, singclass):
    """
    The cycle ``Z`` used for a point of class ``singclass``: the exceptional
    (-1)-curve, the fundamental cycle, the round-up or the round-down of Delta.
    """
    if singclass not in SINGCLASSES:
        raise PreconditionError('unknown singularity class %r' % singclass)
    up = model.upstairs
    if singclass == 'smooth':
        if len(model.exceptional) != 1:
            raise ModelError('%s: a smooth point blow-up has one exceptional curve' % model.name)
        e = model.exceptional[0]
        if up.matrix[e][e] != -1 or up.genus_of(e) != 0:
            raise ModelError('%s: %s is not a (-1)-curve' % (model.name, up.primes[e]))
        return up.prime(e)
    delta = anticanonical_cycle(model)
    if singclass == 'duval':
        if not delta.is_zero:
            raise ModelError('%s: Du Val points have Delta = 0, got %s' % (model.name, delta))
        return fundamental_cycle(model)
    if singclass == 'logterminal':
        if delta.is_zero or any(c >= 1 for c in delta.coeffs):
            raise ModelError('%s: log terminal but not Du Val needs 0 < Delta with coefficients < 1, got %s'
                             % (model.name, delta))
        return roundup(delta)
    if all(c < 1 for c in delta.coeffs):
        raise ModelError('%s: a non log terminal point needs a coefficient of Delta >= 1, got %s'
                         % (model.name, delta))
    return rounddown(delta)


def condition_e(model, Z, d):
    """Whether ``pi^*D + Delta - Z`` is effective"""
    return (mumford_pullback(model, d) + anticanonical_cycle(model) - Z).is_effective


def delta_invariant(model, Z, d=None, cluster=None):
    """
    ``delta(pi, Z)``: 0 when ``Delta - Z`` is effective, ``-(Delta - Z)^2``
    otherwise; with ``d`` also condition (E) for ``d``.
    """
    if Z.lattice != model.upstairs:
        raise PreconditionError('Z must live on %s' % model.upstairs.name)
    if not Z.is_integral or not Z.is_effective or Z.is_zero:
        raise PreconditionError('Z must be a nonzero integral effective divisor, got %s' % Z)
    if not set(Z.support) <= set(model.exceptional):
        raise PreconditionError('Z must be exceptional, got %s' % Z)
    delta_cycle = anticanonical_cycle(model)
    diff = delta_cycle - Z
    delta = Fraction(0) if diff.is_effective else -intersect(diff, diff)
    condE = None if d is None else condition_e(model, Z, d)
    assertion = None
    if cluster is not None:
        assertion = 'pi_* I_Z is contained in I_%s (asserted)' % cluster.name
    logger.debug('%s: Delta = %s, Z = %s, delta = %s', model.name, delta_cycle, Z, delta)
    return DeltaReport(delta_cycle, Z, delta, condE, assertion)
