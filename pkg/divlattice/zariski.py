"""
Zariski decomposition of effective divisors.

The negative part is found by growing its support: start with the primes of
``Supp D`` that ``D`` meets negatively, make ``D - N`` orthogonal to the
support by an exact negative definite solve, and add the primes that the
new ``P = D - N`` still meets negatively. The support only grows, so this
stops after at most ``n`` rounds.
"""
import logging

from . import _linalg
from .errors import ModelError, PreconditionError, UnsupportedCaseError
from .lattice import NEGDEF, definiteness, has_connected_support, intersect

logger = logging.getLogger(__name__)


class ZariskiPair(object):
    """``D = P + N`` with ``P`` nef on ``Supp D`` and ``N`` its negative part"""

    def __init__(self, D, P, N):
        self.D = D
        self.P = P
        self.N = N

    def __repr__(self):
        return 'ZariskiPair(<P: %s N: %s>)' % (self.P, self.N)

    def violations(self):
        """Names of the decomposition invariants that fail, empty when consistent"""
        problems = []
        if self.P + self.N != self.D:
            problems.append('P + N != D')
        if not self.N.is_effective:
            problems.append('N not effective')
        if any(self.P.pairing_with_prime(i) < 0 for i in self.D.support):
            problems.append('P not nef on Supp D')
        if any(self.P.pairing_with_prime(i) != 0 for i in self.N.support):
            problems.append('P not orthogonal to Supp N')
        if not definiteness(self.D.lattice, self.N.support, NEGDEF):
            problems.append('Supp N not negative definite')
        return problems

    @property
    def positive_square(self):
        return intersect(self.P, self.P)


class IntegralZariskiPair(object):

    def __init__(self, D, P_Z, N_Z):
        self.D = D
        self.P_Z = P_Z
        self.N_Z = N_Z

    def __repr__(self):
        return 'IntegralZariskiPair(<P_Z: %s N_Z: %s>)' % (self.P_Z, self.N_Z)


def _negative_part(d, support):
    """``N`` supported on ``support`` with ``(D - N) . C = 0`` for every ``C`` there"""
    lattice = d.lattice
    rows = lattice.submatrix(support)
    rhs = [d.pairing_with_prime(j) for j in support]
    solution = _linalg.solve(rows, rhs)
    coeffs = [0] * len(lattice)
    for i, x in zip(support, solution):
        coeffs[i] = x
    return lattice.divisor(coeffs)


def zariski_decompose(d, order=None):
    """
    Zariski decomposition of an effective divisor.

    :param order: optional sequence of prime indices; when given the support
        of ``N`` grows by one prime per round, the first negative prime in
        this order. Without it every negative prime is added at once. The
        result does not depend on the choice.
    :return: :class:`ZariskiPair`
    """
    if not d.is_effective:
        raise PreconditionError('zariski_decompose needs an effective divisor, got %s' % d)
    lattice = d.lattice
    candidates = list(d.support) if order is None else [i for i in order if d.coeffs[i] != 0]
    support = []
    N = lattice.zero()
    while True:
        P = d - N
        negative = [i for i in candidates if i not in support and P.pairing_with_prime(i) < 0]
        if not negative:
            break
        support.extend(negative if order is None else negative[:1])
        ordered = sorted(support)
        if not definiteness(lattice, ordered, NEGDEF):
            raise ModelError('%s: candidate negative support {%s} is not negative definite; '
                             'the intersection matrix is inconsistent'
                             % (lattice.name, ', '.join(lattice.primes[i] for i in ordered)))
        N = _negative_part(d, ordered)
        logger.debug('zariski: support {%s}, N = %s', ', '.join(lattice.primes[i] for i in ordered), N)
    pair = ZariskiPair(d, d - N, N)
    problems = pair.violations()
    if problems:
        raise ModelError('%s: Zariski decomposition of %s is inconsistent (%s)'
                         % (lattice.name, d, '; '.join(problems)))
    return pair


def is_big_effective(d):
    """An effective divisor is big when the nef part of its Zariski decomposition has ``P^2 > 0``"""
    if d.is_zero:
        raise PreconditionError('is_big_effective needs a nonzero divisor')
    return zariski_decompose(d).positive_square > 0


def integral_zariski(d):
    """
    ``D = P_Z + N_Z`` for a big effective integral divisor with connected
    support, where the Z-positive part ``P_Z`` is the chain-connected component.
    """
    from .connectivity import chain_connected_component

    if not d.is_integral or not d.is_effective or d.is_zero:
        raise PreconditionError('integral_zariski needs a nonzero integral effective divisor, got %s' % d)
    if not has_connected_support(d):
        raise UnsupportedCaseError('integral Zariski decomposition is only available for big divisors '
                                   'with connected support; %s has disconnected support' % d)
    if not is_big_effective(d):
        raise UnsupportedCaseError('integral Zariski decomposition is only available for big divisors '
                                   'with connected support; %s is not big' % d)
    P_Z = chain_connected_component(d)
    return IntegralZariskiPair(d, P_Z, d - P_Z)
