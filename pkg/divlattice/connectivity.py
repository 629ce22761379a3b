"""
Connectivity of effective divisors.

Chain-connectedness is decided by growing a connecting chain greedily: at
each stage some prime with remaining coefficient pairs positively with the
current subdivisor, or the stage ``A`` itself shows that ``-A`` is nef over
``B = D - A``. Either way a certificate comes back.
"""
import itertools
import logging
from fractions import Fraction
from functools import reduce
from operator import mul

from .errors import BudgetExceededError, PreconditionError
from .lattice import connected_components, has_connected_support, intersect, roundup

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 6


class ConnectingChain(object):
    """
    ``start = D_0 < D_1 < ... < D_m = end`` where ``D_i - D_{i-1}`` is the
    prime ``steps[i-1]`` and ``pairings[i-1] = D_{i-1} . C_i > 0``.
    """

    def __init__(self, start, end, steps, pairings):
        self.start = start
        self.end = end
        self.steps = tuple(steps)
        self.pairings = tuple(pairings)

    def __len__(self):
        return len(self.steps)

    def __repr__(self):
        return 'ConnectingChain(<%s -> %s in %d steps>)' % (self.start, self.end, len(self))

    def stages(self):
        current = self.start
        yield current
        for i in self.steps:
            current = current + current.lattice.prime(i)
            yield current

    def names(self):
        return [self.start.lattice.primes[i] for i in self.steps]


class DecompositionWitness(object):
    """An effective decomposition ``D = A + B`` with ``product = A . B``"""

    def __init__(self, A, B, product=None):
        self.A = A
        self.B = B
        self.product = intersect(A, B) if product is None else product

    def __eq__(self, other):
        if not isinstance(other, DecompositionWitness):
            return NotImplemented
        return (self.A, self.B, self.product) == (other.A, other.B, other.product)

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        return 'DecompositionWitness(<A: %s B: %s AB: %s>)' % (self.A, self.B, self.product)


class ConnectivityResult(object):
    """
    Verdict plus certificate. ``chain`` backs a positive chain-connectedness
    verdict, ``witness`` a negative one (or the minimizing decomposition for
    m-connectedness).
    """

    def __init__(self, holds, chain=None, witness=None, vacuous=False):
        self.holds = holds
        self.chain = chain
        self.witness = witness
        self.vacuous = vacuous

    def __bool__(self):
        return self.holds

    def __repr__(self):
        return 'ConnectivityResult(<holds: %s chain: %r witness: %r>)' % (
            self.holds, self.chain, self.witness)


class ZPositivityResult(object):
    """
    ``zariski`` is the Zariski decomposition used; on failure ``obstruction``
    is an effective negative definite ``B`` with ``B - D`` nef over ``B``.
    """

    def __init__(self, holds, zariski, chain=None, obstruction=None):
        self.holds = holds
        self.zariski = zariski
        self.chain = chain
        self.obstruction = obstruction

    def __bool__(self):
        return self.holds


def _require_integral_effective(d, what):
    if not d.is_integral or not d.is_effective:
        raise PreconditionError('%s needs an integral effective divisor, got %s' % (what, d))


def _require_nonzero(d, what):
    if d.is_zero:
        raise PreconditionError('%s needs a nonzero divisor' % what)


def connecting_chain(d0, d):
    """
    Grow a connecting chain from ``d0`` to ``d``.

    While the current stage is below ``d``, append the smallest-index prime
    with remaining coefficient that pairs positively with the stage. Returns
    a :class:`ConnectivityResult` holding the chain, or on stagnation the
    decomposition ``(A, B) = (stage, d - stage)`` with ``-A`` nef over ``B``.
    """
    d0._check(d)
    _require_integral_effective(d0, 'connecting_chain')
    _require_integral_effective(d, 'connecting_chain')
    _require_nonzero(d0, 'connecting_chain')
    if not d0 <= d:
        raise PreconditionError('connecting_chain needs D0 <= D, got %s and %s' % (d0, d))

    lattice = d.lattice
    current = d0
    pairing = list(d0.pairing_vector())
    steps, pairings = [], []
    while current != d:
        remaining = d - current
        for i in remaining.support:
            if pairing[i] > 0:
                break
        else:
            logger.debug('connecting chain from %s stalls at %s', d0, current)
            witness = DecompositionWitness(current, remaining)
            return ConnectivityResult(False, witness=witness)
        steps.append(i)
        pairings.append(pairing[i])
        current = current + lattice.prime(i)
        for j in range(len(lattice)):
            pairing[j] += lattice.matrix[i][j]
        logger.debug('chain step %d: added %s (pairing %s)', len(steps), lattice.primes[i], pairings[-1])
    return ConnectivityResult(True, chain=ConnectingChain(d0, d, steps, pairings))


def is_chain_connected(d):
    """
    Decide chain-connectedness by a connecting chain from the first prime
    component of ``d``. A stalled chain is a decomposition defeating it.
    """
    _require_integral_effective(d, 'is_chain_connected')
    _require_nonzero(d, 'is_chain_connected')
    start = d.lattice.prime(d.support[0])
    return connecting_chain(start, d)


def decomposition_count(d):
    """Number of effective decompositions ``D = A + B`` with ``A, B > 0``"""
    return reduce(mul, (int(c) + 1 for c in d.coeffs), 1) - 2


def iter_decompositions(d, bound=None, budget=DEFAULT_BUDGET):
    """
    Yield every effective decomposition ``D = A + B``, ``A, B > 0``, in
    lexicographic order of ``A``. With ``bound`` only those with ``A . B <= bound``.
    """
    _require_integral_effective(d, 'enumerate_decompositions')
    required = decomposition_count(d) + 2
    if budget is not None and required > budget:
        raise BudgetExceededError(required, budget)
    bound = None if bound is None else Fraction(bound)
    lattice = d.lattice
    top = [int(c) for c in d.coeffs]
    d_pairing = d.pairing_vector()
    for a in itertools.product(*(range(c + 1) for c in top)):
        if not any(a) or list(a) == top:
            continue
        A = lattice.divisor(a)
        # A.B = A.D - A^2
        product = sum((x * d_pairing[i] for i, x in enumerate(a) if x), Fraction(0)) - intersect(A, A)
        if bound is not None and product > bound:
            continue
        yield DecompositionWitness(A, d - A, product)


def enumerate_decompositions(d, bound=None, budget=DEFAULT_BUDGET):
    witnesses = list(iter_decompositions(d, bound=bound, budget=budget))
    logger.debug('enumerated %d decompositions of %s (bound %s)', len(witnesses), d, bound)
    return witnesses


def is_m_connected(d, m, strict=False, budget=DEFAULT_BUDGET):
    """
    Whether ``A . B >= m`` (``> m`` when ``strict``) for every effective
    decomposition, by exhaustive enumeration. The witness is the first
    decomposition attaining the minimum of ``A . B``.
    """
    _require_integral_effective(d, 'is_m_connected')
    m = Fraction(m)
    if d.total < 2:
        return ConnectivityResult(True, vacuous=True)
    best = None
    for w in iter_decompositions(d, budget=budget):
        if best is None or w.product < best.product:
            best = w
    holds = best.product > m if strict else best.product >= m
    return ConnectivityResult(holds, witness=best)


def is_numerically_connected(d, budget=DEFAULT_BUDGET):
    return is_m_connected(d, 0, strict=True, budget=budget)


def chain_connected_component(d):
    """
    The greatest chain-connected subdivisor ``D_c`` with full support.

    Grown greedily from ``red(D)`` by appending primes that pair positively
    with the current stage; the stage where this stalls is ``D_c``.
    """
    _require_integral_effective(d, 'chain_connected_component')
    _require_nonzero(d, 'chain_connected_component')
    if not has_connected_support(d):
        raise PreconditionError('%s has disconnected support; take the chain-connected component of '
                                'each connected component (chain_connected_components)' % d)
    result = connecting_chain(d.reduced(), d)
    if result.holds:
        return d
    component = result.witness.A
    logger.debug('chain-connected component of %s is %s', d, component)
    return component


def chain_connected_components(d):
    """``D_c`` of every connected component of ``Supp D``"""
    return [chain_connected_component(part) for part in connected_components(d)]


def is_z_positive(d):
    """
    Decide Z-positivity of an effective divisor through a connecting chain
    from the round-up of the nef part of its Zariski decomposition.
    """
    from .zariski import zariski_decompose

    _require_integral_effective(d, 'is_z_positive')
    _require_nonzero(d, 'is_z_positive')
    pair = zariski_decompose(d)
    if pair.P.is_zero:
        return ZPositivityResult(False, pair, obstruction=d)
    result = connecting_chain(roundup(pair.P), d)
    if result.holds:
        return ZPositivityResult(True, pair, chain=result.chain)
    return ZPositivityResult(False, pair, obstruction=result.witness.B)
