"""
Divisor lattices of normal surfaces.

An :class:`IntersectionLattice` is a finite list of prime divisors together
with their (Mumford) intersection numbers, which are rational at singular
points. A :class:`Divisor` is a coefficient vector over one lattice. All
arithmetic is exact.
"""
import itertools
import logging
import math
import re
from fractions import Fraction

import networkx as nx

from . import _linalg
from .errors import LatticeMismatchError, ModelError, ParseError, PreconditionError

logger = logging.getLogger(__name__)

NEGDEF = 'negdef'
NEGSEMIDEF = 'negsemidef'

SINGCLASSES = ('smooth', 'duval', 'logterminal', 'nonlt')


def as_rational(value):
    """
    Convert ``value`` into a ``Fraction``.

    Strings must be integers or ``p/q``. Floats are refused, an inexact value
    has no meaning on a lattice.
    """
    if isinstance(value, bool):
        raise ModelError('expected a rational, got %r' % value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r'[+-]?\d+(/\d+)?', text):
            raise ModelError('malformed rational %r' % value)
        result = Fraction(text)
        if text.lstrip('+') != format_rational(result):
            raise ModelError('rational %r is not in normalized p/q form (expected %r)'
                             % (value, format_rational(result)))
        return result
    raise ModelError('expected a rational, got %r' % (value,))


def format_rational(value):
    """``p/q`` with ``q > 0`` and ``gcd(p, q) = 1``; integers without denominator"""
    return str(Fraction(value))


class IntersectionLattice(object):
    """
    A finite set of prime divisors with a symmetric rational intersection matrix.

    :param primes: prime names, unique and nonempty
    :param matrix: n x n rationals, ``matrix[i][j] = C_i . C_j``
    :param canonical: optional ``K . C_i`` for every prime
    :param genus: optional arithmetic genus ``p_a(C_i)`` per prime, ``None`` where unknown
    :param smooth: whether the surface carrying the primes is smooth
    """

    def __init__(self, primes, matrix, canonical=None, genus=None, smooth=False, name=None):
        self.name = name or 'lattice'
        self.primes = tuple(str(p) for p in primes)
        self.matrix = tuple(tuple(as_rational(x) for x in row) for row in matrix)
        self.canonical = None if canonical is None else tuple(as_rational(x) for x in canonical)
        self.genus = None if genus is None else tuple(
            None if g is None else as_rational(g) for g in genus)
        self.smooth = bool(smooth)
        self._index = {p: i for i, p in enumerate(self.primes)}
        self._validate()

    def _validate(self):
        n = len(self.primes)
        if any(not p.strip() for p in self.primes):
            raise ModelError('%s: prime names must be nonempty' % self.name)
        if len(self._index) != n:
            dupes = sorted({p for p in self.primes if self.primes.count(p) > 1})
            raise ModelError('%s: duplicate prime names %s' % (self.name, ', '.join(dupes)))
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ModelError('%s: intersection matrix must be %d x %d' % (self.name, n, n))
        for i, j in itertools.combinations(range(n), 2):
            if self.matrix[i][j] != self.matrix[j][i]:
                raise ModelError('%s: matrix is not symmetric at (%s, %s)'
                                 % (self.name, self.primes[i], self.primes[j]))
        if self.canonical is not None and len(self.canonical) != n:
            raise ModelError('%s: canonical vector must have length %d' % (self.name, n))
        if self.genus is not None:
            if len(self.genus) != n:
                raise ModelError('%s: genus vector must have length %d' % (self.name, n))
            for p, g in zip(self.primes, self.genus):
                if g is not None and g < 0:
                    raise ModelError('%s: negative genus for %s' % (self.name, p))
        if self.smooth and self.canonical is not None and self.genus is not None:
            for i, p in enumerate(self.primes):
                g = self.genus[i]
                if g is not None and self.canonical[i] + self.matrix[i][i] != 2 * g - 2:
                    raise ModelError('%s: adjunction fails for %s: %s + %s != 2*%s - 2'
                                     % (self.name, p, self.canonical[i], self.matrix[i][i], g))

    def __len__(self):
        return len(self.primes)

    def __eq__(self, other):
        if not isinstance(other, IntersectionLattice):
            return NotImplemented
        return self.primes == other.primes and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.primes, self.matrix))

    def __repr__(self):
        return 'IntersectionLattice(<name: %s primes: %s>)' % (self.name, ', '.join(self.primes))

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ModelError('unknown prime %s' % name)

    def pairing(self, i, j):
        return self.matrix[i][j]

    def genus_of(self, i):
        if self.genus is None or self.genus[i] is None:
            raise ModelError('%s: no genus data for %s' % (self.name, self.primes[i]))
        return self.genus[i]

    def canonical_product(self, i):
        """
        ``K . C_i``, taken from the canonical vector or, on a smooth lattice,
        from adjunction ``K . C = 2 p_a(C) - 2 - C^2``.
        """
        if self.canonical is not None:
            return self.canonical[i]
        if not self.smooth:
            raise ModelError('%s: canonical products need either canonical data or a smooth lattice '
                             'with genus data' % self.name)
        return 2 * self.genus_of(i) - 2 - self.matrix[i][i]

    def submatrix(self, indices):
        return [[self.matrix[i][j] for j in indices] for i in indices]

    def zero(self):
        return Divisor(self, [0] * len(self))

    def prime(self, which):
        i = self.index(which) if isinstance(which, str) else which
        coeffs = [0] * len(self)
        coeffs[i] = 1
        return Divisor(self, coeffs)

    def divisor(self, coeffs):
        if isinstance(coeffs, dict):
            vector = [0] * len(self)
            for name, c in coeffs.items():
                vector[self.index(name)] += as_rational(c)
            return Divisor(self, vector)
        return Divisor(self, coeffs)

    def parse(self, text):
        return parse_divisor(text, self)


class Divisor(object):
    """
    An exact rational combination of the primes of one lattice.

    Divisors are immutable values. Arithmetic between divisors of different
    lattices raises :class:`LatticeMismatchError`.
    """
    __slots__ = ('lattice', 'coeffs')

    def __init__(self, lattice, coeffs):
        coeffs = tuple(as_rational(c) for c in coeffs)
        if len(coeffs) != len(lattice):
            raise PreconditionError('divisor has %d coefficients but %s has %d primes'
                                    % (len(coeffs), lattice.name, len(lattice)))
        object.__setattr__(self, 'lattice', lattice)
        object.__setattr__(self, 'coeffs', coeffs)

    def __setattr__(self, key, value):
        raise AttributeError('Divisor is immutable')

    def _check(self, other):
        if not isinstance(other, Divisor):
            raise TypeError('expected a Divisor, got %r' % (other,))
        if self.lattice != other.lattice:
            raise LatticeMismatchError(self.lattice, other.lattice)

    def __add__(self, other):
        self._check(other)
        return Divisor(self.lattice, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return Divisor(self.lattice, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Divisor(self.lattice, [-a for a in self.coeffs])

    def __mul__(self, scalar):
        scalar = as_rational(scalar)
        return Divisor(self.lattice, [scalar * a for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.lattice == other.lattice and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __le__(self, other):
        self._check(other)
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def __lt__(self, other):
        return self <= other and self != other

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __getitem__(self, which):
        i = self.lattice.index(which) if isinstance(which, str) else which
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return 'Divisor(%s)' % format_divisor(self)

    def __str__(self):
        return format_divisor(self)

    @property
    def support(self):
        return tuple(i for i, c in enumerate(self.coeffs) if c != 0)

    @property
    def is_effective(self):
        return all(c >= 0 for c in self.coeffs)

    @property
    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def is_zero(self):
        return not any(self.coeffs)

    @property
    def total(self):
        return sum(self.coeffs, Fraction(0))

    def pairing_with_prime(self, i):
        """``D . C_i``"""
        row = self.lattice.matrix
        return sum((c * row[j][i] for j, c in enumerate(self.coeffs) if c), Fraction(0))

    def pairing_vector(self):
        return tuple(self.pairing_with_prime(i) for i in range(len(self.lattice)))

    def reduced(self):
        """``red(D)``, every nonzero coefficient replaced by 1"""
        return Divisor(self.lattice, [1 if c else 0 for c in self.coeffs])

    def restricted(self, indices):
        keep = set(indices)
        return Divisor(self.lattice, [c if i in keep else 0 for i, c in enumerate(self.coeffs)])

    def dot(self, other):
        return intersect(self, other)

    @property
    def square(self):
        return intersect(self, self)


class Cluster(object):
    """
    A zero-dimensional target on the surface, seen through the lattice.

    ``incidence[i]`` says whether prime ``i`` passes through the support of
    the cluster. The lattice cannot see ideal sheaves, so the incidence is
    whatever the user declares.
    """

    def __init__(self, name, incidence, singclass='smooth', tau_override=None, delta_override=None):
        if singclass not in SINGCLASSES:
            raise PreconditionError('unknown singularity class %r, expected one of %s'
                                    % (singclass, ', '.join(SINGCLASSES)))
        if tau_override is not None and int(tau_override) < 0:
            raise PreconditionError('tau must be non-negative')
        self.name = name
        self.incidence = tuple(bool(x) for x in incidence)
        self.singclass = singclass
        self.tau_override = None if tau_override is None else int(tau_override)
        self.delta_override = None if delta_override is None else as_rational(delta_override)

    def __repr__(self):
        return 'Cluster(<name: %s class: %s>)' % (self.name, self.singclass)

    def require_incidence(self):
        if not any(self.incidence):
            raise PreconditionError('cluster %s has no incidence data: no prime passes through it'
                                    % self.name)

    def meets(self, divisor):
        if len(self.incidence) != len(divisor.lattice):
            raise PreconditionError('cluster %s has incidence for %d primes, lattice has %d'
                                    % (self.name, len(self.incidence), len(divisor.lattice)))
        return any(self.incidence[i] for i in divisor.support)


class Definiteness(object):
    """Result of :func:`definiteness`; truthy when the submatrix is definite"""

    def __init__(self, holds, mode, indices, vacuous=False):
        self.holds = holds
        self.mode = mode
        self.indices = tuple(indices)
        self.vacuous = vacuous

    def __bool__(self):
        return self.holds

    def __repr__(self):
        return 'Definiteness(<%s on %s: %s%s>)' % (self.mode, list(self.indices), self.holds,
                                                  ' (vacuous)' if self.vacuous else '')


def intersect(d1, d2):
    """
    The intersection number ``D1 . D2``.

    >>> l2 = IntersectionLattice(['C1', 'C2'], [['-2/3', '4/3'], ['4/3', '-5/3']])
    >>> intersect(l2.prime('C1'), l2.prime('C2'))
    Fraction(4, 3)
    """
    d1._check(d2)
    m = d1.lattice.matrix
    total = Fraction(0)
    for i in d1.support:
        a = d1.coeffs[i]
        for j in d2.support:
            total += a * m[i][j] * d2.coeffs[j]
    return total


def nef_over(d, b):
    """Whether ``D . C >= 0`` for every prime ``C`` in the support of ``B``"""
    d._check(b)
    if b.is_zero or not b.is_effective:
        raise PreconditionError('nef_over needs a nonzero effective divisor, got %s' % b)
    return all(d.pairing_with_prime(i) >= 0 for i in b.support)


def is_nef(d):
    return all(d.pairing_with_prime(i) >= 0 for i in range(len(d.lattice)))


def definiteness(lattice, indices, mode=NEGDEF):
    """
    Whether the principal submatrix on ``indices`` is negative (semi)definite.

    Negative definiteness is read off the signs of the leading principal
    minors. Semidefiniteness needs every principal minor of order k to have
    sign (-1)^k or vanish. The empty set is vacuously definite.
    """
    indices = list(indices)
    if len(set(indices)) != len(indices) or any(not 0 <= i < len(lattice) for i in indices):
        raise PreconditionError('definiteness needs distinct valid prime indices, got %s' % indices)
    if mode not in (NEGDEF, NEGSEMIDEF):
        raise PreconditionError('unknown definiteness mode %r' % mode)
    if not indices:
        logger.debug('definiteness on the empty set is vacuous')
        return Definiteness(True, mode, indices, vacuous=True)
    rows = lattice.submatrix(indices)
    n = len(indices)
    if mode == NEGDEF:
        for k in range(1, n + 1):
            minor = _linalg.determinant([row[:k] for row in rows[:k]])
            if (-1) ** k * minor <= 0:
                return Definiteness(False, mode, indices)
        return Definiteness(True, mode, indices)
    for k in range(1, n + 1):
        for subset in itertools.combinations(range(n), k):
            if (-1) ** k * _linalg.principal_minor(rows, subset) < 0:
                return Definiteness(False, mode, indices)
    return Definiteness(True, mode, indices)


def roundup(d):
    return Divisor(d.lattice, [math.ceil(c) for c in d.coeffs])


def rounddown(d):
    return Divisor(d.lattice, [math.floor(c) for c in d.coeffs])


def support_graph(lattice, indices):
    """Graph on ``indices`` joining primes with nonzero mutual intersection"""
    graph = nx.Graph()
    graph.add_nodes_from(indices)
    for i, j in itertools.combinations(sorted(indices), 2):
        if lattice.matrix[i][j] != 0:
            graph.add_edge(i, j)
    return graph


def has_connected_support(d):
    support = d.support
    return bool(support) and nx.is_connected(support_graph(d.lattice, support))


def connected_components(d):
    """
    Split ``d`` along the connected components of its support, ordered by
    the smallest prime index of each component.
    """
    graph = support_graph(d.lattice, d.support)
    parts = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
    return [d.restricted(part) for part in parts]


# Divisor expressions

_TOKEN = re.compile(r"""
    (?P<space>\s+)
  | (?P<sign>[+-])
  | (?P<number>\d+(?:\s*/\s*\d+)?)
  | (?P<star>\*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


def _tokenize(text):
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError('unexpected character %r' % text[pos], text, pos)
        if match.lastgroup != 'space':
            yield match.lastgroup, match.group(), pos
        pos = match.end()


def parse_divisor(text, lattice):
    """
    Parse a divisor expression such as ``2C1 + 2C2`` or ``1/3 C3 - C1``.

    Terms are ``[sign] [coefficient [*]] name`` where the coefficient is an
    integer or ``p/q``. ``0`` is the zero divisor. Repeated names add up.
    """
    if not text or not text.strip():
        raise ParseError('empty divisor expression', text or '', 0)
    if text.strip() == '0':
        return lattice.zero()
    coeffs = [Fraction(0)] * len(lattice)
    tokens = list(_tokenize(text))
    pos = 0
    first = True
    while pos < len(tokens):
        kind, value, where = tokens[pos]
        sign = 1
        if kind == 'sign':
            sign = -1 if value == '-' else 1
            pos += 1
        elif not first:
            raise ParseError('expected + or - before %r' % value, text, where)
        if pos >= len(tokens):
            raise ParseError('dangling sign', text, len(text))
        kind, value, where = tokens[pos]
        coef = Fraction(1)
        if kind == 'number':
            num, _, den = value.replace(' ', '').partition('/')
            if den and int(den) == 0:
                raise ParseError('malformed rational %r (zero denominator)' % value, text, where)
            coef = Fraction(int(num), int(den) if den else 1)
            pos += 1
            if pos < len(tokens) and tokens[pos][0] == 'star':
                pos += 1
            if pos >= len(tokens):
                raise ParseError('coefficient %r without a prime' % value, text, len(text))
            kind, value, where = tokens[pos]
        if kind != 'name':
            raise ParseError('expected a prime name, got %r' % value, text, where)
        if value not in lattice._index:
            raise ParseError('unknown prime %s' % value, text, where)
        coeffs[lattice._index[value]] += sign * coef
        pos += 1
        first = False
    return Divisor(lattice, coeffs)


def format_divisor(d):
    """
    The canonical printer: terms in prime order, ``p/q`` coefficients.

    >>> l2 = IntersectionLattice(['C1', 'C2'], [[-1, 1], [1, -1]])
    >>> format_divisor(l2.divisor([1, Fraction(-1, 3)]))
    'C1 - 1/3 C2'
    """
    parts = []
    for i in d.support:
        c = d.coeffs[i]
        magnitude = abs(c)
        term = d.lattice.primes[i] if magnitude == 1 else '%s %s' % (format_rational(magnitude),
                                                                      d.lattice.primes[i])
        if not parts:
            parts.append(term if c > 0 else '-' + term)
        else:
            parts.append(('+ ' if c > 0 else '- ') + term)
    return ' '.join(parts) if parts else '0'


def parse_cluster(text, lattice):
    """
    Parse a cluster spec ``name=x; class=duval; meets=C1 C2; tau=1; delta=2``.

    ``meets`` lists the primes passing through the cluster; ``all`` selects
    every prime.
    """
    fields = {}
    for part in text.split(';'):
        if not part.strip():
            continue
        key, sep, value = part.partition('=')
        if not sep:
            raise ParseError('expected key=value in cluster spec, got %r' % part.strip(),
                             text, text.find(part))
        fields[key.strip()] = value.strip()
    unknown = set(fields) - {'name', 'class', 'meets', 'tau', 'delta'}
    if unknown:
        raise ParseError('unknown cluster field(s) %s' % ', '.join(sorted(unknown)), text, 0)
    meets = fields.get('meets', '')
    if meets == 'all':
        incidence = [True] * len(lattice)
    else:
        incidence = [False] * len(lattice)
        for name in meets.replace(',', ' ').split():
            if name not in lattice._index:
                raise ParseError('unknown prime %s' % name, text, text.find(name))
            incidence[lattice._index[name]] = True
    return Cluster(fields.get('name', 'x'), incidence,
                   singclass=fields.get('class', 'smooth'),
                   tau_override=fields.get('tau'),
                   delta_override=fields.get('delta'))
