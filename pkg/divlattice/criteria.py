"""
Numerical criteria for adjoint linear systems.

Every evaluator returns a :class:`CriterionReport`: the hypotheses it checked,
each marked ``holds``, ``fails`` or ``asserted``, a verdict, and any
decompositions that obstruct the conclusion. Cohomological facts (dimensions
of linear systems, nilpotent parts, Frobenius injectivity) are never computed
here; they come from :class:`CohomologyInputs` and stay marked as user data.
An ``asserted`` hypothesis keeps the verdict at ``inconclusive`` unless the
caller acknowledges it.
"""
import itertools
import logging
import re
from fractions import Fraction

from .connectivity import DEFAULT_BUDGET, is_chain_connected, is_m_connected, iter_decompositions
from .dualgraph import same_betti1
from .errors import BudgetExceededError, ParseError, PreconditionError
from .lattice import NEGSEMIDEF, as_rational, definiteness, format_rational, intersect, is_nef
from .zariski import is_big_effective

logger = logging.getLogger(__name__)

HOLDS = 'holds'
FAILS = 'fails'
ASSERTED = 'asserted'
INCONCLUSIVE = 'inconclusive'

COMPUTED = 'computed'
USER = 'user'
ASSUMED = 'assumed'

# delta_x and tau_x of the tabulated point classes
TABULATED = {
    'smooth': (Fraction(4), 3),
    'duval': (Fraction(2), 1),
}

# worst delta of a length 2 cluster on a Du Val surface
VERY_AMPLE_CLUSTER_DELTA = Fraction(8)


class Hypothesis(object):

    def __init__(self, label, predicate, status, provenance=COMPUTED):
        self.label = label
        self.predicate = predicate
        self.status = status
        self.provenance = provenance

    def __repr__(self):
        return 'Hypothesis(<%s: %s>)' % (self.label, self.status)

    def to_dict(self):
        return {'label': self.label, 'predicate': self.predicate,
                'status': self.status, 'provenance': self.provenance}


class Conclusion(object):

    def __init__(self, label, text, labels, verdict=None):
        self.label = label
        self.text = text
        self.labels = tuple(labels)
        self.verdict = verdict

    def to_dict(self):
        return {'label': self.label, 'text': self.text, 'verdict': self.verdict,
                'hypotheses': list(self.labels)}


def _checked(condition):
    return HOLDS if condition else FAILS


def _combine(rows, acknowledged):
    statuses = [h.status for h in rows]
    if FAILS in statuses:
        return FAILS
    if ASSERTED in statuses and not acknowledged:
        return INCONCLUSIVE
    return HOLDS


class CriterionReport(object):
    """
    :param criterion: name of the evaluator
    :param citations: names of the results the evaluation rests on
    :param acknowledged: whether the caller accepts ``asserted`` hypotheses as true
    """

    def __init__(self, criterion, citations=(), acknowledged=False):
        self.criterion = criterion
        self.citations = list(citations)
        self.acknowledged = bool(acknowledged)
        self.hypotheses = []
        self.witnesses = []
        self.conclusions = []
        self.notes = []
        self.values = {}
        self.verdict = None

    def __repr__(self):
        return 'CriterionReport(<%s: %s>)' % (self.criterion, self.verdict)

    def add(self, label, predicate, status, provenance=COMPUTED):
        if status not in (HOLDS, FAILS, ASSERTED):
            raise PreconditionError('unknown hypothesis status %r' % status)
        if any(h.label == label for h in self.hypotheses):
            raise PreconditionError('duplicate hypothesis label %r' % label)
        row = Hypothesis(label, predicate, status, provenance)
        self.hypotheses.append(row)
        return row

    def hypothesis(self, label):
        for h in self.hypotheses:
            if h.label == label:
                return h
        raise KeyError(label)

    @property
    def asserted(self):
        return [h.label for h in self.hypotheses if h.status == ASSERTED]

    @property
    def failed(self):
        return [h.label for h in self.hypotheses if h.status == FAILS]

    def conclude(self, label, text, labels=None):
        """Attach a conclusion drawn from the hypotheses ``labels`` (all of them by default)"""
        labels = [h.label for h in self.hypotheses] if labels is None else labels
        self.conclusions.append(Conclusion(label, text, labels))

    def finish(self, on_failure=FAILS):
        """
        Settle every conclusion and the verdict. A failing hypothesis gives
        ``on_failure``. With several conclusions the verdict is the first one's.
        """
        if not self.conclusions:
            self.conclude(self.criterion, '', None)
        for c in self.conclusions:
            rows = [self.hypothesis(label) for label in c.labels]
            c.verdict = _combine(rows, self.acknowledged)
            if c.verdict == FAILS:
                c.verdict = on_failure
        self.verdict = self.conclusions[0].verdict
        logger.debug('%s: verdict %s (failed: %s, asserted: %s)', self.criterion, self.verdict,
                     self.failed, self.asserted)
        return self

    def to_dict(self):
        return {
            'criterion': self.criterion,
            'verdict': self.verdict,
            'hypotheses': [h.to_dict() for h in self.hypotheses],
            'asserted': self.asserted,
            'acknowledged': self.acknowledged,
            'witnesses': [{'A': str(w.A), 'B': str(w.B), 'product': format_rational(w.product)}
                          for w in self.witnesses],
            'conclusions': [c.to_dict() for c in self.conclusions],
            'citations': list(self.citations),
            'notes': list(self.notes),
            'values': {k: _plain(v) for k, v in self.values.items()},
        }


def _plain(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    return str(value)


class CohomologyInputs(object):
    """
    User-asserted facts that the lattice cannot see.

    :param dim_linear_system: ``dim |D|``
    :param h1_nilpotent: ``dim H^1(O_X)_n``
    :param frobenius_injective: whether Frobenius is injective on ``H^1(O_X)``
    :param tau: ``tau_x`` for a point outside the tabulated classes
    :param characteristic: of the base field; at 0 the positive characteristic
        conditions are dropped, and ``None`` counts as positive characteristic
    """

    def __init__(self, dim_linear_system=None, h1_nilpotent=None, frobenius_injective=None,
                 tau=None, characteristic=None):
        for name, value in (('dim_linear_system', dim_linear_system), ('h1_nilpotent', h1_nilpotent),
                            ('tau', tau), ('characteristic', characteristic)):
            if value is not None and (isinstance(value, bool) or not isinstance(value, int) or value < 0):
                raise PreconditionError('%s must be a non-negative integer, got %r' % (name, value))
        self.dim_linear_system = dim_linear_system
        self.h1_nilpotent = h1_nilpotent
        self.frobenius_injective = frobenius_injective
        self.tau = tau
        self.characteristic = characteristic

    def __repr__(self):
        return 'CohomologyInputs(<dimD: %s h1n: %s frob: %s tau: %s char: %s>)' % (
            self.dim_linear_system, self.h1_nilpotent, self.frobenius_injective, self.tau,
            self.characteristic)

    @property
    def positive_characteristic(self):
        return self.characteristic != 0

    def to_dict(self):
        return {'dimD': self.dim_linear_system, 'h1n': self.h1_nilpotent,
                'frob': self.frobenius_injective, 'tau': self.tau, 'char': self.characteristic}


_DIMS_KEYS = {'dimD': 'dim_linear_system', 'h1n': 'h1_nilpotent', 'tau': 'tau',
              'frob': 'frobenius_injective', 'char': 'characteristic'}


def parse_dims(text):
    """Parse ``dimD=5,h1n=0,tau=3,frob=yes,char=3`` (every key optional)"""
    values = {}
    if not text or not text.strip():
        return CohomologyInputs()
    for match in re.finditer(r'[^,]+', text):
        item = match.group().strip()
        key, sep, value = item.partition('=')
        key, value = key.strip(), value.strip()
        if not sep or key not in _DIMS_KEYS:
            raise ParseError('expected one of %s as key=value, got %r' % (', '.join(_DIMS_KEYS), item),
                             text, match.start())
        if key == 'frob':
            if value.lower() not in ('yes', 'no', 'true', 'false'):
                raise ParseError('frob must be yes or no, got %r' % value, text, match.start())
            values[_DIMS_KEYS[key]] = value.lower() in ('yes', 'true')
            continue
        if not re.fullmatch(r'\d+', value):
            raise ParseError('%s must be a non-negative integer, got %r' % (key, value), text, match.start())
        values[_DIMS_KEYS[key]] = int(value)
    return CohomologyInputs(**values)


def _dimension_row(report, label, predicate, extras, offset, nilpotent=True):
    """``dim |D| >= [dim H^1(O_X)_n +] offset`` in positive characteristic"""
    if not extras.positive_characteristic:
        report.notes.append('%s omitted in characteristic 0' % label)
        return
    dim, h1n = extras.dim_linear_system, extras.h1_nilpotent
    if dim is None or (nilpotent and h1n is None):
        report.add(label, predicate, ASSERTED, ASSUMED)
        return
    target = offset + (h1n if nilpotent else 0)
    report.add(label, predicate, _checked(dim >= target), USER)


def _positive(name, value):
    value = as_rational(value)
    if value <= 0:
        raise PreconditionError('%s must be positive, got %s' % (name, format_rational(value)))
    return value


def mu(x, d):
    """``mu(x, d) = min(x, d) * (d / min(x, d) + 1)**2``"""
    x = _positive('x', x)
    d = _positive('d', d)
    low = min(x, d)
    return low * (d / low + 1) ** 2


class QMinResult(object):
    """Smallest positive square in a box; ``value`` is ``None`` when none was found"""

    def __init__(self, value, witness, box, restricted=True, cluster=None):
        self.value = value
        self.witness = witness
        self.box = box
        self.restricted = restricted
        self.cluster = cluster

    def __repr__(self):
        return 'QMinResult(<value: %s witness: %s box: %d>)' % (self.value, self.witness, self.box)

    @property
    def found(self):
        return self.value is not None


def q_min(lattice, box, cluster=None, budget=DEFAULT_BUDGET):
    """
    Minimum of ``E^2 > 0`` over effective ``E`` with coefficients in ``[0, box]``,
    only over ``E`` meeting ``cluster`` when one is given. The first minimizer
    in lexicographic order is the witness.
    """
    if isinstance(box, bool) or not isinstance(box, int) or box <= 0:
        raise PreconditionError('box must be a positive integer, got %r' % (box,))
    if cluster is not None:
        cluster.require_incidence()
    required = (box + 1) ** len(lattice)
    if budget is not None and required > budget:
        raise BudgetExceededError(required, budget)
    best, witness = None, None
    for coeffs in itertools.product(range(box + 1), repeat=len(lattice)):
        if not any(coeffs):
            continue
        e = lattice.divisor(coeffs)
        if cluster is not None and not cluster.meets(e):
            continue
        square = intersect(e, e)
        if square > 0 and (best is None or square < best):
            best, witness = square, e
    logger.debug('q_min over box %d on %s: %s at %s', box, lattice.name, best, witness)
    return QMinResult(best, witness, box, cluster=cluster)


class DeltaPrime(object):

    def __init__(self, value, delta, q):
        self.value = value
        self.delta = delta
        self.q = q

    def __repr__(self):
        return 'DeltaPrime(<%s>)' % self.value

    @property
    def equals_delta(self):
        return self.value == self.delta


def delta_prime(q_zeta, delta):
    """``delta' = mu(q, delta / 4)``; equal to ``delta`` exactly when ``q >= delta / 4``"""
    q_zeta = _positive('q_zeta', q_zeta)
    delta = _positive('delta', delta)
    return DeltaPrime(mu(q_zeta, delta / 4), delta, q_zeta)


def _numerically_proportional(d, b, factor):
    return all(d.pairing_with_prime(i) == factor * b.pairing_with_prime(i) for i in range(len(d.lattice)))


def reider_obstructions(d, delta, cluster, mode='I', extras=None, q_zeta=None, q_restricted=False,
                        condE=None, acknowledged=False, budget=DEFAULT_BUDGET):
    """
    Search the decompositions ``D = A + B`` that could stop ``|K_X + D|``
    from separating ``cluster``.

    Mode ``I`` keeps every decomposition with both parts meeting the cluster
    and ``A . B <= delta / 4``. Mode ``II`` asks in addition for ``B``
    negative semi-definite and ``A - B`` big, and gates on ``D`` nef with
    ``D^2 > delta'``. No witness and no failed hypothesis means the
    restriction map is forced to be surjective.

    :param delta: ``delta_zeta(pi, Z)``
    :param q_zeta: ``q_{X, zeta}`` for mode ``II``; ``q_restricted`` marks it box-bounded
    :param condE: computed condition (E) for ``(pi, Z)``, asserted when ``None``
    """
    if mode not in ('I', 'II'):
        raise PreconditionError('reider mode must be I or II, got %r' % (mode,))
    if not d.is_integral or not d.is_effective or d.is_zero:
        raise PreconditionError('reider_obstructions needs a nonzero integral effective divisor, got %s' % d)
    delta = as_rational(delta)
    if delta < 0:
        raise PreconditionError('delta must be non-negative, got %s' % format_rational(delta))
    cluster.require_incidence()
    extras = extras or CohomologyInputs()
    bound = delta / 4

    name = 'reider-%s' % mode
    report = CriterionReport(name, ['reider-type theorem %s' % mode], acknowledged)
    report.values.update({'delta': delta, 'bound': bound, 'D^2': intersect(d, d)})
    if condE is None:
        report.add('condition-E', 'pi^*D + Delta - Z is effective', ASSERTED, ASSUMED)
    else:
        report.add('condition-E', 'pi^*D + Delta - Z is effective', _checked(condE))
    report.add('cluster-ideal', 'pi_* I_Z is contained in I_%s' % cluster.name, ASSERTED, ASSUMED)
    report.add('cartier', 'K_X + D is Cartier along %s' % cluster.name, ASSERTED, ASSUMED)

    equality_case = False
    if mode == 'I':
        report.add('vanishing', 'one of the vanishing conditions on the resolution holds', ASSERTED, ASSUMED)
    else:
        dsq = intersect(d, d)
        report.add('nef', 'D is nef', _checked(is_nef(d)))
        if delta == 0:
            dprime = Fraction(0)
            report.values['delta_prime'] = dprime
            report.add('threshold', "D^2 > delta'", _checked(dsq > 0))
        elif q_zeta is None:
            # delta' >= delta, so D^2 <= delta already settles it
            report.add('threshold', "D^2 > delta' or D^2 = delta' > delta",
                       FAILS if dsq <= delta else ASSERTED, COMPUTED if dsq <= delta else ASSUMED)
        else:
            dprime = delta_prime(q_zeta, delta).value
            report.values.update({'q_zeta': as_rational(q_zeta), 'delta_prime': dprime})
            equality_case = dsq == dprime and dprime > delta
            report.add('threshold', "D^2 > delta' or D^2 = delta' > delta", _checked(dsq > dprime or equality_case))
            if q_restricted:
                report.add('q-box', 'q_{X,%s} is attained inside the search box' % cluster.name, ASSERTED, ASSUMED)
        report.add('vanishing', "dim |D'| >= dim H^1(O_X')_n", ASSERTED, ASSUMED)

    count = 0
    for w in iter_decompositions(d, budget=budget):
        count += 1
        if not (cluster.meets(w.A) and cluster.meets(w.B)):
            continue
        if mode == 'I':
            if w.product <= bound:
                report.witnesses.append(w)
            continue
        q = as_rational(q_zeta) if q_zeta is not None else None
        by_bound = w.product <= bound
        by_equality = (equality_case and intersect(w.B, w.B) == q
                       and _numerically_proportional(d, w.B, delta / (4 * q) + 1))
        if not (by_bound or by_equality):
            continue
        if not definiteness(d.lattice, w.B.support, NEGSEMIDEF):
            continue
        difference = w.A - w.B
        if difference.is_effective and not difference.is_zero:
            if not is_big_effective(difference):
                continue
        else:
            report.notes.append('bigness of A - B = %s is not checkable from lattice data; kept %s + %s'
                                % (difference, w.A, w.B))
        report.witnesses.append(w)
    logger.debug('%s: %d of %d decompositions obstruct', name, len(report.witnesses), count)

    gates = list(report.hypotheses)
    report.add('no-obstruction', 'no decomposition D = A + B passes the filters',
               _checked(not report.witnesses))
    report.conclude('surjective', 'H^0(K_X + D) -> H^0((K_X + D)|_%s) is surjective' % cluster.name)
    report.finish(on_failure=INCONCLUSIVE)
    # a failed gate leaves the theorem silent; witnesses alone defeat the conclusion
    if report.witnesses and FAILS not in [h.status for h in gates]:
        report.verdict = report.conclusions[0].verdict = FAILS
    return report


def _point_constants(singclass, delta=None, tau=None):
    if singclass in TABULATED:
        return TABULATED[singclass]
    if delta is None or tau is None:
        raise PreconditionError('singularity class %s needs explicit delta and tau overrides' % singclass)
    return as_rational(delta), int(tau)


def bpf_check(Dsq, DB_min, alpha, beta, singclass='smooth', extras=None, delta=None, tau=None,
              acknowledged=False):
    """
    Base point freeness of ``|K_X + D|`` at a point ``x`` of class ``singclass``
    for nef ``D`` with ``D^2 = Dsq`` and ``D . B >= DB_min`` for curves through ``x``.
    """
    extras = extras or CohomologyInputs()
    alpha, beta = _positive('alpha', alpha), _positive('beta', beta)
    Dsq, DB_min = as_rational(Dsq), as_rational(DB_min)
    delta_x, tau_x = _point_constants(singclass, delta, extras.tau if tau is None else tau)

    report = CriterionReport('bpf', ['basepoint freeness for nef divisors'], acknowledged)
    report.values.update({'delta_x': delta_x, 'tau_x': tau_x, 'alpha': alpha, 'beta': beta, 'class': singclass})
    report.add('alpha', 'alpha >= delta_x', _checked(alpha >= delta_x))
    report.add('beta', '4 beta (1 - beta/alpha) >= delta_x', _checked(4 * beta * (1 - beta / alpha) >= delta_x))
    report.add('D^2', 'D^2 > alpha', _checked(Dsq > alpha))
    report.add('DB', 'D . B >= beta for every curve B through x', _checked(DB_min >= beta), USER)
    _dimension_row(report, 'dim', 'dim |D| >= dim H^1(O_X)_n + tau_x', extras, tau_x)
    report.conclude('bpf', 'x is not a base point of |K_X + D|')
    return report.finish()


def very_ample_check(Dsq, DB_min, alpha, beta, extras=None, acknowledged=False):
    """Very ampleness of ``|K_X + D|`` on a surface with at most Du Val points"""
    extras = extras or CohomologyInputs()
    alpha, beta = _positive('alpha', alpha), _positive('beta', beta)
    Dsq, DB_min = as_rational(Dsq), as_rational(DB_min)

    report = CriterionReport('very-ample', ['very ampleness on Du Val surfaces'], acknowledged)
    report.values.update({'delta_zeta': VERY_AMPLE_CLUSTER_DELTA, 'alpha': alpha, 'beta': beta})
    report.add('alpha', 'alpha >= 8', _checked(alpha >= 8))
    report.add('beta', 'beta (1 - beta/alpha) >= 2', _checked(beta * (1 - beta / alpha) >= 2))
    report.add('D^2', 'D^2 > alpha', _checked(Dsq > alpha))
    report.add('DB', 'D . B >= beta for every curve B', _checked(DB_min >= beta), USER)
    _dimension_row(report, 'dim', 'dim |D| >= dim H^1(O_X)_n + 6', extras, 6)
    report.conclude('very-ample', '|K_X + D| is very ample')
    return report.finish()


def _require_int(name, value, low):
    if isinstance(value, bool) or not isinstance(value, int) or value < low:
        raise PreconditionError('%s must be an integer >= %d, got %r' % (name, low, value))


def fujita_check(m, Hsq, dims=None, acknowledged=False):
    """
    ``|K_X + mH|`` for ample Cartier ``H`` on a Du Val surface: base point
    free for ``m >= 3`` (or ``m = 2``, ``H^2 > 1``), very ample for ``m >= 4``
    (or ``m = 3``, ``H^2 > 1``). Each branch is also checked against the
    underlying numerical criteria with ``D = mH``, ``D^2 = m^2 H^2`` and
    ``D . B >= m``.
    """
    _require_int('m', m, 1)
    Hsq = as_rational(Hsq)
    if Hsq < 1:
        raise PreconditionError('H^2 must be at least 1 for ample Cartier H, got %s' % format_rational(Hsq))
    dims = dims or CohomologyInputs()
    no_char = CohomologyInputs(characteristic=0)
    Dsq = m * m * Hsq
    bpf = bpf_check(Dsq, m, 4, 2, 'smooth', no_char)
    va = very_ample_check(Dsq, m, 9, 3, no_char)

    report = CriterionReport('fujita', ['basepoint freeness for nef divisors', 'very ampleness on Du Val surfaces'],
                             acknowledged)
    report.values.update({'m': m, 'H^2': Hsq, 'D^2': Dsq})
    report.add('bpf-range', 'm >= 3 or (m = 2 and H^2 > 1)', _checked(m >= 3 or (m == 2 and Hsq > 1)))
    report.add('bpf-numeric', '(alpha, beta) = (4, 2) applies to D = mH', _checked(bpf.verdict == HOLDS))
    _dimension_row(report, 'bpf-dim', 'dim |mH| >= dim H^1(O_X)_n + 3', dims, 3)
    report.add('va-range', 'm >= 4 or (m = 3 and H^2 > 1)', _checked(m >= 4 or (m == 3 and Hsq > 1)))
    report.add('va-numeric', '(alpha, beta) = (9, 3) applies to D = mH', _checked(va.verdict == HOLDS))
    _dimension_row(report, 'va-dim', 'dim |mH| >= dim H^1(O_X)_n + 6', dims, 6)
    for prefix in ('bpf', 'va'):
        if report.hypothesis(prefix + '-range').status != report.hypothesis(prefix + '-numeric').status:
            report.notes.append('%s branch table and numerical check disagree' % prefix)
    labels = [h.label for h in report.hypotheses]
    report.conclude('bpf', '|K_X + mH| is base point free', [x for x in labels if x.startswith('bpf')])
    report.conclude('very-ample', '|K_X + mH| is very ample', [x for x in labels if x.startswith('va')])
    return report.finish()


PLURI_CASES = {
    1: 'K_X ample Cartier',
    2: 'X canonical, K_X ample Cartier',
    3: '-K_X ample Cartier (canonical del Pezzo)',
    4: 'K_X ample with Cartier index r >= 2',
    5: '-K_X ample with Cartier index r >= 2 (klt del Pezzo)',
}


def pluri_check(case, m, Ksq, r=None, dims=None, acknowledged=False):
    """
    Pluri-(anti)canonical systems on a surface with singularities of geometric
    genus at most 3 in positive characteristic, one numbered case per surface type.
    """
    if case not in PLURI_CASES:
        raise PreconditionError('pluri case must be one of 1..5, got %r' % (case,))
    _require_int('m', m, 1)
    if case in (4, 5):
        if r is None:
            raise PreconditionError('pluri case %d needs the Cartier index r' % case)
        _require_int('r', r, 2)
    Ksq = as_rational(Ksq)
    dims = dims or CohomologyInputs()

    report = CriterionReport('pluri-%d' % case, ['pluricanonical systems'], acknowledged)
    report.values.update({'case': case, 'm': m, 'K^2': Ksq})
    report.notes.append('surface type asserted by the caller: %s' % PLURI_CASES[case])
    if case == 1:
        report.add('range', 'm >= 4 or (m = 3 and K^2 > 1)', _checked(m >= 4 or (m == 3 and Ksq > 1)))
        _dimension_row(report, 'dim', 'dim |(m-1)K_X| >= dim H^1(O_X)_n + 3', dims, 3)
        report.conclude('bpf', '|mK_X| is base point free')
    elif case == 2:
        report.add('range', 'm >= 5 or (m = 4 and K^2 > 1)', _checked(m >= 5 or (m == 4 and Ksq > 1)))
        _dimension_row(report, 'dim', 'dim |(m-1)K_X| >= dim H^1(O_X)_n + 6', dims, 6)
        report.conclude('very-ample', '|mK_X| is very ample')
    elif case == 3:
        report.add('bpf-range', 'm >= 2 or (m = 1 and K^2 > 1)', _checked(m >= 2 or (m == 1 and Ksq > 1)))
        report.add('va-range', 'm >= 3 or (m = 2 and K^2 > 1)', _checked(m >= 3 or (m == 2 and Ksq > 1)))
        report.conclude('bpf', '|-mK_X| is base point free', ['bpf-range'])
        report.conclude('very-ample', '|-mK_X| is very ample', ['va-range'])
    elif case == 4:
        report.values['r'] = r
        report.add('range', 'm >= 3', _checked(m >= 3))
        _dimension_row(report, 'dim', 'dim |(mr-1)K_X| >= dim H^1(O_X)_n + 3', dims, 3)
        report.conclude('bpf', '|mrK_X| is base point free')
    else:
        report.values['r'] = r
        report.add('range', 'm >= 2', _checked(m >= 2))
        _dimension_row(report, 'dim', 'dim |-(mr+1)K_X| >= 3', dims, 3, nilpotent=False)
        report.conclude('bpf', '|-mrK_X| is base point free')
    return report.finish()


EXTENSION_VARIANTS = ('plain', 'base_points', 'movable')


def extension_check(Dsq, d, q, dim_D=None, h1n=None, variant='plain', q_restricted=False, acknowledged=False):
    """
    Whether a finite separable ``phi: D -> P^1`` of degree ``d`` extends to the
    surface. ``q`` is ``q_X`` (``q_{X, infinity}`` for the movable variant).
    """
    if variant not in EXTENSION_VARIANTS:
        raise PreconditionError('extension variant must be one of %s, got %r'
                                % (', '.join(EXTENSION_VARIANTS), variant))
    _require_int('d', d, 1)
    Dsq = as_rational(Dsq)
    q = _positive('q', q)
    threshold = mu(q, d)

    report = CriterionReport('extension-%s' % variant, ['extension of morphisms to P^1'], acknowledged)
    report.values.update({'D^2': Dsq, 'd': d, 'q': q, 'mu': threshold})
    report.notes.append('every prime component of D is assumed to have positive self-intersection')
    if variant == 'plain':
        report.add('threshold', 'D^2 > mu(q, d)', _checked(Dsq > threshold))
        text = 'phi extends to a morphism psi: X -> P^1'
    elif variant == 'base_points':
        report.add('threshold', 'D^2 = mu(q, d)', _checked(Dsq == threshold))
        report.add('q<d', 'q < d', _checked(q < d))
        text = 'a linear pencil {F_lambda} with F_lambda^2 = q and no fixed part induces psi with psi|_D = phi'
    else:
        report.notes.append('every prime component of D is assumed to have a non-trivial numerical linear system')
        strict = Dsq > threshold
        report.add('threshold', 'D^2 > mu(q, d) or (D^2 = mu(q, d) and q < d)',
                   _checked(strict or (Dsq == threshold and q < d)))
        if strict:
            text = 'phi extends to a morphism psi: X -> P^1'
        else:
            text = ('phi extends to a morphism, or to a rational map induced by a linear pencil '
                    'with F_lambda^2 = q and no fixed part')
    if q_restricted:
        report.add('q-box', 'q is attained inside the search box', ASSERTED, ASSUMED)
    if dim_D is None or h1n is None:
        report.add('dim', 'dim |D| >= 3d + dim H^1(O_X)_n', ASSERTED, ASSUMED)
    else:
        report.add('dim', 'dim |D| >= 3d + dim H^1(O_X)_n', _checked(dim_D >= 3 * d + h1n), USER)
    report.conclude('extension', text)
    return report.finish()


def plane_gonality_bound(m):
    """Least degree of a finite separable morphism to the line from a plane curve of degree ``m``"""
    _require_int('m', m, 3)
    return m - 1


def bpf_member_check(d, singclass, extras=None, point_singular=None, graphs=None, delta=None,
                     acknowledged=False, budget=DEFAULT_BUDGET):
    """
    Base point freeness of ``|L|`` at ``x`` through a chain-connected member
    ``D`` of ``|L - K_X|`` passing through ``x``.

    :param point_singular: whether ``(D, x)`` is singular, when ``x`` is a smooth point
    :param graphs: ``(config of D, config of its proper transform)`` for the ``b_1`` condition
    :param delta: ``delta_x`` for a log terminal point that is not Du Val
    """
    extras = extras or CohomologyInputs()
    if not d.is_integral or not d.is_effective or d.is_zero:
        raise PreconditionError('bpf_member_check needs a nonzero integral effective divisor, got %s' % d)

    report = CriterionReport('bpf-member', ['basepoint freeness through a chain-connected member'], acknowledged)
    report.values['class'] = singclass
    if singclass == 'nonlt':
        report.add('rational', 'x is at most a rational singularity', ASSERTED, ASSUMED)
    else:
        report.add('rational', 'x is at most a rational singularity', HOLDS)
    report.add('chain-connected', 'D is chain-connected', _checked(is_chain_connected(d).holds))
    if singclass != 'smooth':
        report.add('singular', '(X, x) or (D, x) is singular', HOLDS)
    elif point_singular is None:
        report.add('singular', '(X, x) or (D, x) is singular', ASSERTED, ASSUMED)
    else:
        report.add('singular', '(X, x) or (D, x) is singular', _checked(point_singular), USER)
    if singclass != 'nonlt':
        if singclass in TABULATED:
            delta_x = TABULATED[singclass][0]
        elif delta is None:
            raise PreconditionError('a log terminal point that is not Du Val needs an explicit delta')
        else:
            delta_x = as_rational(delta)
        report.values['delta_x'] = delta_x
        connected = is_m_connected(d, delta_x / 4, strict=True, budget=budget)
        report.add('connected', 'D is strictly delta_x/4-connected', _checked(connected.holds))
        if connected.witness is not None and not connected.holds:
            report.witnesses.append(connected.witness)
    if extras.positive_characteristic:
        if extras.frobenius_injective is None:
            report.add('frobenius', 'Frobenius is injective on H^1(O_X)', ASSERTED, ASSUMED)
        else:
            report.add('frobenius', 'Frobenius is injective on H^1(O_X)', _checked(extras.frobenius_injective), USER)
        if graphs is None:
            report.add('b1', 'b_1 of the dual graphs of D and its proper transform agree', ASSERTED, ASSUMED)
        else:
            report.add('b1', 'b_1 of the dual graphs of D and its proper transform agree',
                       _checked(same_betti1(*graphs)))
    else:
        report.notes.append('positive characteristic conditions omitted in characteristic 0')
    report.conclude('bpf', 'x is not a base point of |L|')
    return report.finish()


def bicanonical_check(Ksq, chi, h01_s, genus2_fibration=None, acknowledged=False):
    """
    ``|2K_X|`` on a smooth minimal surface of general type in positive
    characteristic; ``h01_s`` is the semi-simple part of ``H^1(O_X)``.
    """
    Ksq = as_rational(Ksq)
    _require_int('h01_s', h01_s, 0)
    if isinstance(chi, bool) or not isinstance(chi, int):
        raise PreconditionError('chi must be an integer, got %r' % (chi,))

    report = CriterionReport('bicanonical', ['bicanonical systems'], acknowledged)
    report.values.update({'K^2': Ksq, 'chi': chi, 'h01_s': h01_s})
    report.add('bpf-K^2', 'K^2 > 4', _checked(Ksq > 4))
    report.add('bpf-chi', 'chi(O_X) >= 5 - h01_s', _checked(chi >= 5 - h01_s))
    report.add('bir-K^2', 'K^2 > 9', _checked(Ksq > 9))
    report.add('bir-chi', 'chi(O_X) >= 8 - h01_s', _checked(chi >= 8 - h01_s))
    if genus2_fibration is None:
        report.add('bir-fibration', 'X admits no genus 2 fibration', ASSERTED, ASSUMED)
    else:
        report.add('bir-fibration', 'X admits no genus 2 fibration', _checked(not genus2_fibration), USER)
    report.conclude('bpf', '|2K_X| is base point free', ['bpf-K^2', 'bpf-chi'])
    report.conclude('birational', '|2K_X| defines a birational morphism', ['bir-K^2', 'bir-chi', 'bir-fibration'])
    return report.finish()
