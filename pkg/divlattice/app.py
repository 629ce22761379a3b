"""
The ``divlattice`` command line front end.

    divlattice connectivity --model L3 --divisor "2C'1 + 2C'2 + 2C'3"
    divlattice pullback --resolution elliptic --divisor C1 --format structured
    divlattice --scenario scenario_reider

Reports go to stdout, logs to stderr. A criterion that fails is a computed
result and exits 0; input errors exit 2 and an exhausted enumeration budget
exits 3, after one ``error: CODE: message`` line on stderr.
"""
import os
import sys
from copy import deepcopy

from traitlets import Bool, Enum, Integer, List, TraitError, Unicode
from traitlets.config import Application
from traitlets.config.loader import ConfigError, ConfigFileNotFound

from . import connectivity, criteria, dualgraph, frobenius, resolution, zariski
from ._version import __version__
from .errors import DivLatticeError, PreconditionError
from .lattice import SINGCLASSES, as_rational, format_rational, intersect, parse_cluster
from .modelfile import ModelLoader, lattice_to_dict, render

COMMANDS = (
    'check-model', 'intersect', 'zariski', 'integral-zariski', 'connectivity', 'component', 'components',
    'zpositive', 'pullback', 'pushforward', 'anticanonical', 'fundcycle', 'delta', 'dualgraph-b1', 'mu',
    'qmin', 'reider', 'bpf', 'very-ample', 'fujita', 'pluri', 'extension', 'gonality', 'frobenius',
    'bpf-member', 'bicanonical',
)

_NUMERIC = ('x', 'd', 'm', 'alpha', 'beta', 'dsq', 'db', 'hsq', 'ksq', 'q', 'delta', 'case', 'r', 'p',
            'chi', 'h01s', 'bound')


def _witness(w):
    if w is None:
        return None
    return {'A': str(w.A), 'B': str(w.B), 'product': format_rational(w.product)}


def _chain(c):
    if c is None:
        return None
    return {'start': str(c.start), 'steps': c.names(), 'pairings': [format_rational(x) for x in c.pairings]}


def _settings_error(e):
    return PreconditionError('invalid settings: %s' % ' '.join(str(e).split()))


class DivLatticeApp(Application):

    _startup_error = None

    name = 'divlattice'
    version = __version__
    description = 'Exact intersection theory on divisor lattices of normal surfaces.'
    examples = '\n'.join(__doc__.strip().splitlines()[2:5])

    command = Unicode('', help='Command to run, one of: %s' % ', '.join(COMMANDS)).tag(config=True)
    model = Unicode('', help='Lattice file or bundled lattice name').tag(config=True)
    resolution = Unicode('', help='Resolution file or bundled resolution name').tag(config=True)
    graphs = List(Unicode(), help='Dual graph files (curve configurations)').tag(config=True)
    divisor = List(Unicode(), help='Divisor expressions, e.g. "2C1 + 1/3 C2"').tag(config=True)
    z = Unicode('', help='Explicit exceptional cycle Z for the delta command').tag(config=True)
    cluster = Unicode('', help='Cluster spec "name=x; class=duval; meets=C1 C2; tau=1; delta=2"').tag(config=True)
    box = Integer(0, help='Per-prime coefficient bound for the q search').tag(config=True)
    budget = Integer(connectivity.DEFAULT_BUDGET, help='Maximum number of enumerated cases').tag(config=True)
    dims = Unicode('', help='Asserted cohomology data "dimD=..,h1n=..,tau=..,frob=yes,char=p"').tag(config=True)
    output_format = Enum(('text', 'structured'), default_value='text', help='Report format').tag(config=True)
    acknowledge_asserted = Bool(False, help='Accept asserted hypotheses as true').tag(config=True)
    strict = Bool(False, help='Strict m-connectedness').tag(config=True)
    scenario = Unicode('', help='Scenario file bundling the inputs of one command').tag(config=True)
    config_file = Unicode('', help='Python config file').tag(config=True)

    x = Unicode('').tag(config=True)
    d = Unicode('').tag(config=True)
    m = Unicode('').tag(config=True)
    alpha = Unicode('').tag(config=True)
    beta = Unicode('').tag(config=True)
    dsq = Unicode('', help='D^2').tag(config=True)
    db = Unicode('', help='Lower bound of D . B over the relevant curves B').tag(config=True)
    hsq = Unicode('', help='H^2').tag(config=True)
    ksq = Unicode('', help='K^2').tag(config=True)
    q = Unicode('').tag(config=True)
    delta = Unicode('').tag(config=True)
    case = Unicode('').tag(config=True)
    r = Unicode('', help='Cartier index').tag(config=True)
    p = Unicode('', help='Characteristic of the prime field').tag(config=True)
    chi = Unicode('', help='chi(O_X)').tag(config=True)
    h01s = Unicode('', help='dim H^1(O_X)_s').tag(config=True)
    bound = Unicode('', help='m for m-connectedness').tag(config=True)
    mode = Enum(('I', 'II'), default_value='I', help='Reider-type theorem variant').tag(config=True)
    variant = Enum(criteria.EXTENSION_VARIANTS, default_value='plain').tag(config=True)
    singclass = Unicode('', help='Point class: %s' % ', '.join(SINGCLASSES)).tag(config=True)
    matrix = Unicode('', help='Frobenius matrix rows "1 0; 0 1"').tag(config=True)
    point_singular = Unicode('', help='yes/no: (D, x) is singular').tag(config=True)
    fibration = Unicode('', help='yes/no: X admits a genus 2 fibration').tag(config=True)

    aliases = {
        'model': 'DivLatticeApp.model',
        'resolution': 'DivLatticeApp.resolution',
        'graph': 'DivLatticeApp.graphs',
        'divisor': 'DivLatticeApp.divisor',
        'Z': 'DivLatticeApp.z',
        'cluster': 'DivLatticeApp.cluster',
        'box': 'DivLatticeApp.box',
        'budget': 'DivLatticeApp.budget',
        'dims': 'DivLatticeApp.dims',
        'format': 'DivLatticeApp.output_format',
        'scenario': 'DivLatticeApp.scenario',
        'config': 'DivLatticeApp.config_file',
        'data-dir': 'ModelLoader.data_dir',
        'log-level': 'Application.log_level',
        'mode': 'DivLatticeApp.mode',
        'variant': 'DivLatticeApp.variant',
        'class': 'DivLatticeApp.singclass',
        'matrix': 'DivLatticeApp.matrix',
        'point-singular': 'DivLatticeApp.point_singular',
        'fibration': 'DivLatticeApp.fibration',
    }
    aliases.update({name: 'DivLatticeApp.%s' % name for name in _NUMERIC})

    flags = {
        'acknowledge-asserted': ({'DivLatticeApp': {'acknowledge_asserted': True}},
                                 'Treat asserted hypotheses as true and record it in the report'),
        'strict': ({'DivLatticeApp': {'strict': True}}, 'Strict m-connectedness'),
        'debug': ({'Application': {'log_level': 10}}, 'Log every iteration step'),
    }

    classes = [ModelLoader]

    def initialize(self, argv=None):
        self._startup_error = None
        try:
            self._load_settings(argv)
        except (TraitError, ConfigError) as e:
            self._startup_error = _settings_error(e)
        if self.extra_args:
            self.command = self.extra_args[0]
        self.loader = ModelLoader(parent=self)

    def _load_settings(self, argv):
        self.parse_command_line(argv)
        cli_config = deepcopy(self.config)
        self._cli_keys = set(cli_config.DivLatticeApp.keys()) if 'DivLatticeApp' in cli_config else set()
        if self.config_file:
            if not os.path.isfile(self.config_file):
                raise ConfigFileNotFound('config file %s not found' % self.config_file)
            self.load_config_file(os.path.basename(self.config_file),
                                  path=os.path.dirname(os.path.abspath(self.config_file)))
        else:
            self.load_config_file('divlattice_config.py', path=os.getcwd())
        self.update_config(cli_config)

    def _apply_scenario(self):
        data = self.loader.load_scenario(self.scenario)
        for key, value in sorted(data.items()):
            if key == 'description':
                continue
            trait = 'output_format' if key == 'format' else key
            if trait in self._cli_keys or (trait == 'command' and self.extra_args):
                continue
            if trait in ('divisor', 'graphs') and isinstance(value, str):
                value = [value]
            elif trait not in ('divisor', 'graphs', 'box', 'budget', 'acknowledge_asserted', 'strict') \
                    and not isinstance(value, str):
                value = str(value)
            setattr(self, trait, value)
        self.log.debug('scenario %s applied: %s', self.scenario, ', '.join(sorted(data)))

    # argument helpers

    def _required(self, name):
        value = getattr(self, name)
        if value in ('', None, []):
            raise PreconditionError('%s needs --%s' % (self.command, name))
        return value

    def _rational(self, name, default=None):
        if getattr(self, name) == '' and default is not None:
            return default
        return as_rational(self._required(name))

    def _int(self, name, default=None):
        value = self._rational(name, default)
        if value.denominator != 1:
            raise PreconditionError('--%s must be an integer, got %s' % (name, format_rational(value)))
        return int(value)

    def _yes_no(self, name):
        value = getattr(self, name).strip().lower()
        if not value:
            return None
        if value not in ('yes', 'no', 'true', 'false'):
            raise PreconditionError('--%s must be yes or no, got %r' % (name, value))
        return value in ('yes', 'true')

    def _lattice(self):
        if self.model:
            return self.loader.load_lattice(self.model)
        if self.resolution:
            return self._resolution().downstairs
        raise PreconditionError('%s needs --model' % self.command)

    def _resolution(self):
        if not hasattr(self, '_model_cache'):
            self._model_cache = self.loader.load_resolution(self._required('resolution'))
        return self._model_cache

    def _divisors(self, lattice, count=None):
        exprs = self._required('divisor')
        if count is not None and len(exprs) < count:
            raise PreconditionError('%s needs %d --divisor expressions' % (self.command, count))
        return [lattice.parse(e) for e in exprs]

    def _cluster(self, lattice, required=True):
        if not self.cluster:
            if required:
                raise PreconditionError('%s needs --cluster' % self.command)
            return None
        return parse_cluster(self.cluster, lattice)

    def _extras(self):
        return criteria.parse_dims(self.dims)

    # commands

    def cmd_check_model(self):
        if self.resolution:
            model = self._resolution()
            return {'resolution': model.name, 'upstairs': lattice_to_dict(model.upstairs),
                    'downstairs': lattice_to_dict(model.downstairs),
                    'exceptional': [model.upstairs.primes[i] for i in model.exceptional],
                    'pullbacks': {model.downstairs.primes[i]:
                                  str(resolution.mumford_pullback(model, model.downstairs.prime(i)))
                                  for i in range(len(model.downstairs))},
                    'valid': True}
        return {'lattice': lattice_to_dict(self._lattice()), 'valid': True}

    def cmd_intersect(self):
        ds = self._divisors(self._lattice())
        first, second = ds[0], ds[1] if len(ds) > 1 else ds[0]
        return {'D1': str(first), 'D2': str(second), 'product': format_rational(intersect(first, second))}

    def cmd_zariski(self):
        pair = zariski.zariski_decompose(self._divisors(self._lattice())[0])
        return {'D': str(pair.D), 'P': str(pair.P), 'N': str(pair.N),
                'P^2': format_rational(pair.positive_square)}

    def cmd_integral_zariski(self):
        pair = zariski.integral_zariski(self._divisors(self._lattice())[0])
        return {'D': str(pair.D), 'P_Z': str(pair.P_Z), 'N_Z': str(pair.N_Z)}

    def cmd_connectivity(self):
        d = self._divisors(self._lattice())[0]
        chain = connectivity.is_chain_connected(d)
        numeric = connectivity.is_numerically_connected(d, budget=self.budget)
        report = {'D': str(d), 'chain_connected': chain.holds, 'chain': _chain(chain.chain),
                  'chain_witness': _witness(chain.witness),
                  'numerically_connected': numeric.holds, 'numerical_witness': _witness(numeric.witness),
                  'vacuous': numeric.vacuous}
        if self.bound:
            m = self._rational('bound')
            result = connectivity.is_m_connected(d, m, strict=self.strict, budget=self.budget)
            report['m_connected'] = {'m': format_rational(m), 'strict': self.strict, 'holds': result.holds,
                                     'witness': _witness(result.witness)}
        return report

    def cmd_component(self):
        d = self._divisors(self._lattice())[0]
        return {'D': str(d), 'component': str(connectivity.chain_connected_component(d))}

    def cmd_components(self):
        d = self._divisors(self._lattice())[0]
        return {'D': str(d), 'components': [str(c) for c in connectivity.chain_connected_components(d)]}

    def cmd_zpositive(self):
        d = self._divisors(self._lattice())[0]
        result = connectivity.is_z_positive(d)
        return {'D': str(d), 'z_positive': result.holds, 'P': str(result.zariski.P), 'N': str(result.zariski.N),
                'chain': _chain(result.chain),
                'obstruction': None if result.obstruction is None else str(result.obstruction)}

    def cmd_pullback(self):
        model = self._resolution()
        d = self._divisors(model.downstairs)[0]
        return {'D': str(d), 'pullback': str(resolution.mumford_pullback(model, d))}

    def cmd_pushforward(self):
        model = self._resolution()
        d = self._divisors(model.upstairs)[0]
        return {'D': str(d), 'pushforward': str(resolution.pushforward(model, d))}

    def cmd_anticanonical(self):
        return {'Delta': str(resolution.anticanonical_cycle(self._resolution()))}

    def cmd_fundcycle(self):
        return {'Z': str(resolution.fundamental_cycle(self._resolution()))}

    def _singclass(self, cluster=None):
        if self.singclass:
            return self.singclass
        if cluster is not None:
            return cluster.singclass
        raise PreconditionError('%s needs --class' % self.command)

    def _delta_report(self, model, cluster=None, d=None):
        if self.z:
            Z = model.upstairs.parse(self.z)
        else:
            Z = resolution.default_Z(model, self._singclass(cluster))
        return resolution.delta_invariant(model, Z, d=d, cluster=cluster)

    def cmd_delta(self):
        model = self._resolution()
        cluster = self._cluster(model.downstairs, required=False)
        d = self._divisors(model.downstairs)[0] if self.divisor else None
        result = self._delta_report(model, cluster, d)
        report = {'Delta': str(result.Delta), 'Z': str(result.Z), 'delta': format_rational(result.delta),
                  'condE': result.condE, 'cluster_assertion': result.cluster_assertion}
        singclass = self.singclass or (cluster.singclass if cluster else None)
        if cluster is not None and cluster.tau_override is not None:
            report['tau'] = cluster.tau_override
        elif singclass in criteria.TABULATED:
            report['tau'] = criteria.TABULATED[singclass][1]
        return report

    def cmd_dualgraph_b1(self):
        configs = [self.loader.load_graph(g) for g in self._required('graphs')]
        report = {'graphs': []}
        for config in configs:
            graph = dualgraph.build_graph(config)
            report['graphs'].append({'name': config.name, 'vertices': len(graph.vertices),
                                     'edges': len(graph.edges), 'b1': dualgraph.betti1(graph)})
        if len(configs) == 2:
            report['equal'] = report['graphs'][0]['b1'] == report['graphs'][1]['b1']
        return report

    def cmd_mu(self):
        return {'x': format_rational(self._rational('x')), 'd': format_rational(self._rational('d')),
                'mu': format_rational(criteria.mu(self._rational('x'), self._rational('d')))}

    def _q_min(self, lattice, cluster):
        if self.box <= 0:
            raise PreconditionError('%s needs --box' % self.command)
        return criteria.q_min(lattice, self.box, cluster=cluster, budget=self.budget)

    def cmd_qmin(self):
        lattice = self._lattice()
        result = self._q_min(lattice, self._cluster(lattice, required=False))
        return {'value': None if result.value is None else format_rational(result.value),
                'witness': None if result.witness is None else str(result.witness),
                'found': result.found, 'box': result.box, 'restricted': result.restricted}

    def cmd_reider(self):
        lattice = self._lattice()
        d = self._divisors(lattice)[0]
        cluster = self._cluster(lattice)
        condE = None
        if self.delta:
            delta = self._rational('delta')
        elif cluster.delta_override is not None:
            delta = cluster.delta_override
        elif self.resolution:
            result = self._delta_report(self._resolution(), cluster, d)
            delta, condE = result.delta, result.condE
        else:
            raise PreconditionError('reider needs --delta, a cluster delta or --resolution')
        q, restricted = None, False
        if self.mode == 'II':
            if self.q:
                q = self._rational('q')
            elif self.box > 0:
                found = self._q_min(lattice, cluster)
                q, restricted = found.value, found.found
        return criteria.reider_obstructions(d, delta, cluster, mode=self.mode, extras=self._extras(), q_zeta=q,
                                            q_restricted=restricted, condE=condE,
                                            acknowledged=self.acknowledge_asserted, budget=self.budget).to_dict()

    def cmd_bpf(self):
        extras = self._extras()
        return criteria.bpf_check(self._rational('dsq'), self._rational('db'), self._rational('alpha'),
                                  self._rational('beta'), self.singclass or 'smooth', extras,
                                  delta=self._rational('delta') if self.delta else None,
                                  acknowledged=self.acknowledge_asserted).to_dict()

    def cmd_very_ample(self):
        return criteria.very_ample_check(self._rational('dsq'), self._rational('db'), self._rational('alpha'),
                                         self._rational('beta'), self._extras(),
                                         acknowledged=self.acknowledge_asserted).to_dict()

    def cmd_fujita(self):
        return criteria.fujita_check(self._int('m'), self._rational('hsq'), self._extras(),
                                     acknowledged=self.acknowledge_asserted).to_dict()

    def cmd_pluri(self):
        r = self._int('r') if self.r else None
        return criteria.pluri_check(self._int('case'), self._int('m'), self._rational('ksq'), r=r,
                                    dims=self._extras(), acknowledged=self.acknowledge_asserted).to_dict()

    def cmd_extension(self):
        extras = self._extras()
        return criteria.extension_check(self._rational('dsq'), self._int('d'), self._rational('q'),
                                        dim_D=extras.dim_linear_system, h1n=extras.h1_nilpotent,
                                        variant=self.variant, acknowledged=self.acknowledge_asserted).to_dict()

    def cmd_gonality(self):
        return {'m': self._int('m'), 'degree': criteria.plane_gonality_bound(self._int('m'))}

    def _frobenius(self):
        matrix = frobenius.parse_matrix(self._required('matrix'))
        return frobenius.frobenius_split(matrix, self._int('p'))

    def cmd_frobenius(self):
        split = self._frobenius()
        return {'p': split.p, 'dim_s': split.dim_s, 'dim_n': split.dim_n}

    def cmd_bpf_member(self):
        lattice = self._lattice()
        d = self._divisors(lattice)[0]
        graphs = None
        if self.graphs:
            if len(self.graphs) != 2:
                raise PreconditionError('bpf-member compares exactly two dual graphs, got %d' % len(self.graphs))
            graphs = [self.loader.load_graph(g) for g in self.graphs]
        return criteria.bpf_member_check(d, self._singclass(), self._extras(),
                                         point_singular=self._yes_no('point_singular'), graphs=graphs,
                                         delta=self._rational('delta') if self.delta else None,
                                         acknowledged=self.acknowledge_asserted, budget=self.budget).to_dict()

    def cmd_bicanonical(self):
        h01s = self._int('h01s') if self.h01s else self._frobenius().dim_s
        return criteria.bicanonical_check(self._rational('ksq'), self._int('chi'), h01s,
                                          genus2_fibration=self._yes_no('fibration'),
                                          acknowledged=self.acknowledge_asserted).to_dict()

    def run_command(self):
        if self.scenario:
            self._apply_scenario()
        if self.command not in COMMANDS:
            raise PreconditionError('unknown command %r, expected one of %s'
                                    % (self.command, ', '.join(COMMANDS)))
        self.log.info('running %s', self.command)
        report = getattr(self, 'cmd_' + self.command.replace('-', '_'))()
        report['command'] = self.command
        return report

    def execute(self):
        """Run the command; returns ``(exit status, stdout text, stderr line)``"""
        try:
            if self._startup_error is not None:
                raise self._startup_error
            try:
                report = self.run_command()
            except TraitError as e:
                raise _settings_error(e)
        except DivLatticeError as e:
            self.log.error('%s failed: %s', self.command or 'divlattice', e)
            return e.exit_status, '', e.line()
        return 0, render(report, self.output_format), ''

    def start(self):
        status, out, err = self.execute()
        if out:
            sys.stdout.write(out)
        if err:
            sys.stderr.write(err + '\n')
        self.exit(status)


main = DivLatticeApp.launch_instance
