"""
Reading model files and writing reports.

Model files are JSON. Rationals are written as integers or normalized
``"p/q"`` strings. A bare name such as ``L3`` or ``elliptic`` that is not an
existing path is looked up in the data directory.
"""
import json
import os

from traitlets import Unicode, default
from traitlets.config import LoggingConfigurable

from .dualgraph import CurveConfigInput
from .errors import DivLatticeError, ModelError
from .lattice import IntersectionLattice, format_rational
from .resolution import ResolutionModel

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')


class ModelLoader(LoggingConfigurable):

    data_dir = Unicode(
        help="Directory searched for bare model names (DIVLATTICE_DATA overrides the bundled corpus)"
    ).tag(config=True)

    @default('data_dir')
    def _data_dir_default(self):
        return os.environ.get('DIVLATTICE_DATA', DATA_DIR)

    def locate(self, ref, base=None):
        """Path of ``ref``: as given, relative to ``base``, or as a corpus name in ``data_dir``"""
        candidates = [ref]
        if base and not os.path.isabs(ref):
            candidates.insert(0, os.path.join(base, ref))
        name = ref if ref.endswith('.json') else ref + '.json'
        candidates.append(os.path.join(self.data_dir, name))
        for path in candidates:
            if os.path.isfile(path):
                return path
        raise ModelError('no model file %r (looked in %s)' % (ref, ', '.join(candidates)))

    def read(self, ref, base=None):
        path = self.locate(ref, base)
        self.log.debug('reading %s', path)
        try:
            with open(path) as f:
                data = json.load(f)
        except ValueError as e:
            raise ModelError('%s is not valid JSON: %s' % (path, e))
        if not isinstance(data, dict):
            raise ModelError('%s must hold a JSON object' % path)
        return data, os.path.dirname(path)

    def _section(self, value, base, build):
        if isinstance(value, str):
            data, where = self.read(value, base)
            return build(data, where)
        if isinstance(value, dict):
            return build(value, base)
        raise ModelError('expected a file reference or an object, got %r' % (value,))

    def load_lattice(self, ref, base=None):
        return self._section(ref, base, lambda data, where: lattice_from_dict(data))

    def load_resolution(self, ref, base=None):
        return self._section(ref, base, self._resolution_from_dict)

    def load_graph(self, ref, base=None):
        return self._section(ref, base, lambda data, where: graph_from_dict(data))

    def load_scenario(self, ref):
        data, where = self.read(ref)
        unknown = set(data) - set(SCENARIO_KEYS)
        if unknown:
            raise ModelError('unknown scenario field(s) %s' % ', '.join(sorted(unknown)))
        for key in ('model', 'resolution'):
            if isinstance(data.get(key), str):
                data[key] = self.locate(data[key], where)
        if data.get('graphs'):
            data['graphs'] = [self.locate(g, where) for g in data['graphs']]
        self.log.info('loaded scenario %s', ref)
        return data

    def _resolution_from_dict(self, data, base):
        _require(data, ('upstairs', 'exceptional'), 'resolution')
        upstairs = self.load_lattice(data['upstairs'], base)
        name = data.get('name')
        if data.get('downstairs') is None:
            model = ResolutionModel.contract(upstairs, data['exceptional'], names=data.get('names'), name=name)
            self.log.debug('derived downstairs lattice of %s by the projection formula', model.name)
            return model
        _require(data, ('transform',), 'resolution')
        downstairs = self.load_lattice(data['downstairs'], base)
        return ResolutionModel(upstairs, downstairs, data['exceptional'], data['transform'], name=name)


SCENARIO_KEYS = ('command', 'model', 'resolution', 'graphs', 'divisor', 'cluster', 'box', 'budget',
                 'dims', 'format', 'acknowledge_asserted', 'x', 'd', 'm', 'alpha', 'beta', 'hsq', 'ksq',
                 'q', 'delta', 'case', 'r', 'p', 'mode', 'variant', 'singclass', 'matrix', 'chi', 'h01s',
                 'bound', 'strict', 'description')


def _require(data, keys, what):
    missing = [k for k in keys if k not in data]
    if missing:
        raise ModelError('%s file is missing %s' % (what, ', '.join(missing)))


def _prime_entries(data):
    """Names and genera from ``primes``, given as names or as ``{name, genus?}`` objects"""
    primes, genus = data['primes'], data.get('genus')
    if not isinstance(primes, (list, tuple)):
        raise ModelError('lattice primes must be a list, got %r' % (primes,))
    if not any(isinstance(p, dict) for p in primes):
        return primes, genus
    if genus is not None:
        raise ModelError('lattice genus is given both per prime and as a list')
    names, genera = [], []
    for p in primes:
        if not isinstance(p, dict) or 'name' not in p:
            raise ModelError('lattice primes must all be {name, genus?} objects, got %r' % (p,))
        unknown = sorted(set(p) - {'name', 'genus'})
        if unknown:
            raise ModelError('unknown prime fields %s' % ', '.join(unknown))
        names.append(p['name'])
        genera.append(p.get('genus'))
    return names, (None if all(g is None for g in genera) else genera)


def lattice_from_dict(data):
    _require(data, ('primes', 'matrix'), 'lattice')
    primes, genus = _prime_entries(data)
    try:
        return IntersectionLattice(primes, data['matrix'], canonical=data.get('canonical'),
                                   genus=genus, smooth=data.get('smooth', False),
                                   name=data.get('name'))
    except DivLatticeError:
        raise
    except (TypeError, ValueError) as e:
        raise ModelError('malformed lattice %s: %s' % (data.get('name', ''), e))


def lattice_to_dict(lattice):
    primes = []
    for i, name in enumerate(lattice.primes):
        entry = {'name': name}
        if lattice.genus is not None and lattice.genus[i] is not None:
            entry['genus'] = format_rational(lattice.genus[i])
        primes.append(entry)
    data = {
        'name': lattice.name,
        'primes': primes,
        'matrix': [[format_rational(x) for x in row] for row in lattice.matrix],
        'smooth': lattice.smooth,
    }
    if lattice.canonical is not None:
        data['canonical'] = [format_rational(x) for x in lattice.canonical]
    return data


def graph_from_dict(data):
    _require(data, ('components',), 'dual graph')
    singularities = []
    for s in data.get('singularities', []):
        if not isinstance(s, dict) or 'name' not in s or 'branches' not in s:
            raise ModelError('singular points need a name and a branches list, got %r' % (s,))
        singularities.append((s['name'], s['branches']))
    return CurveConfigInput(data['components'], singularities, name=data.get('name'))


def render_structured(report):
    return json.dumps(report, sort_keys=True, indent=2) + '\n'


def _text_lines(value, indent):
    pad = '  ' * indent
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                yield '%s%s:' % (pad, key)
                for line in _text_lines(item, indent + 1):
                    yield line
            else:
                yield '%s%s: %s' % (pad, key, _scalar(item))
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item:
                yield '%s-' % pad
                for line in _text_lines(item, indent + 1):
                    yield line
            else:
                yield '%s- %s' % (pad, _scalar(item))
    else:
        yield pad + _scalar(value)


def _scalar(value):
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, (dict, list)):
        return '[]' if isinstance(value, list) else '{}'
    return str(value)


def render_text(report):
    return '\n'.join(_text_lines(report, 0)) + '\n'


def render(report, output_format):
    if output_format == 'structured':
        return render_structured(report)
    return render_text(report)
