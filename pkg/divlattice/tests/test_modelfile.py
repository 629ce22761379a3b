import json
import os
from fractions import Fraction

import pytest

from divlattice import corpus
from divlattice.errors import ModelError
from divlattice.modelfile import (DATA_DIR, ModelLoader, graph_from_dict, lattice_from_dict, lattice_to_dict,
                                  render_structured, render_text)


@pytest.fixture
def loader(monkeypatch):
    monkeypatch.delenv('DIVLATTICE_DATA', raising=False)
    return ModelLoader()


def test_default_data_dir(loader):
    assert loader.data_dir == DATA_DIR
    assert loader.locate('L3') == os.path.join(DATA_DIR, 'L3.json')
    assert loader.locate('L3.json') == os.path.join(DATA_DIR, 'L3.json')


def test_data_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv('DIVLATTICE_DATA', str(tmp_path))
    (tmp_path / 'line.json').write_text(json.dumps({'primes': ['H'], 'matrix': [[1]]}))
    loader = ModelLoader()
    assert loader.data_dir == str(tmp_path)
    assert loader.load_lattice('line').matrix == ((1,),)
    with pytest.raises(ModelError):
        loader.locate('L3')


def test_relative_reference(loader, tmp_path):
    (tmp_path / 'up.json').write_text(json.dumps(
        {'name': 'up', 'primes': ["C'", 'E'], 'matrix': [[-1, 1], [1, -2]], 'genus': [0, 0], 'smooth': True}))
    (tmp_path / 'model.json').write_text(json.dumps(
        {'name': 'model', 'upstairs': 'up.json', 'exceptional': ['E'], 'names': {"C'": 'C'}}))
    model = loader.load_resolution(str(tmp_path / 'model.json'))
    assert model.name == 'model'
    assert model.downstairs.primes == ('C',)
    assert model.downstairs.matrix == ((Fraction(-1, 2),),)


def test_explicit_downstairs_matches_derived(loader):
    derived = loader.load_resolution('elliptic')
    data = {
        'upstairs': 'L3',
        'downstairs': 'L2',
        'exceptional': ["C'3"],
        'transform': {'C1': "C'1", 'C2': "C'2"},
    }
    explicit = loader.load_resolution(data, DATA_DIR)
    assert explicit.downstairs == derived.downstairs


def test_inline_lattice(loader):
    lattice = loader.load_lattice({'primes': ['A', 'B'], 'matrix': [[-2, 1], [1, -2]]})
    assert lattice.primes == ('A', 'B')


@pytest.mark.parametrize('content', ['{"primes": ["A"], ', '[1, 2]'])
def test_invalid_json(loader, tmp_path, content):
    path = tmp_path / 'broken.json'
    path.write_text(content)
    with pytest.raises(ModelError):
        loader.load_lattice(str(path))


def test_missing_file(loader):
    with pytest.raises(ModelError) as info:
        loader.load_lattice('no_such_lattice')
    assert 'no_such_lattice' in str(info.value)


@pytest.mark.parametrize('data', [
    {'primes': ['A']},
    {'primes': ['A'], 'matrix': [[1, 2]]},
    {'primes': ['A', 'A'], 'matrix': [[1, 0], [0, 1]]},
    {'primes': ['A'], 'matrix': [[0.5]]},
])
def test_malformed_lattices(data):
    with pytest.raises(ModelError):
        lattice_from_dict(data)


def test_resolution_needs_fields(loader):
    with pytest.raises(ModelError):
        loader.load_resolution({'upstairs': 'L3'})
    with pytest.raises(ModelError):
        loader.load_resolution({'upstairs': 'L3', 'downstairs': 'L2', 'exceptional': ["C'3"]}, DATA_DIR)
    with pytest.raises(ModelError):
        loader.load_resolution(42)


def test_lattice_dict_round_trip():
    for lattice in corpus.all_lattices():
        assert lattice_from_dict(lattice_to_dict(lattice)) == lattice


def test_lattice_to_dict_writes_rationals():
    data = lattice_to_dict(corpus.lattice('L2'))
    assert data['primes'] == [{'name': 'C1'}, {'name': 'C2'}]
    assert data['matrix'] == [['-2/3', '4/3'], ['4/3', '-5/3']]
    assert data['smooth'] is False
    assert lattice_to_dict(corpus.lattice('L3'))['primes'][2] == {'name': "C'3", 'genus': '0'}


def test_prime_objects(loader, tmp_path):
    (tmp_path / 'cubic.json').write_text(json.dumps({
        'name': 'cubic',
        'primes': [{'name': 'C1', 'genus': '1'}, {'name': 'C2'}],
        'matrix': [['-2/3', '4/3'], ['4/3', '-5/3']],
        'smooth': False,
    }))
    lattice = loader.load_lattice(str(tmp_path / 'cubic.json'))
    assert lattice.primes == ('C1', 'C2')
    assert lattice.genus == (1, None)
    assert lattice.parse('C1').coeffs == (1, 0)
    assert lattice == corpus.lattice('L2')
    data = lattice_to_dict(lattice)
    assert data['primes'] == [{'name': 'C1', 'genus': '1'}, {'name': 'C2'}]
    assert lattice_from_dict(json.loads(json.dumps(data))).genus == (1, None)


@pytest.mark.parametrize('primes, genus', [
    ([{'name': 'A'}, 'B'], None),
    ([{'genus': 0}, {'name': 'B'}], None),
    ([{'name': 'A', 'colour': 'red'}, {'name': 'B'}], None),
    ([{'name': 'A', 'genus': 0}, {'name': 'B'}], [0, 0]),
    ('AB', None),
])
def test_malformed_prime_objects(primes, genus):
    data = {'primes': primes, 'matrix': [[-1, 0], [0, -1]]}
    if genus is not None:
        data['genus'] = genus
    with pytest.raises(ModelError):
        lattice_from_dict(data)


def test_graph_from_dict():
    config = graph_from_dict({'name': 'g', 'components': ['A'], 'singularities': [{'name': 'x', 'branches': ['A', 'A']}]})
    assert config.name == 'g'
    with pytest.raises(ModelError):
        graph_from_dict({'components': ['A'], 'singularities': [['x', ['A', 'A']]]})
    with pytest.raises(ModelError):
        graph_from_dict({'singularities': []})


def test_scenario(loader):
    data = loader.load_scenario('scenario_reider')
    assert data['command'] == 'reider'
    assert data['model'] == os.path.join(DATA_DIR, 'L2.json')


def test_scenario_rejects_unknown_fields(loader, tmp_path):
    path = tmp_path / 'odd.json'
    path.write_text(json.dumps({'command': 'mu', 'colour': 'red'}))
    with pytest.raises(ModelError) as info:
        loader.load_scenario(str(path))
    assert 'colour' in str(info.value)


class TestRender:

    report = {'command': 'demo', 'holds': True, 'witness': None, 'values': {'b': '1/2', 'a': 3},
              'steps': ['C1', 'C2'], 'empty': []}

    def test_text(self):
        assert render_text(self.report).splitlines() == [
            'command: demo',
            'empty: []',
            'holds: yes',
            'steps:',
            '  - C1',
            '  - C2',
            'values:',
            '  a: 3',
            '  b: 1/2',
            'witness: -',
        ]

    def test_nested_lists(self):
        lines = render_text({'rows': [{'label': 'x', 'status': False}]}).splitlines()
        assert lines == ['rows:', '  -', '    label: x', '    status: no']

    def test_structured(self):
        text = render_structured(self.report)
        assert text.endswith('\n')
        assert json.loads(text) == self.report
        assert render_structured(self.report) == text
