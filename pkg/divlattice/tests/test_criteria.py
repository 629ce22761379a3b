from fractions import Fraction

import pytest

from divlattice import corpus
from divlattice.connectivity import enumerate_decompositions
from divlattice.criteria import (ASSERTED, ASSUMED, COMPUTED, FAILS, HOLDS, INCONCLUSIVE, USER, CohomologyInputs,
                                 CriterionReport, bicanonical_check, bpf_check, bpf_member_check, delta_prime,
                                 extension_check, fujita_check, mu, parse_dims, plane_gonality_bound, pluri_check,
                                 q_min, reider_obstructions, very_ample_check)
from divlattice.errors import BudgetExceededError, ParseError, PreconditionError
from divlattice.lattice import NEGSEMIDEF, IntersectionLattice, definiteness, parse_cluster


class TestInvariants:

    @pytest.mark.parametrize('x, d, expected', [
        (1, 2, 9),
        (2, 3, Fraction(25, 2)),
        (5, 5, 20),
        (3, 1, 4),
        (Fraction(1, 3), 1, Fraction(16, 3)),
    ])
    def test_mu(self, x, d, expected):
        assert mu(x, d) == expected

    @pytest.mark.parametrize('d', list(range(1, 21)) + [Fraction(5, 2)])
    def test_mu_on_the_diagonal(self, d):
        assert mu(d, d) == 4 * d

    def test_mu_is_monotone(self):
        grid = [Fraction(k, 3) for k in range(1, 25)]
        for d in grid:
            values = [mu(x, d) for x in grid]
            for x, left, right in zip(grid, values, values[1:]):
                if x < d:
                    assert left > right
                else:
                    assert left == right == 4 * d
        for x in grid:
            values = [mu(x, d) for d in grid]
            assert all(left < right for left, right in zip(values, values[1:]))

    @pytest.mark.parametrize('d', range(1, 11))
    def test_extension_threshold_at_q_one(self, d):
        assert mu(1, d) == (d + 1) ** 2
        at_threshold = extension_check((d + 1) ** 2, d, 1, dim_D=3 * d, h1n=0)
        assert at_threshold.values['mu'] == (d + 1) ** 2
        assert at_threshold.verdict == FAILS
        assert extension_check((d + 1) ** 2 + 1, d, 1, dim_D=3 * d, h1n=0).verdict == HOLDS

    def test_delta_prime_is_at_least_delta(self):
        for q in [Fraction(k, 4) for k in range(1, 21)]:
            for delta in [Fraction(k, 2) for k in range(1, 21)]:
                result = delta_prime(q, delta)
                assert result.value >= delta
                assert result.equals_delta is (q >= delta / 4)

    @pytest.mark.parametrize('x, d', [(0, 1), (1, -1)])
    def test_mu_needs_positive_arguments(self, x, d):
        with pytest.raises(PreconditionError):
            mu(x, d)

    @pytest.mark.parametrize('q, delta, value, equal', [
        (1, 4, 4, True),
        (Fraction(1, 3), 4, Fraction(16, 3), False),
        (2, 4, 4, True),
        (Fraction(1, 2), 8, Fraction(25, 2), False),
    ])
    def test_delta_prime(self, q, delta, value, equal):
        result = delta_prime(q, delta)
        assert result.value == value
        assert result.equals_delta is equal
        assert result.value >= delta


class TestQMin:

    def test_contracted_surface(self):
        L2 = corpus.lattice('L2')
        result = q_min(L2, 4)
        assert result.found
        assert result.value == Fraction(1, 3)
        assert result.witness == L2.parse('C1 + C2')
        assert result.restricted

    def test_with_cluster(self):
        L2 = corpus.lattice('L2')
        result = q_min(L2, 2, cluster=parse_cluster('meets=C2', L2))
        assert result.value == Fraction(1, 3)

    def test_positive_prime(self):
        lattice = IntersectionLattice(['H'], [[1]])
        assert q_min(lattice, 3).value == 1

    def test_nothing_positive(self):
        lattice = IntersectionLattice(['E'], [[-2]])
        result = q_min(lattice, 3)
        assert not result.found
        assert result.witness is None

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            q_min(corpus.lattice('L2'), 4, budget=10)

    @pytest.mark.parametrize('box', [0, -1, True, 2.0])
    def test_bad_box(self, box):
        with pytest.raises(PreconditionError):
            q_min(corpus.lattice('L2'), box)

    def test_cluster_without_incidence(self):
        L2 = corpus.lattice('L2')
        with pytest.raises(PreconditionError):
            q_min(L2, 2, cluster=parse_cluster('name=x', L2))


class TestReport:

    def test_rows(self):
        report = CriterionReport('demo', acknowledged=False)
        report.add('a', 'a holds', HOLDS)
        report.add('b', 'b is assumed', ASSERTED, ASSUMED)
        assert report.asserted == ['b']
        assert report.failed == []
        assert report.finish().verdict == INCONCLUSIVE
        with pytest.raises(PreconditionError):
            report.add('a', 'again', HOLDS)
        with pytest.raises(PreconditionError):
            report.add('c', 'bad status', INCONCLUSIVE)

    def test_acknowledged(self):
        report = CriterionReport('demo', acknowledged=True)
        report.add('b', 'b is assumed', ASSERTED, ASSUMED)
        assert report.finish().verdict == HOLDS

    def test_failure_wins(self):
        report = CriterionReport('demo')
        report.add('a', 'a', FAILS)
        report.add('b', 'b', ASSERTED, ASSUMED)
        assert report.finish().verdict == FAILS

    def test_to_dict(self):
        L2 = corpus.lattice('L2')
        report = reider_obstructions(L2.parse('2C1 + 2C2'), 4, parse_cluster('meets=all', L2))
        data = report.to_dict()
        assert set(data) == {'criterion', 'verdict', 'hypotheses', 'asserted', 'acknowledged', 'witnesses',
                             'conclusions', 'citations', 'notes', 'values'}
        assert data['values']['D^2'] == '4/3'
        assert {'A': 'C1 + C2', 'B': 'C1 + C2', 'product': '1/3'} in data['witnesses']
        assert data['conclusions'][0]['label'] == 'surjective'


class TestCohomologyInputs:

    def test_parse(self):
        dims = parse_dims('dimD=5,h1n=0,tau=3,frob=yes,char=3')
        assert dims.dim_linear_system == 5
        assert dims.h1_nilpotent == 0
        assert dims.tau == 3
        assert dims.frobenius_injective is True
        assert dims.characteristic == 3
        assert dims.positive_characteristic

    def test_defaults(self):
        dims = parse_dims('')
        assert dims.to_dict() == {'dimD': None, 'h1n': None, 'frob': None, 'tau': None, 'char': None}
        assert dims.positive_characteristic
        assert not parse_dims('char=0').positive_characteristic
        assert parse_dims(' frob = no ').frobenius_injective is False

    @pytest.mark.parametrize('text', ['dimD=x', 'foo=1', 'frob=maybe', 'dimD', 'h1n=-1'])
    def test_bad_input(self, text):
        with pytest.raises(ParseError):
            parse_dims(text)

    def test_negative_values(self):
        with pytest.raises(PreconditionError):
            CohomologyInputs(dim_linear_system=-1)


def _mode_one_oracle(d, delta, cluster):
    return [w for w in enumerate_decompositions(d)
            if cluster.meets(w.A) and cluster.meets(w.B) and w.product <= Fraction(delta) / 4]


class TestReider:
    @classmethod
    def setup_class(cls):
        cls.L2 = corpus.lattice('L2')
        cls.L3 = corpus.lattice('L3')

    def test_obstructions_on_contracted_surface(self):
        cluster = parse_cluster('name=x; class=smooth; meets=all', self.L2)
        report = reider_obstructions(self.L2.parse('2C1 + 2C2'), 4, cluster)
        assert [str(w.A) for w in report.witnesses] == ['C2', 'C1 + C2', '2 C1 + C2']
        assert [w.product for w in report.witnesses] == [1, Fraction(1, 3), 1]
        assert report.verdict == FAILS
        assert report.hypothesis('no-obstruction').status == FAILS
        assert set(report.asserted) == {'condition-E', 'cluster-ideal', 'cartier', 'vanishing'}

    def test_cluster_incidence_filters(self):
        cluster = parse_cluster('meets=C1', self.L2)
        report = reider_obstructions(self.L2.parse('2C1 + 2C2'), 4, cluster)
        assert [(str(w.A), str(w.B)) for w in report.witnesses] == [('C1 + C2', 'C1 + C2')]

    def test_no_decompositions(self):
        cluster = parse_cluster('meets=all', self.L2)
        d = self.L2.parse('C1')
        assert reider_obstructions(d, 4, cluster).verdict == INCONCLUSIVE
        report = reider_obstructions(d, 4, cluster, acknowledged=True)
        assert report.verdict == HOLDS
        assert report.witnesses == []

    def test_failed_condition_e_silences_the_theorem(self):
        cluster = parse_cluster('meets=all', self.L2)
        report = reider_obstructions(self.L2.parse('2C1 + 2C2'), 4, cluster, condE=False)
        assert report.hypothesis('condition-E').status == FAILS
        assert report.witnesses
        assert report.verdict == INCONCLUSIVE

    def test_computed_condition_e(self):
        cluster = parse_cluster('meets=all', self.L2)
        report = reider_obstructions(self.L2.parse('C1'), 4, cluster, condE=True, acknowledged=True)
        row = report.hypothesis('condition-E')
        assert (row.status, row.provenance) == (HOLDS, COMPUTED)

    @pytest.mark.parametrize('delta', [0, 2, 4, Fraction(16, 3), 8])
    @pytest.mark.parametrize('lattice_name, meets', [('L2', 'all'), ('L2', 'C1'), ('L3', "C'1"), ('L3', "C'2 C'3")])
    def test_mode_one_matches_brute_force(self, lattice_name, meets, delta):
        lattice = corpus.lattice(lattice_name)
        cluster = parse_cluster('meets=%s' % meets, lattice)
        for d in corpus.effective_divisors(lattice, 8):
            report = reider_obstructions(d, delta, cluster)
            assert report.witnesses == _mode_one_oracle(d, delta, cluster), d

    @pytest.mark.parametrize('name', ['L2', 'L3'])
    def test_mode_two_witnesses_are_filtered(self, name):
        lattice = corpus.lattice(name)
        cluster = parse_cluster('meets=all', lattice)
        for d in corpus.effective_divisors(lattice, 4):
            first = reider_obstructions(d, 4, cluster)
            second = reider_obstructions(d, 4, cluster, mode='II')
            for w in second.witnesses:
                assert w in first.witnesses
                assert definiteness(lattice, w.B.support, NEGSEMIDEF)

    def test_mode_two_threshold_without_q(self):
        L1 = corpus.lattice('L1')
        cluster = parse_cluster('meets=all', L1)
        report = reider_obstructions(L1.parse('F'), 4, cluster, mode='II')
        assert report.hypothesis('nef').status == HOLDS
        assert report.hypothesis('threshold').status == FAILS
        assert report.verdict == INCONCLUSIVE

    def test_mode_two_threshold_asserted_without_q(self):
        lattice = IntersectionLattice(['H'], [[1]], name='plane')
        cluster = parse_cluster('meets=all', lattice)
        report = reider_obstructions(lattice.parse('3H'), 4, cluster, mode='II')
        row = report.hypothesis('threshold')
        assert (row.status, row.provenance) == (ASSERTED, ASSUMED)

    def test_mode_two_with_q(self):
        lattice = IntersectionLattice(['H'], [[1]], name='plane')
        cluster = parse_cluster('meets=all', lattice)
        report = reider_obstructions(lattice.parse('3H'), 4, cluster, mode='II', q_zeta=1,
                                     acknowledged=True)
        assert report.values['delta_prime'] == 4
        assert report.hypothesis('threshold').status == HOLDS
        assert report.witnesses == []
        assert report.verdict == HOLDS

    def test_mode_two_equality_case(self):
        lattice = IntersectionLattice(['H'], [['16/3']], name='equality')
        cluster = parse_cluster('meets=all', lattice)
        report = reider_obstructions(lattice.parse('H'), 4, cluster, mode='II', q_zeta=Fraction(1, 3),
                                     q_restricted=True)
        assert report.values['delta_prime'] == Fraction(16, 3)
        assert report.hypothesis('threshold').status == HOLDS
        assert report.hypothesis('q-box').status == ASSERTED

    def test_mode_two_without_delta(self):
        lattice = IntersectionLattice(['H'], [[1]], name='plane')
        cluster = parse_cluster('meets=all', lattice)
        report = reider_obstructions(lattice.parse('3H'), 0, cluster, mode='II', acknowledged=True)
        assert report.values['delta_prime'] == 0
        assert report.verdict == HOLDS

    def test_not_nef(self):
        cluster = parse_cluster('meets=all', self.L2)
        report = reider_obstructions(self.L2.parse('2C1 + 2C2'), 4, cluster, mode='II', q_zeta=Fraction(1, 3))
        assert report.hypothesis('nef').status == FAILS
        assert report.verdict == INCONCLUSIVE

    @pytest.mark.parametrize('kwargs', [
        {'mode': 'III'},
        {'delta': -1},
    ])
    def test_preconditions(self, kwargs):
        cluster = parse_cluster('meets=all', self.L2)
        args = {'delta': 4, 'mode': 'I'}
        args.update(kwargs)
        with pytest.raises(PreconditionError):
            reider_obstructions(self.L2.parse('2C1 + 2C2'), args['delta'], cluster, mode=args['mode'])

    def test_needs_incidence(self):
        with pytest.raises(PreconditionError):
            reider_obstructions(self.L2.parse('2C1'), 4, parse_cluster('name=x', self.L2))

    def test_needs_integral_divisor(self):
        with pytest.raises(PreconditionError):
            reider_obstructions(self.L2.parse('1/2 C1'), 4, parse_cluster('meets=all', self.L2))


class TestBasePointFree:

    def test_smooth_point(self):
        report = bpf_check(5, 2, 4, 2, 'smooth', parse_dims('dimD=3,h1n=0'))
        assert report.verdict == HOLDS
        assert report.values['delta_x'] == 4
        assert report.values['tau_x'] == 3
        assert report.hypothesis('DB').provenance == USER
        assert report.hypothesis('dim').provenance == USER

    def test_threshold(self):
        report = bpf_check(4, 2, 4, 2, 'smooth', parse_dims('char=0'))
        assert report.failed == ['D^2']
        assert report.verdict == FAILS

    def test_du_val_point(self):
        report = bpf_check(3, 1, 2, 1, 'duval', parse_dims('char=0'))
        assert report.verdict == HOLDS
        assert report.notes == ['dim omitted in characteristic 0']

    def test_dimension_asserted(self):
        report = bpf_check(5, 2, 4, 2, 'smooth')
        assert report.hypothesis('dim').status == ASSERTED
        assert report.verdict == INCONCLUSIVE
        assert bpf_check(5, 2, 4, 2, 'smooth', acknowledged=True).verdict == HOLDS

    def test_dimension_fails(self):
        report = bpf_check(5, 2, 4, 2, 'smooth', parse_dims('dimD=3,h1n=1'))
        assert report.failed == ['dim']

    def test_alpha_too_small(self):
        report = bpf_check(5, 2, 3, 1, 'smooth', parse_dims('char=0'))
        assert set(report.failed) == {'alpha', 'beta'}

    def test_other_classes_need_constants(self):
        with pytest.raises(PreconditionError):
            bpf_check(5, 2, 4, 2, 'logterminal')
        report = bpf_check(5, 2, 4, 2, 'logterminal', parse_dims('char=0'), delta=Fraction(4, 3), tau=1)
        assert report.values['delta_x'] == Fraction(4, 3)
        assert report.verdict == HOLDS

    def test_tau_from_inputs(self):
        report = bpf_check(5, 2, 4, 2, 'nonlt', parse_dims('tau=2,dimD=2,h1n=0'), delta=4)
        assert report.values['tau_x'] == 2
        assert report.verdict == HOLDS

    def test_very_ample(self):
        report = very_ample_check(10, 3, 9, 3, parse_dims('char=0'))
        assert report.verdict == HOLDS
        assert very_ample_check(9, 3, 9, 3, parse_dims('char=0')).failed == ['D^2']
        assert very_ample_check(10, 3, 9, 3, parse_dims('dimD=5,h1n=0')).failed == ['dim']


class TestFujita:

    def test_cube_of_a_generator(self):
        report = fujita_check(3, 1, parse_dims('dimD=3,h1n=0'))
        assert report.verdict == HOLDS
        bpf, va = report.conclusions
        assert (bpf.label, bpf.verdict) == ('bpf', HOLDS)
        assert (va.label, va.verdict) == ('very-ample', FAILS)
        assert set(report.failed) == {'va-range', 'va-numeric', 'va-dim'}

    def test_square_with_large_degree(self):
        assert fujita_check(2, 2).verdict == INCONCLUSIVE
        assert fujita_check(2, 2, acknowledged=True).verdict == HOLDS
        assert fujita_check(2, 1, acknowledged=True).verdict == FAILS

    def test_characteristic_zero(self):
        report = fujita_check(4, 1, parse_dims('char=0'))
        assert report.verdict == HOLDS
        assert [c.verdict for c in report.conclusions] == [HOLDS, HOLDS]

    @pytest.mark.parametrize('m', range(1, 7))
    @pytest.mark.parametrize('Hsq', [1, 2, Fraction(3, 2), 5])
    def test_branch_table_agrees_with_numerics(self, m, Hsq):
        report = fujita_check(m, Hsq)
        assert not any('disagree' in note for note in report.notes)

    @pytest.mark.parametrize('m, Hsq', [(0, 1), (2, Fraction(1, 2)), (True, 1)])
    def test_preconditions(self, m, Hsq):
        with pytest.raises(PreconditionError):
            fujita_check(m, Hsq)


class TestPluri:

    def test_canonical_model(self):
        assert pluri_check(1, 3, 2).verdict == INCONCLUSIVE
        assert pluri_check(1, 3, 2, acknowledged=True).verdict == HOLDS
        assert pluri_check(1, 3, 1, acknowledged=True).verdict == FAILS

    def test_very_ample_case(self):
        report = pluri_check(2, 5, 1, dims=parse_dims('dimD=6,h1n=0'))
        assert report.verdict == HOLDS
        assert report.conclusions[0].label == 'very-ample'

    def test_del_pezzo(self):
        assert pluri_check(3, 1, 1).verdict == FAILS
        report = pluri_check(3, 2, 1)
        assert report.verdict == HOLDS
        assert [c.verdict for c in report.conclusions] == [HOLDS, FAILS]

    def test_index(self):
        with pytest.raises(PreconditionError):
            pluri_check(4, 3, 1)
        with pytest.raises(PreconditionError):
            pluri_check(4, 3, 1, r=1)
        assert pluri_check(4, 3, 1, r=2, dims=parse_dims('dimD=3,h1n=0')).verdict == HOLDS

    def test_klt_del_pezzo_ignores_nilpotent_part(self):
        report = pluri_check(5, 2, 1, r=2, dims=parse_dims('dimD=3'))
        assert report.hypothesis('dim').status == HOLDS
        assert report.verdict == HOLDS

    def test_unknown_case(self):
        with pytest.raises(PreconditionError):
            pluri_check(6, 3, 1)


class TestExtension:

    def test_plain(self):
        assert extension_check(10, 2, 1).verdict == INCONCLUSIVE
        report = extension_check(10, 2, 1, dim_D=7, h1n=0)
        assert report.values['mu'] == 9
        assert report.verdict == HOLDS
        assert extension_check(9, 2, 1, dim_D=7, h1n=0).verdict == FAILS

    def test_base_points(self):
        report = extension_check(9, 2, 1, dim_D=6, h1n=0, variant='base_points')
        assert report.verdict == HOLDS
        assert extension_check(9, 2, 2, dim_D=6, h1n=0, variant='base_points').failed == ['threshold', 'q<d']

    def test_movable(self):
        report = extension_check(9, 2, 1, dim_D=6, h1n=0, variant='movable')
        assert report.verdict == HOLDS
        assert 'pencil' in report.conclusions[0].text
        strict = extension_check(10, 2, 1, dim_D=6, h1n=0, variant='movable')
        assert 'pencil' not in strict.conclusions[0].text

    def test_restricted_q(self):
        report = extension_check(10, 2, 1, dim_D=7, h1n=0, q_restricted=True)
        assert report.asserted == ['q-box']

    def test_dimension(self):
        assert extension_check(10, 2, 1, dim_D=5, h1n=0).failed == ['dim']

    def test_bad_variant(self):
        with pytest.raises(PreconditionError):
            extension_check(10, 2, 1, variant='fibred')

    def test_gonality(self):
        assert plane_gonality_bound(4) == 3
        assert plane_gonality_bound(3) == 2
        with pytest.raises(PreconditionError):
            plane_gonality_bound(2)


class TestBpfMember:
    @classmethod
    def setup_class(cls):
        cls.plane = IntersectionLattice(['H'], [[1]], name='plane')

    def test_smooth_point(self):
        report = bpf_member_check(self.plane.parse('3H'), 'smooth', parse_dims('char=0'), point_singular=True)
        assert report.verdict == HOLDS
        assert report.hypothesis('singular').provenance == USER

    def test_connectivity_fails(self):
        L3 = corpus.lattice('L3')
        report = bpf_member_check(L3.parse("2C'1 + 2C'2 + 2C'3"), 'duval', parse_dims('char=0'))
        assert report.failed == ['connected']
        assert report.witnesses[0].product == 0
        assert report.verdict == FAILS

    def test_positive_characteristic(self):
        d = self.plane.parse('3H')
        dims = parse_dims('frob=yes,char=2')
        nodal = (corpus.graph('nodal_cubic'), corpus.graph('nodal_cubic_transform'))
        smooth = (corpus.graph('smooth_curve'), corpus.graph('nodal_cubic_transform'))
        assert bpf_member_check(d, 'smooth', dims, point_singular=True, graphs=nodal).failed == ['b1']
        assert bpf_member_check(d, 'smooth', dims, point_singular=True, graphs=smooth).verdict == HOLDS
        report = bpf_member_check(d, 'smooth', parse_dims('char=2'), point_singular=True)
        assert set(report.asserted) == {'frobenius', 'b1'}
        assert report.verdict == INCONCLUSIVE

    def test_non_log_terminal(self):
        report = bpf_member_check(self.plane.parse('3H'), 'nonlt', parse_dims('char=0'))
        assert report.asserted == ['rational']
        with pytest.raises(KeyError):
            report.hypothesis('connected')

    def test_log_terminal_needs_delta(self):
        with pytest.raises(PreconditionError):
            bpf_member_check(self.plane.parse('3H'), 'logterminal')
        report = bpf_member_check(self.plane.parse('3H'), 'logterminal', parse_dims('char=0'), delta=Fraction(4, 3))
        assert report.verdict == HOLDS


class TestBicanonical:

    def test_both_conclusions(self):
        report = bicanonical_check(10, 8, 0, genus2_fibration=False)
        assert [c.verdict for c in report.conclusions] == [HOLDS, HOLDS]
        assert report.verdict == HOLDS

    def test_only_base_point_free(self):
        report = bicanonical_check(5, 5, 0, genus2_fibration=False)
        assert report.verdict == HOLDS
        assert report.conclusions[1].verdict == FAILS

    def test_semi_simple_part_lowers_the_bound(self):
        assert bicanonical_check(5, 3, 2).verdict == HOLDS
        assert bicanonical_check(5, 3, 1).verdict == FAILS

    def test_fibration_asserted(self):
        report = bicanonical_check(10, 8, 0)
        assert report.conclusions[1].verdict == INCONCLUSIVE
        assert report.hypothesis('bir-fibration').provenance == ASSUMED

    def test_small_canonical_degree(self):
        assert bicanonical_check(4, 8, 0).verdict == FAILS

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            bicanonical_check(10, 8, -1)
        with pytest.raises(PreconditionError):
            bicanonical_check(10, 8.0, 0)
