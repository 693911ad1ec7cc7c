from fractions import Fraction

import pytest

from formality_utils import (
    construct_hodge_from_metric,
    ContractViolation,
    ensure_valid_hodge,
    GradedLinearMap,
    harmonic_projector,
    hodge_family_check,
    HodgeHomotopy,
    InvalidHodgeHomotopy,
    load,
    MetricError,
    MetricIncompatible,
    MetricNotPositiveDefinite,
    parse_string,
    qshape_check,
    validate_hodge
)

ACYCLIC_BAND = '''
name: acyclic_band
top_degree: 5

[basis]
1: 0
u: 2
p: 2
v: 3
q: 3
om: 5

[differential]
u: v
p: q

[product]
u * q: om
p * v: -om

[integral]
om: 1
'''


def vector(algebra, **coefficients):
    return {
        algebra.space.index(name): Fraction(value)
        for name, value in coefficients.items()
    }


class TestHodgeHomotopy:
    def test_wrong_shift(self, cp2):
        with pytest.raises(ContractViolation):
            HodgeHomotopy(cp2, GradedLinearMap.zero(cp2.space, cp2.space, 0))

    def test_trivial_homotopy_of_formal_algebra(self, cp2):
        hodge = HodgeHomotopy.trivial(cp2)
        assert hodge.validate().ok
        assert harmonic_projector(hodge) == GradedLinearMap.identity(cp2.space)

    def test_trivial_homotopy_needs_zero_differential(self, eleven_dim):
        hodge = HodgeHomotopy.trivial(eleven_dim)
        report = hodge.validate()
        assert [v.arguments for v in report.by_axiom('d-dminus-d')] == [('beta',)]
        with pytest.raises(InvalidHodgeHomotopy):
            ensure_valid_hodge(hodge)

    def test_dminus_inverts_differential(self, eleven_dim_hodge, eleven_dim):
        assert eleven_dim_hodge.dminus(vector(eleven_dim, xy=1)) == vector(
            eleven_dim, beta=1
        )

    def test_splitting(self, eleven_dim_hodge):
        splitting = eleven_dim_hodge.splitting()
        assert splitting[3] == (2, 0, 0)
        assert splitting[5] == (0, 0, 1)
        assert splitting[6] == (0, 1, 0)
        assert splitting[11] == (1, 0, 0)

    def test_harmonic_vectors_represent_their_classes(self, eleven_dim_hodge):
        class_map = eleven_dim_hodge.class_map
        assert class_map == GradedLinearMap.identity(eleven_dim_hodge.ring.space)
        assert eleven_dim_hodge.inverse_class_map == class_map

    def test_harmonic_projection_kills_exact_forms(self, eleven_dim_hodge):
        algebra = eleven_dim_hodge.base
        assert eleven_dim_hodge.harmonic_projection(vector(algebra, xy=1)) == {}


class TestValidateHodge:
    def test_metric_homotopy(self, eleven_dim, eleven_dim_hodge):
        assert validate_hodge(eleven_dim, eleven_dim_hodge.dminus).ok

    def test_scaled_homotopy(self, eleven_dim):
        space = eleven_dim.space
        dminus = GradedLinearMap(space, space, -1, {
            space.index('xy'): {space.index('beta'): Fraction(2)}
        })
        report = validate_hodge(eleven_dim, dminus)
        assert not report.ok
        assert [str(v) for v in report.by_axiom('d-dminus-d')] == [
            'd-dminus-d(beta): d d^- d - d = xy'
        ]
        assert [str(v) for v in report.by_axiom('dminus-d-dminus')] == [
            'dminus-d-dminus(xy): d^- d d^- - d^- = 2*beta'
        ]


class TestConstructFromMetric:
    def test_identity_metric(self, hodge_family):
        hodge = construct_hodge_from_metric(hodge_family, {})
        assert hodge.validate().ok
        assert hodge.dminus(vector(hodge_family, a3=1)) == vector(hodge_family, b=1)

    def test_coupled_metric(self, hodge_family, second_metric):
        hodge = construct_hodge_from_metric(hodge_family, second_metric)
        assert hodge.dminus(vector(hodge_family, a3=1)) == vector(
            hodge_family, b=1, p=Fraction(-1, 2)
        )
        assert hodge.dminus(vector(hodge_family, h=1)) == vector(
            hodge_family, b=Fraction(-1, 2), p=Fraction(1, 4)
        )

    def test_metric_coupling_one_degree_only(self, hodge_family):
        with pytest.raises(MetricIncompatible) as e:
            construct_hodge_from_metric(
                hodge_family, {5: [[1, Fraction(1, 2)], [Fraction(1, 2), 1]]}
            )
        assert e.value.report.by_axiom('orthogonality-harmonic')
        assert str(e.value).startswith(
            'Metric is incompatible with the Poincare pairing: '
        )

    @pytest.mark.parametrize(
        ('metric', 'error', 'message'),
        (
            (
                {5: [[1, 0]]},
                MetricError,
                'Gram matrix in degree 5 must be 2x2.'
            ),
            (
                {5: [[1, 1], [0, 1]]},
                MetricError,
                'Gram matrix in degree 5 is not symmetric.'
            ),
            (
                {5: [[1, 2], [2, 1]]},
                MetricNotPositiveDefinite,
                'Gram matrix in degree 5 is not positive definite.'
            ),
            (
                {12: [[1]]},
                MetricError,
                'Metric given in unknown degree(s) [12].'
            ),
        )
    )
    def test_invalid_metric(self, hodge_family, metric, error, message):
        with pytest.raises(error) as e:
            construct_hodge_from_metric(hodge_family, metric)
        assert str(e.value) == message


class TestQShape:
    @pytest.mark.parametrize(
        ('name', 'r'),
        (
            ('cp2', 2),
            ('seven_dim', 2),
            ('eleven_dim', 3),
            ('hodge_family', 2),
        )
    )
    def test_corpus_has_small_shape(self, corpus, name, r):
        report = qshape_check(construct_hodge_from_metric(corpus(name)), r)
        assert report.ok
        assert report.first_violation is None

    def test_harmonic_and_acyclic_dimensions(self, eleven_dim_hodge):
        report = qshape_check(eleven_dim_hodge, 3)
        assert report.harmonic_dims == (1, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 1)
        assert report.acyclic_dims == (0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0)

    def test_r_above_connectivity(self, eleven_dim_hodge):
        with pytest.raises(ContractViolation) as e:
            qshape_check(eleven_dim_hodge, 4)
        assert str(e.value) == 'r = 4 is inconsistent with connectivity 3.'

    def test_acyclic_part_in_connected_band(self):
        algebra = load(parse_string(ACYCLIC_BAND))
        report = qshape_check(construct_hodge_from_metric(algebra), 5)
        assert not report.ok
        assert report.violations == [
            (2, 'connected-band', 'dimension 2'),
            (3, 'connected-band', 'dimension 2'),
        ]
        assert report.first_violation == 2


class TestHodgeFamily:
    def test_two_metrics_give_two_tables(self, hodge_family, second_metric):
        assert len(hodge_family_check(hodge_family, [{}, second_metric])) == 2

    def test_same_metric_twice(self, hodge_family):
        assert len(hodge_family_check(hodge_family, [{}, {}])) == 1
