from fractions import Fraction

import pytest

from formality_utils import (
    Certificate,
    certify,
    Conclusion,
    ContractViolation,
    corpus_path,
    fingerprint,
    NotApplicable,
    parse,
    parse_string
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

DISCONNECTED = '''
name: disconnected
top_degree: 0

[basis]
1: 0
e: 0

[product]
e * e: e

[integral]
e: 1
'''


@pytest.fixture
def description():
    def description(name):
        return parse(corpus_path(name))
    return description


class TestContract:
    def test_unknown_theorem(self, description):
        with pytest.raises(ContractViolation) as e:
            certify(description('cp2'), 'hopf')
        assert str(e.value) == (
            "Unknown theorem 'hopf'; choose from A2, zhou, miller, cavalcanti, "
            "qshape, harr-bm, canonicity."
        )

    @pytest.mark.parametrize('theorem', ('A2', 'zhou'))
    def test_missing_ell(self, description, theorem):
        with pytest.raises(ContractViolation) as e:
            certify(description('cp2'), theorem)
        assert str(e.value) == f"Theorem '{theorem}' needs ell."

    def test_missing_second_metric(self, description):
        with pytest.raises(ContractViolation) as e:
            certify(description('hodge_family'), 'canonicity')
        assert str(e.value) == "Theorem 'canonicity' needs a second metric."


class TestNotApplicable:
    def test_dimension_bound_of_a2(self, description):
        with pytest.raises(NotApplicable) as e:
            certify(description('eleven_dim'), 'A2', ell=4, max_arity=4)
        assert str(e.value) == "'A2' does not apply to eleven_dim: n <= 10"
        assert [h.holds for h in e.value.hypotheses] == [True, False]
        assert e.value.hypotheses[0].requirement == 'r >= 2'

    def test_miller_bound(self, description):
        with pytest.raises(NotApplicable) as e:
            certify(description('eleven_dim'), 'miller', max_arity=3)
        assert str(e.value) == "'miller' does not apply to eleven_dim: n <= 10"

    def test_zhou_needs_single_class_in_degree_r(self, description):
        with pytest.raises(NotApplicable) as e:
            certify(description('eleven_dim'), 'zhou', ell=5, max_arity=4)
        assert [(h.name, h.holds) for h in e.value.hypotheses] == [
            ('connectivity', True),
            ('dimension', True),
            ('betti', False),
        ]

    def test_disconnected_algebra(self):
        with pytest.raises(NotApplicable) as e:
            certify(parse_string(DISCONNECTED), 'miller')
        assert str(e.value) == 'H^0 has dimension 2.'
        assert e.value.hypotheses == []


class TestVanishingTheorems:
    def test_a2_on_eleven_dim(self, description):
        certificate = certify(description('eleven_dim'), 'A2', ell=5, max_arity=5)
        assert (certificate.r, certificate.n, certificate.b_r) == (3, 11, 2)
        assert certificate.ell == 5
        assert certificate.max_arity == 5
        assert [h.requirement for h in certificate.hypotheses] == [
            'r >= 2',
            'n <= 12',
        ]
        assert [c.statement for c in certificate.conclusions] == [
            'm_4 = 0',
            'm_5 = 0',
        ]
        assert certificate.conclusions[0].value == Fraction(0)
        assert certificate.conclusions[0].detail == '0 nonzero entries'
        assert certificate.passed

    @pytest.mark.parametrize(
        ('name', 'theorem', 'ell', 'max_arity', 'statements'),
        (
            ('cp3', 'miller', None, 4, ['m_3 = 0', 'm_4 = 0']),
            ('cp4', 'cavalcanti', None, 4, ['m_3 = 0', 'm_4 = 0']),
            ('s2xs7', 'zhou', 5, 5, ['m_4 = 0', 'm_5 = 0']),
        )
    )
    def test_formal_corpus(
        self, description, name, theorem, ell, max_arity, statements
    ):
        certificate = certify(
            description(name), theorem, ell=ell, max_arity=max_arity
        )
        assert [c.statement for c in certificate.conclusions] == statements
        assert all(h.holds for h in certificate.hypotheses)
        assert certificate.passed

    def test_zhou_hypotheses(self, description):
        certificate = certify(description('s2xs7'), 'zhou', ell=5, max_arity=4)
        assert [h.requirement for h in certificate.hypotheses] == [
            'r >= 2',
            'n <= 9',
            'b_r = 1',
        ]

    def test_passed_needs_every_conclusion(self):
        certificate = Certificate('cp2', 'A2', 2, 4, 1, ell=3)
        assert certificate.passed
        certificate.conclusions = [
            Conclusion('m_3 = 0', True),
            Conclusion('m_4 = 0', False),
        ]
        assert not certificate.passed


class TestQShape:
    def test_corpus_algebra(self, description):
        certificate = certify(description('eleven_dim'), 'qshape')
        assert [c.statement for c in certificate.conclusions] == [
            'degree profile of a small quotient'
        ]
        assert certificate.passed

    def test_acyclic_band(self):
        certificate = certify(parse_string(ACYCLIC_BAND), 'qshape')
        assert certificate.r == 5
        assert [
            (c.statement, c.passed, c.detail) for c in certificate.conclusions
        ] == [
            ('degree 2 respects the connected-band', False, 'dimension 2'),
            ('degree 3 respects the connected-band', False, 'dimension 2'),
        ]
        assert not certificate.passed


class TestHarrisonBianchiMassey:
    def test_eleven_dim(self, description):
        certificate = certify(description('eleven_dim'), 'harr-bm', max_arity=3)
        assert [c.statement for c in certificate.conclusions] == [
            'd Xi = mu_3 on all basis triples',
            'obstruction result verifies',
            'tensor and obstruction agree',
        ]
        assert certificate.conclusions[1].detail == 'unsolvable'
        assert certificate.passed

    def test_cp2_s7(self, description):
        certificate = certify(description('cp2_s7'), 'harr-bm', max_arity=3)
        assert certificate.conclusions[1].detail == 'solvable'
        assert certificate.conclusions[2].detail == (
            'tensor vanishes on bianchi subspace: True'
        )


class TestCanonicity:
    def test_two_metrics(self, description, second_metric):
        certificate = certify(
            description('hodge_family'),
            'canonicity',
            max_arity=6,
            max_p=6,
            second_metric=second_metric,
        )
        assert [c.statement for c in certificate.conclusions] == [
            "mu_3 - mu_3' is a coboundary",
            '(id, phi_2) is a morphism through p = 6',
        ]
        assert certificate.conclusions[0].detail == "mu_3 and mu_3' differ"
        assert certificate.passed


class TestFingerprint:
    def test_hex_digest(self, description):
        value = fingerprint(description('cp2'))
        assert len(value) == 64
        assert set(value) <= set('0123456789abcdef')

    def test_stable_under_reparsing(self, description):
        assert fingerprint(description('cp2')) == fingerprint(description('cp2'))

    def test_depends_on_the_algebra(self, description):
        assert fingerprint(description('cp2')) != fingerprint(description('cp3'))

    def test_carried_by_certificate(self, description):
        certificate = certify(description('cp3'), 'miller', max_arity=3)
        assert certificate.fingerprint == fingerprint(description('cp3'))
        assert certificate.format_version == 1
