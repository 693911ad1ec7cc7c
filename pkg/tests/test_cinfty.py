import pytest

from formality_utils import (
    bar_sign,
    check_morphism,
    check_shuffle_vanishing,
    check_stasheff,
    check_unitality,
    CInftyMorphism,
    ContractViolation,
    corpus_names,
    gauge_by_phi2,
    HochschildCochain,
    InvalidCochain,
    MinimalCInftyStructure,
    MultilinearMap,
    solve_formality_obstruction
)


def keyed(space, *names):
    return tuple(space.index(name) for name in names)


@pytest.fixture
def flipped(eleven_dim_structure):
    space = eleven_dim_structure.space
    table = dict(eleven_dim_structure.m(3).items())
    key = keyed(space, 'x', 'x', 'y')
    table[key] = {j: -value for j, value in table[key].items()}
    return eleven_dim_structure.replace(
        m3=MultilinearMap(3, space, space, -1, table)
    )


@pytest.fixture
def witness(cp2_s7_structure):
    mu3 = HochschildCochain.from_structure(cp2_s7_structure)
    return solve_formality_obstruction(mu3).witness.map


class TestBarSign:
    @pytest.mark.parametrize(
        ('degrees', 'expected'),
        (
            ((3,), 1),
            ((3, 3), 1),
            ((2, 2), -1),
            ((1, 1, 1), -1),
        )
    )
    def test_sign(self, degrees, expected):
        assert bar_sign(degrees) == expected


class TestStasheff:
    def test_transferred_structure(self, eleven_dim_structure):
        assert check_stasheff(eleven_dim_structure, 4).ok

    def test_algebra_with_differential(self, eleven_dim):
        structure = MinimalCInftyStructure.from_pdgca(eleven_dim)
        assert check_stasheff(structure, 3).ok

    def test_sign_flip_breaks_arity_four(self, flipped):
        assert check_stasheff(flipped, 3).ok
        report = check_stasheff(flipped, 4)
        assert not report.ok
        assert ('x', 'x', 'y', 'y') in [v.arguments for v in report]
        assert all(v.detail.startswith('p=4: ') for v in report)

    def test_beyond_computed_arity(self, cp2_s7_structure):
        with pytest.raises(ContractViolation) as e:
            check_stasheff(cp2_s7_structure, 4)
        assert str(e.value) == (
            'Cannot check through p = 4; operations are known through arity 3.'
        )


class TestShuffleVanishing:
    @pytest.mark.parametrize(
        'fixture',
        ('eleven_dim_structure', 'cp2_s7_structure')
    )
    def test_transferred_structures(self, request, fixture):
        structure = request.getfixturevalue(fixture)
        assert check_shuffle_vanishing(structure, 3).ok

    def test_sign_flip(self, flipped):
        report = check_shuffle_vanishing(flipped, 3)
        assert report.axioms == ['shuffle']
        assert ('x', 'x', 'y') in [v.arguments for v in report]


class TestUnitality:
    def test_transferred_structure(self, cp2_s7_structure):
        assert check_unitality(cp2_s7_structure).ok

    def test_m3_on_the_unit(self, cp2_s7_structure):
        space = cp2_s7_structure.space
        broken = cp2_s7_structure.replace(m3=MultilinearMap(
            3, space, space, -1,
            {keyed(space, '1', 'a2', 'a2'): {space.index('ab'): 1}}
        ))
        report = check_unitality(broken)
        assert [str(v) for v in report] == ['unitality(1, a2, a2): m_3 = ab']


class TestCorpusStructures:
    @pytest.mark.parametrize('name', corpus_names())
    def test_axioms_through_arity_six(self, corpus_cohomology_structure, name):
        structure = corpus_cohomology_structure(name, 6)
        assert check_stasheff(structure, 6).ok
        assert check_shuffle_vanishing(structure, 6).ok
        assert check_unitality(structure).ok


class TestGauge:
    def test_witness_kills_m3(self, cp2_s7_structure, witness):
        gauged = gauge_by_phi2(cp2_s7_structure, witness, verify=True)
        assert gauged.m(2) == cp2_s7_structure.m(2)
        assert gauged.m(3).is_zero()

    def test_gauge_is_a_morphism(self, cp2_s7_structure, witness):
        gauged = gauge_by_phi2(cp2_s7_structure, witness)
        morphism = CInftyMorphism(
            cp2_s7_structure,
            gauged,
            CInftyMorphism.identity(cp2_s7_structure, witness).components
        )
        assert check_morphism(morphism, 3).ok

    def test_identity_morphism(self, eleven_dim_structure):
        morphism = CInftyMorphism.identity(eleven_dim_structure)
        assert check_morphism(morphism, 4).ok

    def test_wrong_target_is_detected(self, eleven_dim_structure, flipped):
        morphism = CInftyMorphism(
            eleven_dim_structure,
            flipped,
            CInftyMorphism.identity(eleven_dim_structure).components
        )
        report = check_morphism(morphism, 3)
        assert report.axioms == ['morphism']
        assert all(v.detail.startswith('p=3: ') for v in report)

    def test_zero_phi2(self, cp2_s7_structure):
        space = cp2_s7_structure.space
        gauged = gauge_by_phi2(
            cp2_s7_structure, MultilinearMap.zero(2, space, space, -1)
        )
        assert gauged.m(3) == cp2_s7_structure.m(3)

    def test_wrong_bidegree(self, cp2_s7_structure):
        space = cp2_s7_structure.space
        with pytest.raises(ContractViolation) as e:
            gauge_by_phi2(cp2_s7_structure, MultilinearMap.zero(2, space, space, 0))
        assert str(e.value) == 'phi_2 must have arity 2 and internal degree -1.'

    def test_phi2_on_the_unit(self, hodge_family_structures):
        structure = hodge_family_structures[0]
        space = structure.space
        phi2 = MultilinearMap(
            2, space, space, -1,
            {keyed(space, '1', 'p'): {space.index('a2'): 1}}
        )
        with pytest.raises(ContractViolation) as e:
            gauge_by_phi2(structure, phi2)
        assert str(e.value) == 'phi_2 does not vanish on the unit.'

    def test_structure_with_differential(self, eleven_dim):
        structure = MinimalCInftyStructure.from_pdgca(eleven_dim)
        space = structure.space
        with pytest.raises(ContractViolation) as e:
            gauge_by_phi2(structure, MultilinearMap.zero(2, space, space, -1))
        assert str(e.value) == 'Only minimal structures can be gauged.'

    def test_opposite_gauge_restores_m3(self, corpus_cohomology_structure):
        structure = corpus_cohomology_structure('cp2_s7', 4)
        mu3 = HochschildCochain.from_structure(structure)
        phi2 = solve_formality_obstruction(mu3).witness.map
        gauged = gauge_by_phi2(structure, phi2)
        assert gauged.m(3).is_zero()
        restored = gauge_by_phi2(gauged, -phi2)
        assert restored.m(2) == structure.m(2)
        assert restored.m(3) == structure.m(3)

    def test_verify_rejects_broken_structure(self, flipped):
        space = flipped.space
        with pytest.raises(InvalidCochain) as e:
            gauge_by_phi2(flipped, MultilinearMap.zero(2, space, space, -1))
        assert 'stasheff' in e.value.report.axioms

    def test_verify_can_be_skipped(self, flipped):
        space = flipped.space
        gauged = gauge_by_phi2(
            flipped, MultilinearMap.zero(2, space, space, -1), verify=False
        )
        assert gauged.m(3) == flipped.m(3)
