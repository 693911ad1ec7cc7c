import pytest

from formality_utils import (
    bianchi_massey,
    bm_equivalence,
    ContractViolation,
    HochschildCochain,
    HodgeHomotopy,
    InvalidHodgeHomotopy,
    MismatchedInputs,
    solve_formality_obstruction,
    symmetric_normal_form,
    SymmetricSquareElement,
    top_degree_reduction,
    verify_harr_to_sym
)


@pytest.fixture(scope='module')
def tensor(eleven_dim_hodge):
    return bianchi_massey(eleven_dim_hodge)


@pytest.fixture
def space(tensor):
    return tensor.space


@pytest.fixture
def mu3(eleven_dim_structure):
    return HochschildCochain.from_structure(eleven_dim_structure)


def pair(space, left, right):
    return (space.index(left), space.index(right))


class TestSymmetricSquare:
    def test_odd_classes_anticommute(self, space):
        x, y = pair(space, 'x', 'y')
        assert symmetric_normal_form(space, (y, x)) == (-1, (x, y))
        assert SymmetricSquareElement.monomial(space, y, x) == (
            -1 * SymmetricSquareElement.monomial(space, x, y)
        )

    def test_odd_square_vanishes(self, space):
        x = space.index('x')
        assert symmetric_normal_form(space, (x, x))[0] == 0
        assert not SymmetricSquareElement.monomial(space, x, x)

    def test_cancellation(self, space):
        x, y = pair(space, 'x', 'y')
        element = (
            SymmetricSquareElement.monomial(space, x, y) +
            SymmetricSquareElement.monomial(space, y, x)
        )
        assert not element
        assert element.format() == '0'

    def test_degree_and_format(self, space):
        x, y = pair(space, 'x', 'y')
        element = SymmetricSquareElement.monomial(space, x, y, 2)
        assert element.degree == 6
        assert element.format() == '2*(x.y)'

    def test_from_class(self, space):
        x = space.index('x')
        element = SymmetricSquareElement.from_class(space, {x: 2}, 0)
        assert element.terms == {(0, x): 2}

    def test_inhomogeneous_element(self, space):
        x, xb = pair(space, 'x', 'xb')
        element = (
            SymmetricSquareElement.monomial(space, 0, x) +
            SymmetricSquareElement.monomial(space, 0, xb)
        )
        with pytest.raises(ContractViolation):
            element.degree


class TestBianchiMasseyTensor:
    def test_value_on_massey_pair(self, tensor, space):
        xy = pair(space, 'x', 'y')
        assert tensor.value(xy, xy) == {space.index('om'): -2}
        assert not tensor.is_zero()

    def test_kernel_contains_massey_pair(self, tensor, space):
        element = SymmetricSquareElement.monomial(space, *pair(space, 'x', 'y'))
        assert element in tensor.kernel_basis

    def test_restriction_to_kernel(self, tensor, space):
        element = SymmetricSquareElement.monomial(space, *pair(space, 'x', 'y'))
        p = tensor.kernel_basis.index(element)
        assert tensor.restricted()[(p, p)] == {space.index('om'): -2}
        assert not tensor.is_zero_on_kernel()

    def test_does_not_vanish_on_bianchi_subspace(self, tensor, space):
        element = SymmetricSquareElement.monomial(space, *pair(space, 'x', 'y'))
        p = tensor.kernel_basis.index(element)
        assert [(1, p, p)] in tensor.bianchi_basis
        assert tensor.bianchi_value([(1, p, p)]) == {space.index('om'): -2}
        assert not tensor.vanishes_on_bianchi()

    def test_formal_algebra(self, cp2):
        tensor = bianchi_massey(HodgeHomotopy.trivial(cp2))
        assert tensor.is_zero()
        assert tensor.is_zero_on_kernel()
        assert tensor.vanishes_on_bianchi()

    def test_invalid_hodge_homotopy(self, eleven_dim):
        with pytest.raises(InvalidHodgeHomotopy):
            bianchi_massey(HodgeHomotopy.trivial(eleven_dim))

    def test_with_value(self, tensor, space):
        xy = pair(space, 'x', 'y')
        changed = tensor.with_value(xy, xy, {})
        assert changed.value(xy, xy) == {}
        assert tensor.value(xy, xy)


class TestHarrisonToSymmetric:
    def test_transferred_m3(self, tensor, mu3):
        assert verify_harr_to_sym(tensor, mu3).ok

    def test_perturbed_tensor(self, tensor, space, mu3):
        first = pair(space, 'x', 'y')
        second = (0, space.index('x'))
        value = tensor.value(first, second)
        xb = space.index('xb')
        value[xb] = value.get(xb, 0) + 1
        report = verify_harr_to_sym(tensor.with_value(first, second, value), mu3)
        assert report.axioms == ['harr-to-sym']
        assert ('x', 'y', 'x') in [v.arguments for v in report]

    def test_different_rings(self, tensor, cp2_s7_structure):
        with pytest.raises(MismatchedInputs) as e:
            verify_harr_to_sym(
                tensor, HochschildCochain.from_structure(cp2_s7_structure)
            )
        assert str(e.value) == (
            'The tensor and mu_3 live on different cohomology rings.'
        )


class TestEquivalence:
    def test_non_formal(self, tensor, mu3):
        assert bm_equivalence(tensor, solve_formality_obstruction(mu3))

    def test_formal_up_to_gauge(self, cp2_s7_hodge, cp2_s7_structure):
        tensor = bianchi_massey(cp2_s7_hodge)
        obstruction = solve_formality_obstruction(
            HochschildCochain.from_structure(cp2_s7_structure)
        )
        assert obstruction.solvable
        assert tensor.vanishes_on_bianchi()
        assert bm_equivalence(tensor, obstruction)


class TestTopDegreeReduction:
    def test_reduction(self, tensor, space):
        xy = pair(space, 'x', 'y')
        left, right = top_degree_reduction(tensor, xy, xy)
        assert left == right == {space.index('om'): -2}

    def test_not_top_degree(self, tensor, space):
        with pytest.raises(ContractViolation) as e:
            top_degree_reduction(
                tensor, pair(space, 'x', 'y'), pair(space, 'x', 'xb')
            )
        assert str(e.value) == 'Degree 16 is not the top degree 11.'
