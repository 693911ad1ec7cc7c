import pytest

from formality_utils import (
    binary_trees,
    construct_hodge_from_metric,
    ContractViolation,
    MultilinearMap,
    transfer,
    tree_count,
    tree_sign,
    tree_summation_oracle
)
from formality_utils.trees import leaves


class TestBinaryTrees:
    def test_three_leaves(self):
        assert list(binary_trees(3)) == [(0, (1, 2)), ((0, 1), 2)]

    @pytest.mark.parametrize(
        ('k', 'count'),
        ((1, 1), (2, 1), (3, 2), (4, 5), (5, 14))
    )
    def test_catalan_numbers(self, k, count):
        assert tree_count(k) == count

    def test_leaves_stay_in_order(self):
        for tree in binary_trees(5):
            assert leaves(tree) == (0, 1, 2, 3, 4)

    @pytest.mark.parametrize(
        ('tree', 'degrees', 'expected'),
        (
            ((0, 1), (3, 3), 1),
            (((0, 1), 2), (3, 3, 3), 1),
            ((0, (1, 2)), (3, 3, 3), 1),
            ((0, (1, 2)), (2, 2, 4), -1),
        )
    )
    def test_tree_sign(self, tree, degrees, expected):
        assert tree_sign(tree, degrees) == expected


class TestTreeSummationOracle:
    @pytest.mark.parametrize('k', (2, 3, 4, 5))
    @pytest.mark.parametrize(
        'name',
        ('eleven_dim', 'cp2_s7', 'hodge_family', 'seven_dim')
    )
    def test_agrees_with_transfer(self, corpus_transfer, name, k):
        structure = corpus_transfer(name, 5)
        hodge = structure.hodge
        space = hodge.harmonic_space
        for key in MultilinearMap.keys_for(k, space, space, 2 - k):
            assert tree_summation_oracle(hodge, k, list(key)) == (
                structure.m(k).on_basis(key)
            ), key

    def test_agrees_with_transfer_on_coupled_metric(
        self, hodge_family, second_metric
    ):
        hodge = construct_hodge_from_metric(hodge_family, second_metric)
        structure = transfer(hodge, max_arity=3)
        space = hodge.harmonic_space
        for key in MultilinearMap.keys_for(3, space, space, -1):
            assert tree_summation_oracle(hodge, 3, list(key)) == (
                structure.m(3).on_basis(key)
            )

    def test_linear_arguments(self, eleven_dim_hodge):
        space = eleven_dim_hodge.harmonic_space
        x, y = space.index('x'), space.index('y')
        value = tree_summation_oracle(eleven_dim_hodge, 3, [{x: 1, y: 1}, x, y])
        assert value == {space.index('xb'): 1, space.index('yb'): 2}

    @pytest.mark.parametrize('k', (1, 6))
    def test_unsupported_arity(self, eleven_dim_hodge, k):
        with pytest.raises(ContractViolation) as e:
            tree_summation_oracle(eleven_dim_hodge, k, [0] * k)
        assert str(e.value) == (
            f'Tree summation supports arities 2..5, got {k}.'
        )

    def test_argument_count(self, eleven_dim_hodge):
        with pytest.raises(ContractViolation):
            tree_summation_oracle(eleven_dim_hodge, 3, [0, 0])
