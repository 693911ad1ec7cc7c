"""
Transfer by summation over rooted binary trees.

Every binary tree with ``k`` leaves contributes one term: leaves carry
harmonic representatives, every internal vertex multiplies, every internal
edge applies ``d^-`` and the root applies the harmonic projection. The sign
of a tree is the product, over its internal vertices, of the coefficient
the transfer recursion attaches to that split.
"""
import logging

from .exceptions import ContractViolation
from .hodge import ensure_valid_hodge
from .primitives.graded import accumulate, expand_arguments
from .utils import sign

logger = logging.getLogger(__name__)

MIN_ARITY = 2
MAX_ARITY = 5


def binary_trees(k, offset=0):
    """
    All rooted binary trees with leaves ``offset .. offset + k - 1`` in
    order. A leaf is its position, an internal vertex a ``(left, right)``
    pair.

    ::

        list(binary_trees(3))  # [(0, (1, 2)), ((0, 1), 2)]
    """
    if k == 1:
        yield offset
        return
    for split in range(1, k):
        for left in binary_trees(split, offset):
            for right in binary_trees(k - split, offset + split):
                yield (left, right)


def leaves(tree):
    if isinstance(tree, int):
        return (tree,)
    return leaves(tree[0]) + leaves(tree[1])


def split_coefficient(k, i, degrees):
    """
    Coefficient of the split of ``k`` inputs into the first ``i`` and the
    last ``k - i`` at one vertex.
    """
    if k == 2:
        return 1
    if i == k - 1:
        return sign(k - 1)
    if i == 1:
        return -sign(k * degrees[0])
    nu = i + (k - i - 1) * sum(degrees[:i])
    return -sign(nu)


def tree_sign(tree, degrees):
    """
    Product of the split coefficients of all internal vertices of ``tree``.
    ``degrees`` are the degrees of all leaves, indexed by position.
    """
    if isinstance(tree, int):
        return 1
    left, right = tree
    below = [degrees[position] for position in leaves(tree)]
    coefficient = split_coefficient(len(below), len(leaves(left)), below)
    return coefficient * tree_sign(left, degrees) * tree_sign(right, degrees)


def _evaluate(tree, hodge, inputs, root=False):
    if isinstance(tree, int):
        return inputs[tree]
    product = hodge.base.mul(
        _evaluate(tree[0], hodge, inputs),
        _evaluate(tree[1], hodge, inputs)
    )
    if root:
        return product
    return hodge.dminus(product)


def tree_summation_oracle(hodge, k, args):
    """
    ``m_k`` on harmonic arguments computed as a signed sum over the
    ``Catalan(k - 1)`` binary trees with ``k`` leaves.

    :param args: harmonic basis indices or harmonic coordinate vectors
    :returns: harmonic coordinate vector
    """
    if not MIN_ARITY <= k <= MAX_ARITY:
        raise ContractViolation(
            f'Tree summation supports arities {MIN_ARITY}..{MAX_ARITY}, got {k}.'
        )
    if len(args) != k:
        raise ContractViolation(f'Expected {k} arguments, got {len(args)}.')
    ensure_valid_hodge(hodge)
    space = hodge.harmonic_space
    harmonics = hodge.harmonic_vectors
    trees = list(binary_trees(k))
    total = {}
    for key, coefficient in expand_arguments(space, args):
        degrees = [space.degree(i) for i in key]
        inputs = [harmonics[i] for i in key]
        for tree in trees:
            value = _evaluate(tree, hodge, inputs, root=True)
            if value:
                accumulate(total, value, coefficient * tree_sign(tree, degrees))
    logger.debug('summed %d trees of arity %d', len(trees), k)
    return hodge.harmonic_projection(total)


def tree_count(k):
    return sum(1 for _ in binary_trees(k))
