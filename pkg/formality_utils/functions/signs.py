"""
Koszul signs, permutation signs and shuffles.

A permutation is written as the new arrangement of old positions: the
permutation ``(1, 0, 2)`` turns ``(x0, x1, x2)`` into ``(x1, x0, x2)``.
"""
import itertools
from fractions import Fraction

from ..exceptions import ContractViolation


def _check_permutation(permutation, length):
    if len(permutation) != length or sorted(permutation) != list(range(length)):
        raise ContractViolation(
            f'{tuple(permutation)!r} is not a permutation of {length} symbols.'
        )


def koszul_sign(permutation, degrees):
    """
    Sign picked up when graded symbols of the given degrees are rearranged
    according to ``permutation``.

    Every pair of symbols that changes relative order contributes
    ``(-1) ** (deg_a * deg_b)``.

    ::

        koszul_sign((1, 0), (3, 5))  # Fraction(-1, 1)
        koszul_sign((1, 0), (2, 3))  # Fraction(1, 1)
    """
    _check_permutation(permutation, len(degrees))
    exponent = 0
    for i, j in itertools.combinations(range(len(permutation)), 2):
        if permutation[i] > permutation[j]:
            exponent += degrees[permutation[i]] * degrees[permutation[j]]
    return Fraction(-1 if exponent % 2 else 1)


def permutation_sign(permutation):
    """
    Ordinary sign of a permutation.
    """
    return koszul_sign(permutation, [1] * len(permutation))


def compose(sigma, tau):
    """
    The arrangement obtained by applying ``tau`` first and ``sigma`` second.
    """
    return tuple(tau[i] for i in sigma)


def shuffles(p, q):
    """
    All ``(p, q)``-shuffles as arrangements of ``p + q`` symbols.

    The first ``p`` symbols keep their relative order, as do the last ``q``.
    """
    total = p + q
    for positions in itertools.combinations(range(total), p):
        arrangement = [None] * total
        first = iter(range(p))
        second = iter(range(p, total))
        position_set = set(positions)
        for slot in range(total):
            arrangement[slot] = next(first) if slot in position_set else next(second)
        yield tuple(arrangement)


def shuffle_terms(p, q, degrees):
    """
    Signed terms of the graded shuffle product of the first ``p`` and the
    last ``q`` symbols.

    Each term is ``(sign, arrangement)`` where the sign is the permutation
    sign times the Koszul sign for the given (unshifted) degrees. A
    multilinear map vanishes on shuffles when the signed sum of its values
    on the arrangements is zero.
    """
    for arrangement in shuffles(p, q):
        yield (
            permutation_sign(arrangement) * koszul_sign(arrangement, degrees),
            arrangement
        )
