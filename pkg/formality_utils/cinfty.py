"""
A-infinity and C-infinity axioms, C-infinity morphisms and the gauge action
of a quadratic morphism ``(id, phi_2)``.

All relations are evaluated in the bar convention: an ``n``-ary map ``f``
corresponds to the degree shifted component

    (-1) ** (n - 1 + sum_j (n - j) |a_j|) s f(a_1, ..., a_n)

With this convention an algebra with ``m_1 = d`` and ``m_2`` its product
satisfies every relation.
"""
import logging
from fractions import Fraction

from .config import get_settings
from .exceptions import ContractViolation, InvalidCochain
from .harrison import shuffle_violations
from .pdgca import ValidationReport
from .primitives.graded import accumulate, GradedLinearMap, MultilinearMap
from .transfer import MinimalCInftyStructure
from .utils import sign

logger = logging.getLogger(__name__)


def bar_sign(degrees):
    """
    Sign relating an ``n``-ary map to its bar component on inputs of the
    given (unshifted) degrees.
    """
    n = len(degrees)
    return sign(n - 1 + sum((n - j) * e for j, e in enumerate(degrees, 1)))


def _basis(index):
    return {index: Fraction(1)}


def _names(space, key):
    return tuple(space.name(i) for i in key)


def _apply(structure, k, vectors):
    if k == 1:
        if structure.differential is None:
            return {}
        return structure.differential(vectors[0])
    return structure.m(k)(*vectors)


def _inner(structure, k, block):
    if k == 1:
        if structure.differential is None:
            return {}
        return structure.differential.column(block[0])
    return structure.m(k).on_basis(block)


def _resolve_up_to(up_to_p, limit):
    if up_to_p is None:
        up_to_p = min(get_settings().max_p, limit)
        if up_to_p < limit:
            logger.warning('checks capped at p = %d by configuration', up_to_p)
    if up_to_p > limit:
        raise ContractViolation(
            f'Cannot check through p = {up_to_p}; operations are known '
            f'through arity {limit}.'
        )
    return up_to_p


def stasheff_value(structure, key):
    """
    Left hand side of the A-infinity relation of arity ``len(key)`` on a
    basis tuple.
    """
    space = structure.space
    N = len(key)
    degrees = [space.degree(i) for i in key]
    has_differential = structure.differential is not None
    total = {}
    for s in range(1, N + 1):
        if s == 1 and not has_differential:
            continue
        for r in range(0, N - s + 1):
            t = N - s - r
            outer = r + 1 + t
            if outer == 1 and not has_differential:
                continue
            if outer > structure.max_arity or s > structure.max_arity:
                continue
            block = key[r:r + s]
            inner = _inner(structure, s, block)
            if not inner:
                continue
            inner_degree = sum(degrees[r:r + s]) + 2 - s
            outer_degrees = degrees[:r] + [inner_degree] + degrees[r + s:]
            coefficient = (
                sign(sum(e - 1 for e in degrees[:r])) *
                bar_sign(degrees[r:r + s]) *
                bar_sign(outer_degrees)
            )
            arguments = (
                [_basis(i) for i in key[:r]] +
                [inner] +
                [_basis(i) for i in key[r + s:]]
            )
            accumulate(total, _apply(structure, outer, arguments), coefficient)
    return total


def check_stasheff(structure, up_to_p=None):
    """
    Evaluate the A-infinity relations of arity ``1..up_to_p`` on every basis
    tuple. Each violation lists the offending tuple; its length is ``p``.
    """
    up_to_p = _resolve_up_to(up_to_p, structure.max_arity)
    space = structure.space
    n = space.top_degree
    report = ValidationReport()
    for N in range(1, up_to_p + 1):
        count = 0
        for key in space.basis_tuples(N, min_total=N - 3, max_total=n + N - 3):
            count += 1
            value = stasheff_value(structure, key)
            if value:
                report.add(
                    'stasheff', _names(space, key), f'p={N}: {space.format(value)}'
                )
        logger.debug('stasheff p=%d: %d tuples', N, count)
    return report


def check_shuffle_vanishing(structure, up_to_p=None):
    """
    Check that every ``m_k`` annihilates the signed ``(i, k - i)``-shuffle
    sums. For ``k = 2`` this is graded commutativity.
    """
    up_to_p = _resolve_up_to(up_to_p, structure.max_arity)
    report = ValidationReport()
    for k in range(2, up_to_p + 1):
        report.extend(shuffle_report(structure.m(k), 'shuffle'))
    return report


def shuffle_report(operation, axiom='shuffle'):
    """
    Shuffle sums of a multilinear map that do not vanish.
    """
    space = operation.source
    k = operation.arity
    report = ValidationReport()
    for key, i in shuffle_violations(operation):
        report.add(
            axiom, _names(space, key), f'({i}, {k - i})-shuffle sum does not vanish'
        )
    return report


def check_unitality(structure):
    """
    ``m_2(1, a) = m_2(a, 1) = a`` and ``m_k(..., 1, ...) = 0`` for
    ``k >= 3``.
    """
    space = structure.space
    unit = structure.unit
    report = ValidationReport()
    for i in range(space.dim):
        for key in ((unit, i), (i, unit)):
            value = structure.m(2).on_basis(key)
            if value != _basis(i):
                report.add(
                    'unitality', _names(space, key), f'm_2 = {space.format(value)}'
                )
    for k in range(3, structure.max_arity + 1):
        operation = structure.m(k)
        for key, value in operation.items():
            if unit in key:
                report.add(
                    'unitality',
                    _names(space, key),
                    f'm_{k} = {space.format(value)}'
                )
    return report


class CInftyMorphism:
    """
    A C-infinity morphism with components ``phi_r`` of arity ``r`` and
    internal degree ``1 - r``.

    :param components: mapping ``r -> map``; ``phi_1`` is required and may
        be a :class:`GradedLinearMap`
    """

    def __init__(self, source, target, components):
        if 1 not in components:
            raise ContractViolation('A morphism needs a linear component.')
        stored = {}
        for r, component in components.items():
            if isinstance(component, GradedLinearMap):
                if r != 1 or component.shift != 0:
                    raise ContractViolation('Only phi_1 may be a linear map.')
                component = MultilinearMap(
                    1,
                    component.source,
                    component.target,
                    0,
                    {(i,): column for i, column in component.items()}
                )
            if (
                component.arity != r or
                component.degree != 1 - r or
                component.source != source.space or
                component.target != target.space
            ):
                raise ContractViolation(
                    f'phi_{r} must be an {r}-ary map of degree {1 - r}.'
                )
            if not component.is_zero():
                stored[r] = component
        self.source = source
        self.target = target
        self.components = stored

    @classmethod
    def identity(cls, structure, phi2=None):
        space = structure.space
        components = {1: GradedLinearMap.identity(space)}
        if phi2 is not None:
            components[2] = phi2
        return cls(structure, structure, components)

    def component(self, r):
        return self.components.get(r)

    def __repr__(self):
        return f'<CInftyMorphism components={sorted(self.components)}>'


def _compositions(total):
    if not total:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def _lhs(target, components, key, degrees, skip_top=False):
    """
    ``sum_k b'_k (F_r1 x ... x F_rk)`` on a basis tuple.
    """
    N = len(key)
    total = {}
    for parts in _compositions(N):
        k = len(parts)
        if skip_top and k == N:
            continue
        if k == 1 and target.differential is None:
            continue
        if k > 1 and k > target.max_arity:
            continue
        blocks = []
        block_degrees = []
        coefficient = 1
        start = 0
        for r in parts:
            component = components.get(r)
            if component is None:
                break
            block = key[start:start + r]
            value = component.on_basis(block)
            if not value:
                break
            coefficient *= bar_sign(degrees[start:start + r])
            blocks.append(value)
            block_degrees.append(sum(degrees[start:start + r]) + 1 - r)
            start += r
        else:
            coefficient *= bar_sign(block_degrees)
            accumulate(total, _apply(target, k, blocks), coefficient)
    return total


def _rhs(source, components, key, degrees):
    """
    ``sum F_(r+1+t)(1^r x b_s x 1^t)`` on a basis tuple.
    """
    N = len(key)
    total = {}
    for s in range(1, N + 1):
        if s == 1 and source.differential is None:
            continue
        if s > source.max_arity:
            continue
        for r in range(0, N - s + 1):
            t = N - s - r
            component = components.get(r + 1 + t)
            if component is None:
                continue
            inner = _inner(source, s, key[r:r + s])
            if not inner:
                continue
            inner_degree = sum(degrees[r:r + s]) + 2 - s
            coefficient = (
                sign(sum(e - 1 for e in degrees[:r])) *
                bar_sign(degrees[r:r + s]) *
                bar_sign(degrees[:r] + [inner_degree] + degrees[r + s:])
            )
            arguments = (
                [_basis(i) for i in key[:r]] +
                [inner] +
                [_basis(i) for i in key[r + s:]]
            )
            accumulate(total, component(*arguments), coefficient)
    return total


def check_morphism(morphism, up_to_p=None):
    """
    Evaluate the C-infinity morphism equations of arity ``1..up_to_p`` on
    every basis tuple, and check that the higher components vanish on the
    unit.
    """
    source = morphism.source
    target = morphism.target
    up_to_p = _resolve_up_to(
        up_to_p, min(source.max_arity, target.max_arity)
    )
    space = source.space
    n = target.space.top_degree
    components = morphism.components
    report = ValidationReport()
    for r, component in sorted(components.items()):
        if r < 2:
            continue
        for key, value in component.items():
            if source.unit in key:
                report.add(
                    'morphism-unital',
                    _names(space, key),
                    f'phi_{r} = {target.space.format(value)}'
                )
    for N in range(1, up_to_p + 1):
        for key in space.basis_tuples(N, min_total=N - 2, max_total=n + N - 2):
            degrees = [space.degree(i) for i in key]
            difference = _lhs(target, components, key, degrees)
            accumulate(difference, _rhs(source, components, key, degrees), -1)
            if difference:
                report.add(
                    'morphism',
                    _names(space, key),
                    f'p={N}: {target.space.format(difference)}'
                )
    logger.debug(
        'morphism check through p=%d: %d violation(s)', up_to_p, len(report)
    )
    return report


def gauge_by_phi2(structure, phi2, verify=True):
    """
    The structure ``m'`` for which ``(id, phi2)`` is a C-infinity morphism
    ``m -> m'``.

    ``m'_2 = m_2`` and ``m'_3 = m_3 - delta phi2``; higher operations are
    solved arity by arity from the morphism equations.

    :param phi2: a cochain of arity 2 and internal degree -1 vanishing on
        the unit
    :param verify: re-check the A-infinity, shuffle and unit axioms of the
        result and raise :class:`~formality_utils.exceptions.InvalidCochain`
        if one fails
    :raises ContractViolation: if ``phi2`` has the wrong bidegree or does
        not vanish on the unit
    """
    space = structure.space
    if (
        phi2.arity != 2 or
        phi2.degree != -1 or
        phi2.source != space or
        phi2.target != space
    ):
        raise ContractViolation('phi_2 must have arity 2 and internal degree -1.')
    if any(structure.unit in key for key in phi2.keys()):
        raise ContractViolation('phi_2 does not vanish on the unit.')
    if structure.differential is not None:
        raise ContractViolation('Only minimal structures can be gauged.')
    components = {
        1: MultilinearMap(
            1, space, space, 0, {(i,): {i: 1} for i in range(space.dim)}
        )
    }
    if not phi2.is_zero():
        components[2] = phi2
    gauged = MinimalCInftyStructure(
        space, {}, structure.unit, structure.max_arity, ring=structure.ring
    )
    operations = {}
    for N in range(2, structure.max_arity + 1):

        def solve(key):
            degrees = [space.degree(i) for i in key]
            value = _rhs(structure, components, key, degrees)
            lower = _lhs(gauged, components, key, degrees, skip_top=True)
            accumulate(value, lower, -1)
            return {i: bar_sign(degrees) * c for i, c in value.items()}

        operations[N] = MultilinearMap.from_function(N, space, space, 2 - N, solve)
        gauged = MinimalCInftyStructure(
            space, operations, structure.unit, structure.max_arity,
            ring=structure.ring
        )
    logger.info('gauged structure through arity %d', structure.max_arity)
    if verify:
        report = check_stasheff(gauged)
        report.extend(check_shuffle_vanishing(gauged))
        report.extend(check_unitality(gauged))
        if not report.ok:
            raise InvalidCochain(report)
    return gauged
