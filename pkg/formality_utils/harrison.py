"""
Hochschild and Harrison cochains on a cohomology ring and the first
obstruction to formality.

A cochain of bidegree ``(p, s)`` is a ``p``-linear map ``H ** p -> H`` of
internal degree ``s``. It is normalized when it vanishes as soon as one
argument is the unit, and Harrison when it also annihilates every signed
shuffle sum. The Hochschild differential is

::

    (df)(a_1, ..., a_(p+1)) = (-1) ** (s |a_1|) a_1 f(a_2, ..., a_(p+1))
                              + sum_i (-1) ** i f(..., a_i a_(i+1), ...)
                              + (-1) ** (p + 1) f(a_1, ..., a_p) a_(p+1)
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import ContractViolation, InvalidCochain, NotAnIsomorphism
from .functions.linalg import (
    inverse,
    kernel_basis,
    left_annihilator,
    rank,
    solve_linear,
    transpose
)
from .functions.signs import shuffle_terms
from .pdgca import ValidationReport
from .primitives.graded import accumulate, GradedLinearMap, MultilinearMap
from .utils import sign

logger = logging.getLogger(__name__)

MAX_COHOMOLOGY_ARITY = 4


def _basis(index):
    return {index: Fraction(1)}


class HochschildCochain:
    """
    A multilinear map on a cohomology ring, seen as a Hochschild cochain.

    ::

        mu3 = HochschildCochain.from_structure(transfer_to_cohomology(S))
        mu3.bidegree  # (3, -1)
    """

    def __init__(self, ring, cochain_map):
        if cochain_map.source != ring.space or cochain_map.target != ring.space:
            raise ContractViolation('Cochain does not live on the given ring.')
        self.ring = ring
        self.map = cochain_map

    @classmethod
    def zero(cls, ring, p, s):
        return cls(ring, MultilinearMap.zero(p, ring.space, ring.space, s))

    @classmethod
    def from_structure(cls, structure, k=3):
        """
        ``m_k`` of a structure on cohomology.

        :raises ContractViolation: if the structure does not live on a
            cohomology ring
        """
        if structure.ring is None:
            raise ContractViolation(
                'The structure does not live on cohomology; use '
                'transfer_to_cohomology first.'
            )
        return cls(structure.ring, structure.m(k))

    @property
    def p(self):
        return self.map.arity

    @property
    def s(self):
        return self.map.degree

    @property
    def bidegree(self):
        return (self.p, self.s)

    @property
    def is_normalized(self):
        unit = self.ring.unit
        return all(unit not in key for key in self.map.keys())

    @property
    def is_harrison(self):
        return self.is_normalized and not shuffle_violations(self.map)

    def is_zero(self):
        return self.map.is_zero()

    def __call__(self, *vectors):
        return self.map(*vectors)

    def _wrap(self, cochain_map):
        return HochschildCochain(self.ring, cochain_map)

    def __add__(self, other):
        return self._wrap(self.map + other.map)

    def __sub__(self, other):
        return self._wrap(self.map - other.map)

    def __neg__(self):
        return self._wrap(-self.map)

    def __rmul__(self, coefficient):
        return self._wrap(coefficient * self.map)

    def __eq__(self, other):
        if not isinstance(other, HochschildCochain):
            return NotImplemented
        return self.ring.space == other.ring.space and self.map == other.map

    __hash__ = None

    def __repr__(self):
        return f'<HochschildCochain bidegree={self.bidegree}>'


def shuffle_violations(cochain_map):
    """
    ``(key, i)`` pairs on which the signed ``(i, p - i)``-shuffle sum of a
    multilinear map does not vanish.
    """
    space = cochain_map.source
    p = cochain_map.arity
    failures = []
    for key in MultilinearMap.keys_for(
        p, space, cochain_map.target, cochain_map.degree
    ):
        degrees = [space.degree(j) for j in key]
        for i in range(1, p):
            total = {}
            for coefficient, arrangement in shuffle_terms(i, p - i, degrees):
                arranged = tuple(key[a] for a in arrangement)
                accumulate(total, cochain_map.on_basis(arranged), coefficient)
            if total:
                failures.append((key, i))
    return failures


def _supported(space, key, support):
    if support is None:
        return True
    return all(
        space.degree(i) > 0 and space.degree(i) % support == 0 for i in key
    )


class CochainSpace:
    """
    Coordinates on the cochains of bidegree ``(p, s)``: one coordinate per
    basis tuple and output basis element of the right degree.

    :param normalized: leave out tuples containing the unit
    :param support: keep only tuples whose degrees are all positive
        multiples of ``support``
    """

    def __init__(self, ring, p, s, normalized=True, support=None):
        space = ring.space
        self.ring = ring
        self.p = p
        self.s = s
        self.normalized = normalized
        self.support = support
        exclude = (ring.unit,) if normalized else ()
        self.coordinates = [
            (key, j)
            for key in MultilinearMap.keys_for(p, space, space, s, exclude)
            if _supported(space, key, support)
            for j in space.indices(sum(space.degree(i) for i in key) + s)
        ]
        self._positions = {
            coordinate: position
            for position, coordinate in enumerate(self.coordinates)
        }

    def __len__(self):
        return len(self.coordinates)

    def position(self, key, j):
        return self._positions.get((tuple(key), j))

    def to_vector(self, cochain_map):
        """
        Coordinates of a map. Entries outside the space must vanish.

        :raises ContractViolation: if the map has an entry outside the space
        """
        vector = [Fraction(0)] * len(self.coordinates)
        for key, value in cochain_map.items():
            for j, coefficient in value.items():
                position = self._positions.get((key, j))
                if position is None:
                    raise ContractViolation(
                        f'Entry on {key!r} lies outside the cochain space.'
                    )
                vector[position] = coefficient
        return vector

    def from_vector(self, values):
        space = self.ring.space
        table = {}
        for (key, j), value in zip(self.coordinates, values):
            if value:
                table.setdefault(key, {})[j] = value
        return MultilinearMap(self.p, space, space, self.s, table)


def hochschild_differential(cochain):
    """
    The cochain ``df`` of bidegree ``(p + 1, s)``.
    """
    ring = cochain.ring
    space = ring.space
    product = ring.product
    f = cochain.map
    p = cochain.p
    s = cochain.s

    def evaluate(key):
        total = {}
        first = f.on_basis(key[1:])
        if first:
            coefficient = sign(s * space.degree(key[0]))
            accumulate(total, product(_basis(key[0]), first), coefficient)
        for i in range(1, p + 1):
            merged = product.on_basis((key[i - 1], key[i]))
            if merged:
                arguments = (
                    [_basis(j) for j in key[:i - 1]] +
                    [merged] +
                    [_basis(j) for j in key[i + 1:]]
                )
                accumulate(total, f(*arguments), sign(i))
        last = f.on_basis(key[:-1])
        if last:
            accumulate(total, product(last, _basis(key[-1])), sign(p + 1))
        return total

    return HochschildCochain(
        ring, MultilinearMap.from_function(p + 1, space, space, s, evaluate)
    )


def harrison_subspace_basis(ring, p, s, support=None):
    """
    Exact basis of the normalized Harrison cochains of bidegree ``(p, s)``.

    :param support: restrict to cochains supported on tuples of positive
        multiples of ``support``
    """
    space = ring.space
    cochains = CochainSpace(ring, p, s, normalized=True, support=support)
    rows = []
    seen = set()
    for key, _ in cochains.coordinates:
        if key in seen:
            continue
        seen.add(key)
        degrees = [space.degree(j) for j in key]
        outputs = space.indices(sum(degrees) + s)
        for i in range(1, p):
            relations = {j: [Fraction(0)] * len(cochains) for j in outputs}
            for coefficient, arrangement in shuffle_terms(i, p - i, degrees):
                arranged = tuple(key[a] for a in arrangement)
                for j in outputs:
                    position = cochains.position(arranged, j)
                    if position is not None:
                        relations[j][position] += coefficient
            rows.extend(row for row in relations.values() if any(row))
    vectors = kernel_basis(rows, len(cochains))
    logger.debug(
        'harrison (%d, %d): %d coordinates, %d relations, dimension %d',
        p, s, len(cochains), len(rows), len(vectors)
    )
    return [
        HochschildCochain(ring, cochains.from_vector(vector)) for vector in vectors
    ]


def restrict_to_multiples(cochain, r):
    """
    Keep only the entries on tuples whose degrees are all positive multiples
    of ``r``.
    """
    space = cochain.ring.space
    return HochschildCochain(
        cochain.ring,
        cochain.map.restrict(lambda key: _supported(space, key, r))
    )


@dataclass
class ObstructionResult:
    """
    Outcome of solving ``d phi_2 = mu_3``.

    ``witness`` is set when the system is solvable. Otherwise
    ``certificate`` maps ``(key, output)`` coordinates to the coefficients of
    a functional that kills every coboundary but not ``mu_3``.
    """
    solvable: bool
    mu3: HochschildCochain
    basis: list
    witness: HochschildCochain = None
    certificate: dict = None
    support: int = None
    coboundaries: list = field(default_factory=list, repr=False)

    def _pair(self, cochain_map):
        total = Fraction(0)
        for key, value in cochain_map.items():
            for j, coefficient in value.items():
                weight = self.certificate.get((key, j))
                if weight:
                    total += weight * coefficient
        return total

    def verify(self):
        """
        Re-check the witness or the certificate exactly.
        """
        if self.solvable:
            return hochschild_differential(self.witness) == self.mu3
        if self._pair(self.mu3.map) == 0:
            return False
        return all(
            self._pair(coboundary.map) == 0 for coboundary in self.coboundaries
        )

    @property
    def certificate_terms(self):
        """
        Certificate entries as ``(argument names, output name, coefficient)``.
        """
        if not self.certificate:
            return []
        space = self.mu3.ring.space
        return [
            (tuple(space.name(i) for i in key), space.name(j), value)
            for (key, j), value in sorted(self.certificate.items())
        ]


def _obstruction_report(mu3):
    report = ValidationReport()
    space = mu3.ring.space
    unit = mu3.ring.unit
    for key, value in mu3.map.items():
        if unit in key:
            report.add(
                'normalized',
                tuple(space.name(i) for i in key),
                f'value {space.format(value)} on the unit'
            )
    for key, i in shuffle_violations(mu3.map):
        report.add(
            'shuffle',
            tuple(space.name(j) for j in key),
            f'({i}, {mu3.p - i})-shuffle sum does not vanish'
        )
    boundary = hochschild_differential(mu3)
    for key, value in boundary.map.items():
        report.add(
            'cocycle',
            tuple(space.name(i) for i in key),
            f'd mu_3 = {space.format(value)}'
        )
    return report


def solve_formality_obstruction(mu3, support=None):
    """
    Solve ``d phi_2 = mu_3`` over the normalized Harrison cochains of
    bidegree ``(2, -1)``.

    :param support: only look for ``phi_2`` supported on tuples of positive
        multiples of ``support``
    :raises ContractViolation: if ``mu3`` does not have bidegree ``(3, -1)``
    :raises InvalidCochain: if ``mu3`` is not a normalized Harrison cocycle
    """
    if mu3.bidegree != (3, -1):
        raise ContractViolation(
            f'mu_3 must have bidegree (3, -1), got {mu3.bidegree}.'
        )
    report = _obstruction_report(mu3)
    if not report.ok:
        raise InvalidCochain(report)
    ring = mu3.ring
    basis = harrison_subspace_basis(ring, 2, -1, support=support)
    target = CochainSpace(ring, 3, -1, normalized=False)
    coboundaries = [hochschild_differential(element) for element in basis]
    columns = [target.to_vector(coboundary.map) for coboundary in coboundaries]
    rows = (
        transpose(columns, len(target)) if columns
        else [[] for _ in range(len(target))]
    )
    rhs = target.to_vector(mu3.map)
    solution = solve_linear(rows, rhs, len(basis))
    if solution is not None:
        witness = HochschildCochain.zero(ring, 2, -1)
        for coefficient, element in zip(solution, basis):
            if coefficient:
                witness = witness + coefficient * element
        logger.info('first obstruction vanishes; witness found')
        return ObstructionResult(
            True, mu3, basis, witness=witness, support=support,
            coboundaries=coboundaries
        )
    functional = left_annihilator(rows, rhs, len(basis))
    certificate = {
        coordinate: value
        for coordinate, value in zip(target.coordinates, functional)
        if value
    }
    logger.info('first obstruction is nonzero')
    return ObstructionResult(
        False, mu3, basis, certificate=certificate, support=support,
        coboundaries=coboundaries
    )


def _check_isomorphism(phi, source_ring, target_ring):
    if (
        not isinstance(phi, GradedLinearMap) or
        phi.shift != 0 or
        phi.source != source_ring.space or
        phi.target != target_ring.space
    ):
        raise NotAnIsomorphism('The map is not a degree 0 map between the rings.')
    if source_ring.space.dims != target_ring.space.dims:
        raise NotAnIsomorphism('The rings have different Betti numbers.')
    matrices = {}
    for k, size in enumerate(source_ring.space.dims):
        if not size:
            continue
        matrix = phi.matrix(k)
        if rank(matrix, size) != size:
            raise NotAnIsomorphism(f'The map is not invertible in degree {k}.')
        matrices[k] = inverse(matrix)
    if phi.column(source_ring.unit) != _basis(target_ring.unit):
        raise NotAnIsomorphism('The map does not preserve the unit.')
    space = source_ring.space
    for key in space.basis_tuples(2, max_total=space.top_degree):
        left = phi(source_ring.product.on_basis(key))
        right = target_ring.product(phi.column(key[0]), phi.column(key[1]))
        if left != right:
            raise NotAnIsomorphism(
                f'The map is not multiplicative on ({space.name(key[0])}, '
                f'{space.name(key[1])}).'
            )
    return GradedLinearMap.from_matrices(
        target_ring.space, source_ring.space, 0, matrices
    )


def compare_classes(mu3, mu3_prime, phi):
    """
    Whether ``phi`` carries ``[mu_3]`` to ``[mu_3']``.

    :param phi: a graded ring isomorphism between the two cohomology rings
    :raises NotAnIsomorphism: if ``phi`` is not a multiplicative isomorphism
    """
    backward = _check_isomorphism(phi, mu3.ring, mu3_prime.ring)
    transported = HochschildCochain(
        mu3_prime.ring, mu3.map.conjugate(phi, backward)
    )
    result = solve_formality_obstruction(transported - mu3_prime)
    return result.solvable


def harrison_cohomology_dim(ring, p, s):
    """
    Dimension of normalized Harrison cohomology in bidegree ``(p, s)``.

    :raises ContractViolation: if ``p`` is outside ``[1, 4]``
    """
    if not 1 <= p <= MAX_COHOMOLOGY_ARITY:
        raise ContractViolation(
            f'Harrison cohomology is computed for 1 <= p <= '
            f'{MAX_COHOMOLOGY_ARITY}, got {p}.'
        )

    def differential_rank(basis, arity):
        if not basis:
            return 0
        target = CochainSpace(ring, arity + 1, s, normalized=False)
        columns = [
            target.to_vector(hochschild_differential(element).map)
            for element in basis
        ]
        return rank(columns, len(target))

    basis = harrison_subspace_basis(ring, p, s)
    cycles = len(basis) - differential_rank(basis, p)
    boundaries = 0
    if p > 1:
        boundaries = differential_rank(harrison_subspace_basis(ring, p - 1, s), p - 1)
    logger.debug('HHarr^(%d, %d): %d cycles, %d boundaries', p, s, cycles, boundaries)
    return cycles - boundaries
