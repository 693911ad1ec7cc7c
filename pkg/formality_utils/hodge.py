"""
Hodge homotopies, the harmonic projector and the small quotient shape test.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .exceptions import (
    ContractViolation,
    InvalidHodgeHomotopy,
    MetricError,
    MetricIncompatible,
    MetricNotPositiveDefinite
)
from .functions.linalg import (
    identity,
    image_basis,
    inverse,
    is_positive_definite,
    matmul,
    rank,
    solve_linear,
    transpose
)
from .pdgca import (
    _ensure_valid,
    cohomology,
    connectivity,
    is_nondegenerate,
    pairing,
    ValidationReport
)
from .primitives.graded import GradedLinearMap, subtract

logger = logging.getLogger(__name__)


class HodgeHomotopy:
    """
    A degree -1 operator ``d^-`` on a :class:`~formality_utils.pdgca.PDGCA`
    together with everything it induces: the harmonic projector
    ``pi = id - d d^- - d^- d``, the harmonic subspace, its inclusion into
    the algebra and its identification with cohomology.

    The harmonic space uses the class basis of the cohomology ring: its
    ``c``-th basis element is the harmonic vector ``pi(rep_c)``.

    ::

        hodge = HodgeHomotopy(algebra, dminus)
        validate_hodge(algebra, dminus).ok  # True
        hodge.inclusion({0: 1})
    """

    def __init__(self, base, dminus):
        if (
            dminus.shift != -1 or
            dminus.source != base.space or
            dminus.target != base.space
        ):
            raise ContractViolation('d^- must be an endomorphism of degree -1.')
        self.base = base
        self.dminus = dminus
        self._report = None

    @classmethod
    def trivial(cls, base):
        """
        The zero homotopy, valid exactly when the differential vanishes.
        """
        return cls(base, GradedLinearMap.zero(base.space, base.space, -1))

    def validate(self):
        if self._report is None:
            self._report = validate_hodge(self.base, self.dminus)
        return self._report

    @cached_property
    def projector(self):
        d = self.base.d
        space = self.base.space
        return (
            GradedLinearMap.identity(space) -
            d.compose(self.dminus) -
            self.dminus.compose(d)
        )

    @cached_property
    def ring(self):
        return cohomology(self.base)

    @property
    def harmonic_space(self):
        return self.ring.space

    @cached_property
    def harmonic_vectors(self):
        return [self.projector(rep) for rep in self.ring.representatives]

    @cached_property
    def inclusion(self):
        """
        ``j``: harmonic space into the algebra.
        """
        return GradedLinearMap(
            self.harmonic_space,
            self.base.space,
            0,
            dict(enumerate(self.harmonic_vectors))
        )

    @cached_property
    def harmonic_projection(self):
        """
        ``pi`` followed by the coordinates in the harmonic basis.
        """
        space = self.base.space
        return GradedLinearMap(
            space,
            self.harmonic_space,
            0,
            {
                i: self.ring.class_of(self.projector({i: Fraction(1)}))
                for i in range(space.dim)
            }
        )

    @cached_property
    def class_map(self):
        """
        Harmonic space to cohomology, ``h -> [h]``.
        """
        return GradedLinearMap(
            self.harmonic_space,
            self.ring.space,
            0,
            {
                c: self.ring.class_of(vector)
                for c, vector in enumerate(self.harmonic_vectors)
            }
        )

    @cached_property
    def inverse_class_map(self):
        columns = {}
        for k in range(self.harmonic_space.top_degree + 1):
            indices = self.harmonic_space.indices(k)
            if not indices:
                continue
            matrix = inverse(self.class_map.matrix(k))
            for j, index in enumerate(indices):
                columns[index] = {
                    indices[i]: matrix[i][j]
                    for i in range(len(indices))
                    if matrix[i][j]
                }
        return GradedLinearMap(self.ring.space, self.harmonic_space, 0, columns)

    def splitting(self):
        """
        Per degree dimensions of the summands of
        ``A = H + d d^- A + d^- d A``.

        :returns: dict ``degree -> (harmonic, exact, coexact)``
        """
        space = self.base.space
        d = self.base.d
        exact = d.compose(self.dminus)
        coexact = self.dminus.compose(d)
        result = {}
        for k in range(space.top_degree + 1):
            size = space.dimension(k)
            result[k] = (
                rank(self.projector.matrix(k), size),
                rank(exact.matrix(k), size),
                rank(coexact.matrix(k), size),
            )
        return result

    def __repr__(self):
        return f'<HodgeHomotopy on {self.base!r}>'


def _basis_images(space, linear_map):
    for i in range(space.dim):
        yield i, linear_map({i: Fraction(1)})


def validate_hodge(algebra, dminus):
    """
    Check that ``dminus`` is a Hodge homotopy satisfying the side
    conditions.

    The identities ``d^- d^- = 0``, ``d^- d d^- = d^-`` and
    ``d d^- d = d`` are checked on every basis element, orthogonality on
    every basis pair of complementary degree, and the projector on the
    whole space.

    :raises InvalidAlgebra: if ``algebra`` is not a valid Poincare DGCA
    """
    _ensure_valid(algebra)
    hodge = HodgeHomotopy(algebra, dminus)
    space = algebra.space
    n = space.top_degree
    d = algebra.d
    report = ValidationReport()

    for i, value in _basis_images(space, dminus.compose(dminus)):
        if value:
            report.add(
                'dminus-squared', (space.name(i),), f'= {space.format(value)}'
            )
    for i in range(space.dim):
        x = {i: Fraction(1)}
        difference = subtract(dminus(d(dminus(x))), dminus(x))
        if difference:
            report.add(
                'dminus-d-dminus',
                (space.name(i),),
                f'd^- d d^- - d^- = {space.format(difference)}'
            )
        difference = subtract(d(dminus(d(x))), d(x))
        if difference:
            report.add(
                'd-dminus-d',
                (space.name(i),),
                f'd d^- d - d = {space.format(difference)}'
            )

    projector = hodge.projector
    images = [dminus({i: Fraction(1)}) for i in range(space.dim)]
    harmonics = [projector({i: Fraction(1)}) for i in range(space.dim)]
    for i, j in space.basis_tuples(2, min_total=n + 2, max_total=n + 2):
        if i > j:
            continue
        value = pairing(algebra, images[i], images[j])
        if value:
            report.add(
                'orthogonality-dminus',
                (space.name(i), space.name(j)),
                f'<d^- a, d^- b> = {value}'
            )
    for i, j in space.basis_tuples(2, min_total=n + 1, max_total=n + 1):
        value = pairing(algebra, harmonics[i], images[j])
        if value:
            report.add(
                'orthogonality-harmonic',
                (space.name(i), space.name(j)),
                f'<pi a, d^- b> = {value}'
            )

    for i in range(space.dim):
        difference = subtract(projector(harmonics[i]), harmonics[i])
        if difference:
            report.add(
                'projector-idempotent',
                (space.name(i),),
                f'pi pi - pi = {space.format(difference)}'
            )
    for label, composite in (
        ('d pi', d.compose(projector)),
        ('pi d', projector.compose(d)),
        ('d^- pi', dminus.compose(projector)),
        ('pi d^-', projector.compose(dminus)),
    ):
        for i, value in _basis_images(space, composite):
            if value:
                report.add(
                    'projector-closed',
                    (space.name(i),),
                    f'{label} = {space.format(value)}'
                )

    unit_image = dminus(algebra.unit_vector)
    if unit_image:
        report.add(
            'unit',
            (space.name(algebra.unit),),
            f'd^-(1) = {space.format(unit_image)}'
        )

    if not report.by_axiom('projector-closed'):
        ring = hodge.ring
        for k in range(n + 1):
            size = space.dimension(k)
            harmonic_rank = rank(projector.matrix(k), size)
            if harmonic_rank != ring.betti[k]:
                report.add(
                    'class-map',
                    (f'H^{k}',),
                    f'harmonic dimension {harmonic_rank} != betti {ring.betti[k]}'
                )
                continue
            indices = ring.space.indices(k)
            size = len(indices)
            if indices and rank(hodge.class_map.matrix(k), size) != size:
                report.add(
                    'class-map', (f'H^{k}',), 'harmonic vectors are not independent'
                )
    logger.debug('validated Hodge homotopy: %d violation(s)', len(report))
    return report


def ensure_valid_hodge(hodge):
    report = hodge.validate()
    if not report.ok:
        raise InvalidHodgeHomotopy(report)
    return hodge


def harmonic_projector(hodge):
    """
    The projector ``pi = id - d d^- - d^- d`` of a valid Hodge homotopy.
    """
    ensure_valid_hodge(hodge)
    return hodge.projector


def _gram_matrices(space, metric):
    grams = {}
    for k in range(space.top_degree + 1):
        size = space.dimension(k)
        rows = metric.get(k)
        if rows is None:
            grams[k] = identity(size)
            continue
        rows = [[Fraction(value) for value in row] for row in rows]
        if len(rows) != size or any(len(row) != size for row in rows):
            raise MetricError(
                f'Gram matrix in degree {k} must be {size}x{size}.'
            )
        if rows != transpose(rows, size):
            raise MetricError(f'Gram matrix in degree {k} is not symmetric.')
        if not is_positive_definite(rows):
            raise MetricNotPositiveDefinite(
                f'Gram matrix in degree {k} is not positive definite.'
            )
        grams[k] = rows
    unknown = set(metric) - set(grams)
    if unknown:
        raise MetricError(f'Metric given in unknown degree(s) {sorted(unknown)}.')
    return grams


def _green_solve(laplacian, columns, size):
    """
    Solve ``laplacian u = c`` for every column ``c`` with ``u`` in the image
    of the laplacian.
    """
    image = image_basis(laplacian, size)
    restricted = matmul(laplacian, transpose(image, size), size) if image else []
    solutions = []
    for column in columns:
        if not any(column):
            solutions.append([Fraction(0)] * size)
            continue
        coefficients = solve_linear(restricted, column, len(image))
        if coefficients is None:
            raise ContractViolation('Vector is outside the image of the Laplacian.')
        solutions.append([
            sum((c * vector[r] for c, vector in zip(coefficients, image)), Fraction(0))
            for r in range(size)
        ])
    return solutions


def construct_hodge_from_metric(algebra, metric=None):
    """
    Build the Hodge homotopy ``d^- = G d*`` of a metric.

    ``d*`` is the adjoint of ``d`` with respect to the per degree Gram
    matrices, ``G`` the Green operator of the Laplacian ``d d* + d* d``.
    The result is re-validated against the Poincare pairing.

    :param metric: mapping ``degree -> Gram matrix`` in basis order; missing
        degrees use the identity
    :raises MetricNotPositiveDefinite: if a Gram matrix is not positive
        definite
    :raises MetricIncompatible: if the induced homotopy violates
        orthogonality
    """
    _ensure_valid(algebra)
    space = algebra.space
    n = space.top_degree
    grams = _gram_matrices(space, metric or {})
    dims = space.dims

    def dimension(k):
        return dims[k] if 0 <= k <= n else 0

    # adjoint[k]: degree k + 1 -> degree k
    adjoint = {}
    for k in range(n):
        D = algebra.d.matrix(k)
        if not dimension(k) or not dimension(k + 1):
            adjoint[k] = [[Fraction(0)] * dimension(k + 1) for _ in range(dimension(k))]
            continue
        adjoint[k] = matmul(
            matmul(inverse(grams[k]), transpose(D, dimension(k)), dimension(k)),
            grams[k + 1],
            dimension(k + 1)
        )

    matrices = {}
    for k in range(1, n + 1):
        lower = dimension(k - 1)
        if not lower or not dimension(k):
            continue
        laplacian = [[Fraction(0)] * lower for _ in range(lower)]
        if k - 2 >= 0 and dimension(k - 2):
            up = matmul(algebra.d.matrix(k - 2), adjoint[k - 2], dimension(k - 2))
            laplacian = [
                [a + b for a, b in zip(row, other)] for row, other in zip(laplacian, up)
            ]
        down = matmul(adjoint[k - 1], algebra.d.matrix(k - 1), dimension(k))
        laplacian = [
            [a + b for a, b in zip(row, other)] for row, other in zip(laplacian, down)
        ]
        columns = transpose(adjoint[k - 1], dimension(k))
        solutions = _green_solve(laplacian, columns, lower)
        matrices[k] = transpose(solutions, lower)
        logger.debug(
            'degree %d: Laplacian rank %d', k - 1, rank(laplacian, lower)
        )

    dminus = GradedLinearMap.from_matrices(space, space, -1, matrices)
    report = validate_hodge(algebra, dminus)
    orthogonality = [
        v for v in report if v.axiom.startswith('orthogonality')
    ]
    if orthogonality:
        logger.warning(
            'metric rejected for %s: %d orthogonality violation(s)',
            algebra.name or 'algebra', len(orthogonality)
        )
        raise MetricIncompatible(
            'Metric is incompatible with the Poincare pairing: '
            + '; '.join(str(v) for v in orthogonality),
            report=report
        )
    if not report.ok:
        raise InvalidHodgeHomotopy(report)
    hodge = HodgeHomotopy(algebra, dminus)
    hodge._report = report
    return hodge


@dataclass
class QShapeReport:
    """
    Degree profile check of a small quotient algebra.

    ``violations`` holds ``(degree, rule, detail)`` triples in degree order.
    """
    r: int
    n: int
    harmonic_dims: tuple
    acyclic_dims: tuple
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    @property
    def first_violation(self):
        return self.violations[0][0] if self.violations else None


def _band(k, r, n):
    if k == 0:
        return 'unit-degree'
    if k == n:
        return 'top-degree'
    if 1 <= k <= r - 1:
        return 'connected-band'
    if n - r + 1 <= k <= n - 1:
        return 'coconnected-band'
    if r <= k <= 2 * r - 2 or n - 2 * r + 2 <= k <= n - r:
        return 'harmonic-band'
    return 'acyclic-band'


def qshape_check(hodge, r):
    """
    Check the degree profile of a small quotient algebra for an
    ``(r - 1)``-connected algebra of dimension ``n``.

    Degree 0 and ``n`` are one dimensional, degrees ``1..r-1`` and
    ``n-r+1..n-1`` vanish, degrees ``r..2r-2`` and ``n-2r+2..n-r`` are
    purely harmonic, and the acyclic part may only live in
    ``2r-1..n-2r+1``.

    :raises ContractViolation: if ``r`` exceeds the connectivity of the
        algebra or the chain pairing is degenerate
    """
    ensure_valid_hodge(hodge)
    algebra = hodge.base
    if r < 1 or r > connectivity(algebra):
        raise ContractViolation(
            f'r = {r} is inconsistent with connectivity {connectivity(algebra)}.'
        )
    if not is_nondegenerate(algebra):
        raise ContractViolation('The chain level pairing is degenerate.')
    space = algebra.space
    n = space.top_degree
    betti = hodge.ring.betti
    harmonic = tuple(betti)
    acyclic = tuple(space.dimension(k) - betti[k] for k in range(n + 1))
    report = QShapeReport(r, n, harmonic, acyclic)
    for k in range(n + 1):
        band = _band(k, r, n)
        dim = space.dimension(k)
        if band in ('unit-degree', 'top-degree'):
            if dim != 1 or harmonic[k] != 1:
                report.violations.append(
                    (k, band, f'dimension {dim}, harmonic {harmonic[k]}')
                )
        elif band in ('connected-band', 'coconnected-band'):
            if dim:
                report.violations.append((k, band, f'dimension {dim}'))
        elif band == 'harmonic-band':
            if acyclic[k]:
                report.violations.append(
                    (k, band, f'acyclic dimension {acyclic[k]}')
                )
    logger.info(
        'shape check r=%d n=%d: %d violation(s)', r, n, len(report.violations)
    )
    return report


def hodge_family_check(algebra, metrics, workers=None):
    """
    Transfer along the Hodge homotopy of every metric and collect the
    distinct cohomology level ``mu_3`` tables.
    """
    from .transfer import transfer, transfer_to_cohomology

    distinct = []
    for metric in metrics:
        hodge = construct_hodge_from_metric(algebra, metric)
        structure = transfer_to_cohomology(
            transfer(hodge, max_arity=3, workers=workers)
        )
        mu3 = structure.operations[3]
        if all(mu3 != other for other in distinct):
            distinct.append(mu3)
    return distinct
