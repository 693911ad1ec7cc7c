"""
Poincare differential graded commutative algebras.

A :class:`PDGCA` is a finite dimensional graded commutative algebra with a
degree one differential and an integration functional on the top degree.
:func:`validate_pdgca` checks every axiom and returns a
:class:`ValidationReport`; operations that need a valid algebra raise
:class:`~formality_utils.exceptions.InvalidAlgebra` with that report.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exceptions import ContractViolation, InvalidAlgebra, NotConnected
from .functions.linalg import image_basis, kernel_basis, rank, rref, solve_linear
from .primitives.graded import (
    accumulate,
    dense,
    GradedLinearMap,
    GradedVectorSpace,
    MultilinearMap,
    sparse,
    subtract
)
from .utils import sign, str_coercible, to_scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    """
    One failed axiom instance.

    :param axiom: short axiom identifier, e.g. ``'leibniz'``
    :param arguments: names of the basis elements the check was run on
    :param detail: human readable description of the mismatch
    """
    axiom: str
    arguments: tuple = ()
    detail: str = ''

    def __str__(self):
        arguments = ', '.join(self.arguments)
        text = f'{self.axiom}({arguments})'
        if self.detail:
            text += f': {self.detail}'
        return text


@str_coercible
class ValidationReport:
    """
    An ordered list of :class:`Violation` entries. An empty report means
    every checked axiom holds.
    """

    def __init__(self, violations=()):
        self.violations = list(violations)

    def add(self, axiom, arguments=(), detail=''):
        self.violations.append(Violation(axiom, tuple(arguments), detail))

    def extend(self, other):
        self.violations.extend(other.violations)

    @property
    def ok(self):
        return not self.violations

    def by_axiom(self, axiom):
        return [v for v in self.violations if v.axiom == axiom]

    @property
    def axioms(self):
        return sorted({v.axiom for v in self.violations})

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def __unicode__(self):
        if not self.violations:
            return 'ok'
        return '; '.join(str(v) for v in self.violations)

    def __repr__(self):
        return f'<ValidationReport violations={len(self.violations)}>'


class PDGCA:
    """
    A finite dimensional Poincare DGCA candidate.

    :param space: the underlying :class:`GradedVectorSpace`; its top degree
        is the formal dimension ``n``
    :param mul: the product, a :class:`MultilinearMap` of arity 2 and
        internal degree 0 defined on every ordered basis pair
    :param d: the differential, a :class:`GradedLinearMap` of shift 1
    :param integral: mapping from degree ``n`` basis indices to the value of
        the integration functional
    :param unit: basis index of the unit; defaults to the first degree zero
        basis element
    :param name: optional algebra name used in reports
    """

    def __init__(self, space, mul, d, integral, unit=None, name=None):
        if mul.arity != 2 or mul.degree != 0:
            raise ContractViolation('The product must be bilinear of degree 0.')
        if mul.source != space or mul.target != space:
            raise ContractViolation('The product is not defined on this space.')
        if d.shift != 1 or d.source != space or d.target != space:
            raise ContractViolation(
                'The differential must be an endomorphism of degree 1.'
            )
        n = space.top_degree
        values = {}
        for index, value in integral.items():
            if space.degree(index) != n:
                raise ContractViolation(
                    f"Cannot integrate '{space.name(index)}' of degree "
                    f'{space.degree(index)}; integration lives in degree {n}.'
                )
            value = to_scalar(value)
            if value:
                values[index] = value
        if unit is None:
            if not space.indices(0):
                raise ContractViolation('The space has no degree 0 element.')
            unit = space.indices(0)[0]
        elif space.degree(unit) != 0:
            raise ContractViolation(f"Unit '{space.name(unit)}' is not of degree 0.")
        self.space = space
        self.mul = mul
        self.d = d
        self.integral = values
        self.unit = unit
        self.name = name
        self._report = None
        self._cohomology = None

    @classmethod
    def from_products(
        cls, space, products, differential, integral, unit=None, name=None
    ):
        """
        Build an algebra from a canonical half of the product table.

        Missing mirrored products are derived by graded commutativity and
        missing unit products by ``1 . x = x . 1 = x``. Entries given
        explicitly are never overwritten, so invalid input survives to
        :func:`validate_pdgca`.

        :param products: mapping ``(i, j) -> vector``
        :param differential: mapping ``i -> vector``
        """
        if unit is None and space.indices(0):
            unit = space.indices(0)[0]
        table = {tuple(key): dict(value) for key, value in products.items()}
        for (i, j), value in list(table.items()):
            if (j, i) not in table:
                coefficient = sign(space.degree(i) * space.degree(j))
                table[(j, i)] = {k: coefficient * v for k, v in value.items()}
        if unit is not None:
            for i in range(space.dim):
                table.setdefault((unit, i), {i: Fraction(1)})
                table.setdefault((i, unit), {i: Fraction(1)})
        mul = MultilinearMap(2, space, space, 0, table)
        d = GradedLinearMap(space, space, 1, differential)
        return cls(space, mul, d, integral, unit=unit, name=name)

    @property
    def top_degree(self):
        return self.space.top_degree

    @property
    def unit_vector(self):
        return {self.unit: Fraction(1)}

    def multiply(self, left, right):
        return self.mul(left, right)

    def product(self, *vectors):
        """
        Iterated product of any number of vectors, bracketed to the left.
        """
        if not vectors:
            return self.unit_vector
        result = vectors[0]
        for vector in vectors[1:]:
            result = self.mul(result, vector)
        return result

    def differential(self, vector):
        return self.d(vector)

    def integrate(self, vector):
        return sum(
            (value * vector.get(index, 0) for index, value in self.integral.items()),
            Fraction(0)
        )

    def with_differential(self, columns):
        """
        Copy of this algebra with the differential replaced.
        """
        d = GradedLinearMap(self.space, self.space, 1, columns)
        return PDGCA(self.space, self.mul, d, self.integral, self.unit, self.name)

    def with_products(self, table):
        """
        Copy of this algebra whose product table has the given ordered
        entries replaced. No symmetry completion is applied.
        """
        entries = dict(self.mul.items())
        for key, value in table.items():
            entries[tuple(key)] = value
        mul = MultilinearMap(2, self.space, self.space, 0, entries)
        return PDGCA(self.space, mul, self.d, self.integral, self.unit, self.name)

    def __repr__(self):
        name = self.name or 'unnamed'
        return f'<PDGCA {name} n={self.top_degree} dims={self.space.dims}>'


def _format_pair(space, *indices):
    return tuple(space.name(i) for i in indices)


def _check_algebra_axioms(algebra, report):
    space = algebra.space
    n = space.top_degree
    mul = algebra.mul.on_basis

    for i, j in space.basis_tuples(2, max_total=n):
        if i > j:
            continue
        expected = {
            k: sign(space.degree(i) * space.degree(j)) * v
            for k, v in mul((j, i)).items()
        }
        difference = subtract(mul((i, j)), expected)
        if difference:
            report.add(
                'commutativity',
                _format_pair(space, i, j),
                f'a.b - (-1)^|a||b| b.a = {space.format(difference)}'
            )

    for i, j, k in space.basis_tuples(3, max_total=n):
        left = algebra.mul(mul((i, j)), {k: Fraction(1)})
        right = algebra.mul({i: Fraction(1)}, mul((j, k)))
        difference = subtract(left, right)
        if difference:
            report.add(
                'associativity',
                _format_pair(space, i, j, k),
                f'(a.b).c - a.(b.c) = {space.format(difference)}'
            )

    unit = algebra.unit
    for i in range(space.dim):
        for key in ((unit, i), (i, unit)):
            difference = subtract(mul(key), {i: Fraction(1)})
            if difference:
                report.add(
                    'unit',
                    _format_pair(space, *key),
                    f'product differs from {space.name(i)} by '
                    f'{space.format(difference)}'
                )


def _check_differential_axioms(algebra, report):
    space = algebra.space
    n = space.top_degree
    d = algebra.d

    for i in range(space.dim):
        value = d(d({i: Fraction(1)}))
        if value:
            report.add(
                'd-squared', (space.name(i),), f'd(d(x)) = {space.format(value)}'
            )

    for i, j in space.basis_tuples(2, max_total=n - 1):
        a = {i: Fraction(1)}
        b = {j: Fraction(1)}
        expected = algebra.mul(d(a), b)
        accumulate(expected, algebra.mul(a, d(b)), sign(space.degree(i)))
        difference = subtract(d(algebra.mul(a, b)), expected)
        if difference:
            report.add(
                'leibniz',
                _format_pair(space, i, j),
                f'd(a.b) - da.b - (-1)^|a| a.db = {space.format(difference)}'
            )

    for i in space.indices(n - 1):
        value = algebra.integrate(d({i: Fraction(1)}))
        if value:
            report.add(
                'integral-of-exact', (space.name(i),), f'integral of dx = {value}'
            )


def validate_pdgca(algebra):
    """
    Check every Poincare DGCA axiom on basis elements.

    Commutativity is checked on unordered pairs, associativity on triples,
    Leibniz on ordered pairs and the integral on exact top degree forms.
    Nondegeneracy of the cohomology pairing is only checked once the
    differential squares to zero.

    ::

        report = validate_pdgca(algebra)
        report.ok  # True
    """
    if algebra._report is not None:
        return algebra._report
    report = ValidationReport()
    _check_algebra_axioms(algebra, report)
    _check_differential_axioms(algebra, report)
    if not report.by_axiom('d-squared'):
        ring = _compute_cohomology(algebra)
        n = algebra.top_degree
        for k in range(n + 1):
            rows = ring.pairing_matrix(k)
            size = ring.space.dimension(k)
            complement = ring.space.dimension(n - k)
            if size != complement or (size and rank(rows, complement) != size):
                report.add(
                    'poincare-duality',
                    (f'H^{k}', f'H^{n - k}'),
                    f'pairing matrix {rows} is degenerate'
                )
    logger.debug(
        'validated %s: %d violation(s)', algebra.name or 'algebra', len(report)
    )
    algebra._report = report
    return report


def _ensure_valid(algebra):
    report = validate_pdgca(algebra)
    if not report.ok:
        raise InvalidAlgebra(report)


class CohomologyRing:
    """
    The cohomology of a :class:`PDGCA` with chosen closed representatives.

    ``space`` is a :class:`GradedVectorSpace` whose basis elements are the
    classes; each class is named after a basis element of the algebra that
    occurs in its representative. ``product`` is the induced cup product.
    """

    def __init__(self, algebra, space, representatives, boundaries):
        self.algebra = algebra
        self.space = space
        self.representatives = [dict(r) for r in representatives]
        self._boundaries = boundaries
        self.integral = {
            i: algebra.integrate(self.representatives[i])
            for i in space.indices(space.top_degree)
        }

    @cached_property
    def unit(self):
        """
        Index of the class of the algebra unit.
        """
        coordinates = self.class_of(self.algebra.unit_vector)
        if len(coordinates) != 1:
            raise ContractViolation('The unit does not represent a basis class.')
        index, value = next(iter(coordinates.items()))
        if value != 1:
            raise ContractViolation('The unit does not represent a basis class.')
        return index

    @cached_property
    def product(self):
        representatives = self.representatives
        return MultilinearMap.from_function(
            2, self.space, self.space, 0,
            lambda key: self.class_of(
                self.algebra.mul(representatives[key[0]], representatives[key[1]])
            )
        )

    @property
    def betti(self):
        return self.space.dims

    @property
    def top_degree(self):
        return self.space.top_degree

    def lift(self, vector):
        """
        Chain level representative of a class vector.
        """
        result = {}
        for index, value in vector.items():
            accumulate(result, self.representatives[index], value)
        return result

    def class_of(self, vector):
        """
        Coordinates of the class of a closed vector in the class basis.

        :raises ContractViolation: if ``vector`` is not closed
        """
        result = {}
        algebra_space = self.algebra.space
        for degree in sorted({algebra_space.degree(i) for i in vector}):
            component = algebra_space.component(vector, degree)
            indices = algebra_space.indices(degree)
            classes = self.space.indices(degree)
            columns = list(self._boundaries[degree]) + [
                dense(self.representatives[c], indices) for c in classes
            ]
            rows = [[column[r] for column in columns] for r in range(len(indices))]
            solution = solve_linear(rows, dense(component, indices), len(columns))
            if solution is None:
                raise ContractViolation(
                    f'{algebra_space.format(component)} is not closed.'
                )
            offset = len(self._boundaries[degree])
            accumulate(result, sparse(solution[offset:], classes))
        return result

    def multiply(self, left, right):
        return self.product(left, right)

    def integrate(self, vector):
        return sum(
            (value * vector.get(index, 0) for index, value in self.integral.items()),
            Fraction(0)
        )

    def pairing(self, left, right):
        if not left or not right:
            return Fraction(0)
        degree = self.space.vector_degree(left) + self.space.vector_degree(right)
        if degree != self.top_degree:
            return Fraction(0)
        return self.integrate(self.product(left, right))

    def pairing_matrix(self, degree):
        """
        Matrix of the cup product pairing ``H^k x H^(n-k) -> Q``, evaluated
        on representatives.
        """
        complement = self.top_degree - degree
        return [
            [
                self.algebra.integrate(self.algebra.mul(
                    self.representatives[i], self.representatives[j]
                ))
                for j in self.space.indices(complement)
            ]
            for i in self.space.indices(degree)
        ]

    def rebased(self, representatives):
        """
        The same ring presented with other representatives of the same
        classes, in class order.

        :raises ContractViolation: if a representative lies in another class
        """
        representatives = list(representatives)
        if len(representatives) != self.space.dim:
            raise ContractViolation('One representative per class is required.')
        for index, vector in enumerate(representatives):
            if self.class_of(vector) != {index: Fraction(1)}:
                raise ContractViolation(
                    f"Representative for '{self.space.name(index)}' is in "
                    'another class.'
                )
        return CohomologyRing(
            self.algebra, self.space, representatives, self._boundaries
        )

    def __repr__(self):
        return f'<CohomologyRing betti={self.betti}>'


def _compute_cohomology(algebra):
    if algebra._cohomology is not None:
        return algebra._cohomology
    space = algebra.space
    n = space.top_degree
    basis = []
    representatives = []
    boundaries = {}
    for k in range(n + 1):
        indices = space.indices(k)
        size = len(indices)
        cycles = kernel_basis(algebra.d.matrix(k), size)
        if k:
            image = image_basis(algebra.d.matrix(k - 1), space.dimension(k - 1))
        else:
            image = []
        boundaries[k] = image
        columns = image + cycles
        rows = [[column[r] for column in columns] for r in range(size)]
        _, pivots = rref(rows, len(columns))
        for pivot in pivots:
            if pivot < len(image):
                continue
            vector = cycles[pivot - len(image)]
            last = max(r for r in range(size) if vector[r])
            basis.append((space.name(indices[last]), k))
            representatives.append(sparse(vector, indices))
        logger.debug(
            'degree %d: dim %d, cycles %d, boundaries %d',
            k, size, len(cycles), len(image)
        )
    classes = GradedVectorSpace(n, basis)
    ring = CohomologyRing(algebra, classes, representatives, boundaries)
    algebra._cohomology = ring
    return ring


def cohomology(algebra):
    """
    Cohomology ring of a valid algebra.

    Representatives are the first cycles, in kernel basis order, completing
    a basis of the boundaries; the result is deterministic.

    :raises InvalidAlgebra: if :func:`validate_pdgca` reports violations
    """
    _ensure_valid(algebra)
    return _compute_cohomology(algebra)


def pairing(algebra, left, right):
    """
    Chain level Poincare pairing ``<a, b> = integral of a.b``. Zero unless
    the degrees add up to the top degree.
    """
    if not left or not right:
        return Fraction(0)
    space = algebra.space
    degree = space.vector_degree(left) + space.vector_degree(right)
    if degree != space.top_degree:
        return Fraction(0)
    return algebra.integrate(algebra.mul(left, right))


def connectivity(algebra):
    """
    The largest ``r`` such that the algebra is ``(r - 1)``-connected.

    :raises NotConnected: if ``H^0`` is not one dimensional
    """
    betti = cohomology(algebra).betti
    if betti[0] != 1:
        raise NotConnected(f'H^0 has dimension {betti[0]}.')
    for k in range(1, len(betti)):
        if betti[k]:
            return k
    return len(betti)


def chain_pairing_matrix(algebra, degree):
    space = algebra.space
    return [
        [
            pairing(algebra, {i: Fraction(1)}, {j: Fraction(1)})
            for j in space.indices(space.top_degree - degree)
        ]
        for i in space.indices(degree)
    ]


def is_nondegenerate(algebra):
    """
    Whether the chain level pairing has zero radical.
    """
    _ensure_valid(algebra)
    space = algebra.space
    n = space.top_degree
    for k in range(n + 1):
        size = space.dimension(k)
        if size != space.dimension(n - k):
            return False
        if size and rank(chain_pairing_matrix(algebra, k), size) != size:
            return False
    return True
