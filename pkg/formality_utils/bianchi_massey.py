"""
The Bianchi-Massey tensor of a Hodge homotopy.

For ``e = a (.) b`` in the symmetric square of cohomology write
``alpha_2(e) = j(a) j(b)`` and ``gamma(e) = d^- alpha_2(e)``. The tensor is

::

    Xi(e (.) e') = [pi(gamma(e) alpha_2(e') + (-1) ** deg(e) alpha_2(e) gamma(e'))]

Its restriction to the kernel ``K`` of the multiplication map carries the
same information as the first obstruction to formality.
"""
import logging
from fractions import Fraction
from functools import cached_property

from .exceptions import ContractViolation, MismatchedInputs
from .functions.linalg import kernel_basis
from .functions.signs import koszul_sign
from .hodge import ensure_valid_hodge
from .pdgca import ValidationReport
from .primitives.graded import accumulate, MultilinearMap
from .utils import sign

logger = logging.getLogger(__name__)


def symmetric_normal_form(space, indices):
    """
    Sort a graded symmetric monomial.

    :returns: ``(sign, sorted_indices)``; the sign is 0 when an odd class
        repeats
    """
    indices = tuple(indices)
    degrees = [space.degree(i) for i in indices]
    arrangement = tuple(sorted(range(len(indices)), key=lambda t: indices[t]))
    ordered = tuple(indices[t] for t in arrangement)
    for first, second in zip(ordered, ordered[1:]):
        if first == second and space.degree(first) % 2:
            return 0, ordered
    return int(koszul_sign(arrangement, degrees)), ordered


class SymmetricSquareElement:
    """
    A formal sum of monomials ``a (.) b`` of cohomology classes, stored on
    sorted index pairs.

    ::

        e = SymmetricSquareElement.monomial(space, x, y)
        e.degree  # |x| + |y|
    """

    def __init__(self, space, terms=None):
        self.space = space
        self.terms = {}
        for pair, value in (terms or {}).items():
            self.add(pair, value)

    @classmethod
    def monomial(cls, space, left, right, coefficient=1):
        return cls(space, {(left, right): coefficient})

    @classmethod
    def from_class(cls, space, vector, unit):
        """
        A single class ``x`` embedded as ``x (.) 1``.
        """
        element = cls(space)
        for index, value in vector.items():
            element.add((index, unit), value)
        return element

    def add(self, pair, value):
        factor, ordered = symmetric_normal_form(self.space, pair)
        if not factor or not value:
            return
        total = self.terms.get(ordered, 0) + Fraction(value) * factor
        if total:
            self.terms[ordered] = total
        else:
            self.terms.pop(ordered, None)

    @property
    def degree(self):
        degrees = {
            self.space.degree(i) + self.space.degree(j) for i, j in self.terms
        }
        if len(degrees) > 1:
            raise ContractViolation('Element is not homogeneous.')
        return degrees.pop() if degrees else 0

    def __add__(self, other):
        result = SymmetricSquareElement(self.space, self.terms)
        for pair, value in other.terms.items():
            result.add(pair, value)
        return result

    def __rmul__(self, coefficient):
        return SymmetricSquareElement(
            self.space,
            {pair: Fraction(coefficient) * value for pair, value in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-1) * other

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SymmetricSquareElement):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    __hash__ = None

    def format(self):
        if not self.terms:
            return '0'
        return ' + '.join(
            f'{value}*({self.space.name(i)}.{self.space.name(j)})'
            for (i, j), value in sorted(self.terms.items())
        )

    def __repr__(self):
        return f'<SymmetricSquareElement {self.format()}>'


def alpha2(hodge, element):
    """
    Product of harmonic representatives, extended linearly.
    """
    harmonics = hodge.harmonic_vectors
    total = {}
    for (i, j), value in element.terms.items():
        accumulate(total, hodge.base.mul(harmonics[i], harmonics[j]), value)
    return total


def gamma(hodge, element):
    return hodge.dminus(alpha2(hodge, element))


def _monomials(space):
    pairs = []
    for i in range(space.dim):
        for j in range(i, space.dim):
            if i == j and space.degree(i) % 2:
                continue
            pairs.append((i, j))
    return pairs


class BianchiMasseyTensor:
    """
    Values of the tensor on every ordered pair of symmetric square
    monomials, in harmonic coordinates.
    """

    def __init__(self, hodge, table=None):
        self.hodge = hodge
        self.space = hodge.harmonic_space
        self.monomials = _monomials(self.space)
        if table is None:
            table = self._tabulate()
        self.table = table

    def _monomial_degree(self, pair):
        return self.space.degree(pair[0]) + self.space.degree(pair[1])

    def _tabulate(self):
        hodge = self.hodge
        n = self.space.top_degree
        elements = {
            pair: SymmetricSquareElement.monomial(self.space, *pair)
            for pair in self.monomials
        }
        alphas = {pair: alpha2(hodge, e) for pair, e in elements.items()}
        gammas = {pair: hodge.dminus(alphas[pair]) for pair in self.monomials}
        mul = hodge.base.mul
        table = {}
        for first in self.monomials:
            for second in self.monomials:
                degree = self._monomial_degree(first) + self._monomial_degree(second)
                if degree - 1 > n:
                    continue
                chain = mul(gammas[first], alphas[second])
                accumulate(
                    chain,
                    mul(alphas[first], gammas[second]),
                    sign(self._monomial_degree(first))
                )
                value = hodge.harmonic_projection(chain)
                if value:
                    table[(first, second)] = value
        logger.debug(
            'bianchi-massey tensor: %d monomials, %d nonzero entries',
            len(self.monomials), len(table)
        )
        return table

    def value(self, first, second):
        """
        The tensor on a pair of monomials.
        """
        return dict(self.table.get((tuple(first), tuple(second)), {}))

    def __call__(self, first, second):
        """
        Bilinear evaluation on two :class:`SymmetricSquareElement` values.
        """
        total = {}
        for left, a in first.terms.items():
            for right, b in second.terms.items():
                accumulate(total, self.value(left, right), a * b)
        return total

    def with_value(self, first, second, vector):
        """
        A copy with the entry on ``(first, second)`` replaced.
        """
        table = dict(self.table)
        key = (tuple(first), tuple(second))
        if vector:
            table[key] = dict(vector)
        else:
            table.pop(key, None)
        return BianchiMasseyTensor(self.hodge, table)

    def is_zero(self):
        return not self.table

    @cached_property
    def kernel_basis(self):
        """
        Basis of ``K``, the kernel of the multiplication map on the
        symmetric square, degree by degree.
        """
        ring = self.hodge.ring
        basis = []
        by_degree = {}
        for pair in self.monomials:
            by_degree.setdefault(self._monomial_degree(pair), []).append(pair)
        for degree, pairs in sorted(by_degree.items()):
            if degree > self.space.top_degree:
                basis.extend(
                    SymmetricSquareElement.monomial(self.space, *pair)
                    for pair in pairs
                )
                continue
            outputs = self.space.indices(degree)
            columns = [ring.product.on_basis(pair) for pair in pairs]
            rows = [[column.get(j, 0) for column in columns] for j in outputs]
            for vector in kernel_basis(rows, len(pairs)):
                basis.append(SymmetricSquareElement(
                    self.space,
                    {pair: value for pair, value in zip(pairs, vector) if value}
                ))
        return basis

    def restricted(self):
        """
        The restriction to ``K (.) K``: ``{(p, q): value}`` on indices into
        :attr:`kernel_basis` with ``p <= q``.
        """
        kernel = self.kernel_basis
        result = {}
        for p, first in enumerate(kernel):
            for q in range(p, len(kernel)):
                value = self(first, kernel[q])
                if value:
                    result[(p, q)] = value
        return result

    def is_zero_on_kernel(self):
        return not self.restricted()

    @cached_property
    def bianchi_basis(self):
        """
        Basis of the kernel of ``Sym^2 K -> Sym^4 H``.

        Each element is a list of ``(coefficient, p, q)`` with indices into
        :attr:`kernel_basis`.
        """
        kernel = self.kernel_basis
        space = self.space
        candidates = {}
        for p, first in enumerate(kernel):
            for q in range(p, len(kernel)):
                second = kernel[q]
                if p == q and first.degree % 2:
                    continue
                degree = first.degree + second.degree
                image = {}
                for left, a in first.terms.items():
                    for right, b in second.terms.items():
                        factor, ordered = symmetric_normal_form(space, left + right)
                        if factor:
                            image[ordered] = image.get(ordered, 0) + factor * a * b
                candidates.setdefault(degree, []).append(((p, q), image))
        basis = []
        for degree, entries in sorted(candidates.items()):
            coordinates = sorted({
                key for _, image in entries for key, value in image.items() if value
            })
            rows = [
                [image.get(key, 0) for _, image in entries] for key in coordinates
            ]
            for vector in kernel_basis(rows, len(entries)):
                basis.append([
                    (value, p, q)
                    for ((p, q), _), value in zip(entries, vector)
                    if value
                ])
        return basis

    def bianchi_value(self, element):
        kernel = self.kernel_basis
        total = {}
        for coefficient, p, q in element:
            accumulate(total, self(kernel[p], kernel[q]), coefficient)
        return total

    def vanishes_on_bianchi(self):
        return all(not self.bianchi_value(e) for e in self.bianchi_basis)

    def __repr__(self):
        return (
            f'<BianchiMasseyTensor monomials={len(self.monomials)} '
            f'entries={len(self.table)}>'
        )


def bianchi_massey(hodge):
    """
    The Bianchi-Massey tensor of a valid Hodge homotopy.
    """
    ensure_valid_hodge(hodge)
    tensor = BianchiMasseyTensor(hodge)
    logger.info('computed bianchi-massey tensor on %d classes', tensor.space.dim)
    return tensor


def _check_same_space(tensor, mu3):
    if tensor.space != mu3.ring.space:
        raise MismatchedInputs(
            'The tensor and mu_3 live on different cohomology rings.'
        )


def verify_harr_to_sym(tensor, mu3):
    """
    Check on every basis triple that

    ::

        mu3(x, y, z) = -x Xi(y, z) + Xi(x.y, z) - Xi(x, y.z) + Xi(x, y) z

    where a single class ``x`` stands for ``x (.) 1``.

    :raises MismatchedInputs: if the inputs live on different rings
    """
    _check_same_space(tensor, mu3)
    space = tensor.space
    ring = mu3.ring
    product = ring.product
    unit = ring.unit

    def single(i):
        return SymmetricSquareElement.monomial(space, i, unit)

    report = ValidationReport()
    for key in MultilinearMap.keys_for(3, space, space, -1):
        x, y, z = key
        expected = mu3.map.on_basis(key)
        total = {}
        accumulate(total, product({x: Fraction(1)}, tensor(single(y), single(z))), -1)
        accumulate(
            total, tensor(SymmetricSquareElement.monomial(space, x, y), single(z))
        )
        accumulate(
            total,
            tensor(single(x), SymmetricSquareElement.monomial(space, y, z)),
            -1
        )
        accumulate(total, product(tensor(single(x), single(y)), {z: Fraction(1)}))
        accumulate(total, expected, -1)
        if total:
            report.add(
                'harr-to-sym',
                tuple(space.name(i) for i in key),
                f'mu_3 = {space.format(expected)}, '
                f'difference {space.format(total)}'
            )
    return report


def bm_equivalence(tensor, obstruction):
    """
    Whether the tensor and the obstruction agree on formality: the tensor
    vanishes on the Bianchi subspace exactly when ``[mu_3] = 0``.

    :raises MismatchedInputs: if the inputs live on different rings
    """
    _check_same_space(tensor, obstruction.mu3)
    return tensor.vanishes_on_bianchi() == obstruction.solvable


def top_degree_reduction(tensor, first, second):
    """
    Both sides of the reduction of a top degree value to the kernel:
    ``Xi(a.b, c.d)`` and ``Xi(e, e')`` with ``e = a.b - (ab).1``.

    :raises ContractViolation: if the value does not land in the top degree
    """
    space = tensor.space
    ring = tensor.hodge.ring
    degree = sum(space.degree(i) for i in tuple(first) + tuple(second)) - 1
    if degree != space.top_degree:
        raise ContractViolation(
            f'Degree {degree} is not the top degree {space.top_degree}.'
        )

    def reduced(pair):
        element = SymmetricSquareElement.monomial(space, *pair)
        product = ring.product.on_basis(tuple(pair))
        return element - SymmetricSquareElement.from_class(space, product, ring.unit)

    left = tensor(
        SymmetricSquareElement.monomial(space, *first),
        SymmetricSquareElement.monomial(space, *second)
    )
    right = tensor(reduced(first), reduced(second))
    return left, right
