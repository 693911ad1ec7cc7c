"""
Graded vector spaces and graded (multi)linear maps with exact coefficients.

Elements are sparse vectors: dictionaries mapping a basis index to a nonzero
:class:`~fractions.Fraction`. Basis indices are global; a
:class:`GradedVectorSpace` orders its basis by degree and, within one degree,
by declaration order.
"""
import itertools
from fractions import Fraction

from ..exceptions import ContractViolation
from ..utils import format_scalar, str_coercible, to_scalar


def clean(vector):
    """
    Drop zero coefficients from a sparse vector.
    """
    return {index: value for index, value in vector.items() if value}


def accumulate(target, vector, coefficient=1):
    """
    In-place ``target += coefficient * vector``.
    """
    if not coefficient:
        return target
    for index, value in vector.items():
        total = target.get(index, 0) + coefficient * value
        if total:
            target[index] = total
        else:
            target.pop(index, None)
    return target


def combine(terms):
    """
    Sum of ``coefficient * vector`` over an iterable of pairs.
    """
    result = {}
    for coefficient, vector in terms:
        accumulate(result, vector, coefficient)
    return result


def scale(vector, coefficient):
    if not coefficient:
        return {}
    return {index: coefficient * value for index, value in vector.items()}


def subtract(left, right):
    return accumulate(dict(left), right, -1)


def dense(vector, indices):
    return [vector.get(index, Fraction(0)) for index in indices]


def sparse(values, indices):
    return {index: Fraction(value) for index, value in zip(indices, values) if value}


@str_coercible
class GradedVectorSpace:
    """
    A finite dimensional graded vector space concentrated in degrees
    ``0..top_degree`` with named basis elements.

    ::

        space = GradedVectorSpace(3, [('1', 0), ('x', 3)])
        space.dims  # (1, 0, 0, 1)
    """

    def __init__(self, top_degree, basis):
        if isinstance(top_degree, bool) or not isinstance(top_degree, int):
            raise ContractViolation(f'Top degree {top_degree!r} is not an integer.')
        if top_degree < 0:
            raise ContractViolation(f'Top degree {top_degree} is negative.')
        entries = list(basis)
        seen = set()
        for name, degree in entries:
            if not isinstance(name, str) or not name:
                raise ContractViolation(f'Basis name {name!r} is not a string.')
            if name in seen:
                raise ContractViolation(f"Basis name '{name}' is declared twice.")
            seen.add(name)
            if isinstance(degree, bool) or not isinstance(degree, int):
                raise ContractViolation(
                    f"Degree of '{name}' is not an integer: {degree!r}."
                )
            if not 0 <= degree <= top_degree:
                raise ContractViolation(
                    f"Degree {degree} of '{name}' is outside [0, {top_degree}]."
                )
        order = sorted(range(len(entries)), key=lambda i: (entries[i][1], i))
        self.top_degree = top_degree
        self.names = tuple(entries[i][0] for i in order)
        self.degrees = tuple(entries[i][1] for i in order)
        self._index = {name: i for i, name in enumerate(self.names)}
        self._by_degree = tuple(
            tuple(i for i, degree in enumerate(self.degrees) if degree == k)
            for k in range(top_degree + 1)
        )

    @property
    def dim(self):
        return len(self.names)

    @property
    def dims(self):
        return tuple(len(indices) for indices in self._by_degree)

    def dimension(self, degree):
        return len(self.indices(degree))

    def indices(self, degree):
        if 0 <= degree <= self.top_degree:
            return self._by_degree[degree]
        return ()

    def degree(self, index):
        return self.degrees[index]

    def name(self, index):
        return self.names[index]

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ContractViolation(f"'{name}' is not a basis element.")

    def __contains__(self, name):
        return name in self._index

    def basis_vector(self, index):
        return {index: Fraction(1)}

    def vector_degree(self, vector):
        """
        Degree of a homogeneous vector, ``None`` for the zero vector.
        """
        degrees = {self.degrees[index] for index, value in vector.items() if value}
        if len(degrees) > 1:
            raise ContractViolation(
                f'Vector {self.format(vector)} is not homogeneous.'
            )
        return degrees.pop() if degrees else None

    def component(self, vector, degree):
        return {
            index: value for index, value in vector.items()
            if value and self.degrees[index] == degree
        }

    def format(self, vector):
        """
        Render a vector as a linear combination, e.g. ``2*a2 - 1/3*c``.
        """
        parts = []
        for index in sorted(vector):
            value = to_scalar(vector[index])
            if not value:
                continue
            magnitude = abs(value)
            term = self.names[index]
            if magnitude != 1:
                term = f'{format_scalar(magnitude)}*{term}'
            if not parts:
                parts.append(term if value > 0 else f'-{term}')
            else:
                parts.append(f'+ {term}' if value > 0 else f'- {term}')
        return ' '.join(parts) if parts else '0'

    def basis_tuples(self, arity, min_total=0, max_total=None, exclude=()):
        """
        Yield index tuples of the given arity, in lexicographic order, whose
        degrees sum to a value in ``[min_total, max_total]``.

        :param exclude: basis indices that may not appear in a tuple
        """
        if max_total is None:
            max_total = arity * self.top_degree
        excluded = set(exclude)
        candidates = [i for i in range(self.dim) if i not in excluded]
        if not candidates:
            if arity == 0 and min_total <= 0 <= max_total:
                yield ()
            return
        top = max(self.degrees[i] for i in candidates)

        def extend(prefix, total, remaining):
            if not remaining:
                if total >= min_total:
                    yield tuple(prefix)
                return
            if total + remaining * top < min_total:
                return
            for index in candidates:
                degree = self.degrees[index]
                if total + degree > max_total:
                    break
                prefix.append(index)
                yield from extend(prefix, total + degree, remaining - 1)
                prefix.pop()

        yield from extend([], 0, arity)

    def __eq__(self, other):
        if not isinstance(other, GradedVectorSpace):
            return NotImplemented
        return (
            self.top_degree == other.top_degree and
            self.names == other.names and
            self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.top_degree, self.names, self.degrees))

    def __unicode__(self):
        basis = ', '.join(
            f'{name}:{degree}' for name, degree in zip(self.names, self.degrees)
        )
        return f'<GradedVectorSpace n={self.top_degree} [{basis}]>'

    __repr__ = __unicode__


def _check_entry(target, value, expected_degree, label):
    for index in value:
        if not 0 <= index < target.dim:
            raise ContractViolation(f'{label}: index {index} is out of range.')
        if target.degrees[index] != expected_degree:
            raise ContractViolation(
                f'{label}: {target.names[index]} has degree '
                f'{target.degrees[index]}, expected {expected_degree}.'
            )


class GradedLinearMap:
    """
    A linear map between graded vector spaces raising degrees by ``shift``.

    Stored as sparse columns: ``columns[i]`` is the image of the ``i``-th
    source basis element.
    """

    def __init__(self, source, target, shift, columns):
        self.source = source
        self.target = target
        self.shift = shift
        stored = {}
        for index, column in columns.items():
            if not 0 <= index < source.dim:
                raise ContractViolation(f'Source index {index} is out of range.')
            column = clean({j: to_scalar(v) for j, v in column.items()})
            if not column:
                continue
            _check_entry(
                target,
                column,
                source.degrees[index] + shift,
                f'image of {source.names[index]}'
            )
            stored[index] = column
        self._columns = stored

    @classmethod
    def zero(cls, source, target, shift):
        return cls(source, target, shift, {})

    @classmethod
    def identity(cls, space):
        return cls(space, space, 0, {i: {i: 1} for i in range(space.dim)})

    @classmethod
    def from_matrices(cls, source, target, shift, matrices):
        """
        Build a map from per-degree matrices. ``matrices[k]`` maps source
        degree ``k`` coordinates to target degree ``k + shift`` coordinates.
        """
        columns = {}
        for degree, rows in matrices.items():
            sources = source.indices(degree)
            targets = target.indices(degree + shift)
            if len(rows) != len(targets) or any(len(r) != len(sources) for r in rows):
                raise ContractViolation(
                    f'Matrix for degree {degree} has the wrong shape.'
                )
            for j, index in enumerate(sources):
                columns[index] = {
                    targets[i]: rows[i][j] for i in range(len(targets)) if rows[i][j]
                }
        return cls(source, target, shift, columns)

    def column(self, index):
        return dict(self._columns.get(index, {}))

    def __call__(self, vector):
        result = {}
        for index, value in vector.items():
            column = self._columns.get(index)
            if column:
                accumulate(result, column, value)
        return result

    def matrix(self, degree):
        sources = self.source.indices(degree)
        targets = self.target.indices(degree + self.shift)
        return [
            [self._columns.get(j, {}).get(i, Fraction(0)) for j in sources]
            for i in targets
        ]

    def compose(self, other):
        """
        ``self`` after ``other``.
        """
        if other.target != self.source:
            raise ContractViolation('Cannot compose: spaces do not match.')
        return GradedLinearMap(
            other.source,
            self.target,
            self.shift + other.shift,
            {index: self(column) for index, column in other._columns.items()}
        )

    def _check_compatible(self, other):
        if (
            self.source != other.source or
            self.target != other.target or
            self.shift != other.shift
        ):
            raise ContractViolation('Maps have different spaces or shifts.')

    def __add__(self, other):
        self._check_compatible(other)
        columns = {index: dict(column) for index, column in self._columns.items()}
        for index, column in other._columns.items():
            accumulate(columns.setdefault(index, {}), column)
        return GradedLinearMap(self.source, self.target, self.shift, columns)

    def __neg__(self):
        return -1 * self

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, coefficient):
        coefficient = to_scalar(coefficient)
        return GradedLinearMap(
            self.source,
            self.target,
            self.shift,
            {i: scale(c, coefficient) for i, c in self._columns.items()}
        )

    def is_zero(self):
        return not self._columns

    def items(self):
        return sorted(self._columns.items())

    def __eq__(self, other):
        if not isinstance(other, GradedLinearMap):
            return NotImplemented
        return (
            self.source == other.source and
            self.target == other.target and
            self.shift == other.shift and
            self._columns == other._columns
        )

    __hash__ = None

    def __repr__(self):
        return (
            f'GradedLinearMap(shift={self.shift}, '
            f'nonzero_columns={len(self._columns)})'
        )


class MultilinearMap:
    """
    A multilinear map ``source ** arity -> target`` of internal degree
    ``degree``, stored sparsely on basis tuples.

    ::

        mul = MultilinearMap(2, space, space, 0, {(1, 1): {2: 1}})
        mul({1: 2}, {1: 1})  # {2: Fraction(2, 1)}
    """

    def __init__(self, arity, source, target, degree, table):
        if arity < 1:
            raise ContractViolation(f'Arity {arity} is below 1.')
        self.arity = arity
        self.source = source
        self.target = target
        self.degree = degree
        stored = {}
        for key, value in table.items():
            key = tuple(key)
            if len(key) != arity:
                raise ContractViolation(
                    f'Key {key!r} does not have arity {arity}.'
                )
            for index in key:
                if not 0 <= index < source.dim:
                    raise ContractViolation(f'Key {key!r} is out of range.')
            value = clean({j: to_scalar(v) for j, v in value.items()})
            if not value:
                continue
            _check_entry(
                target,
                value,
                sum(source.degrees[i] for i in key) + degree,
                f'value on {self._format_key(key)}'
            )
            stored[key] = value
        self._table = stored

    def _format_key(self, key):
        return '(' + ', '.join(self.source.names[i] for i in key) + ')'

    @classmethod
    def zero(cls, arity, source, target, degree):
        return cls(arity, source, target, degree, {})

    @classmethod
    def keys_for(cls, arity, source, target, degree, exclude=()):
        """
        All basis tuples whose output degree lies in ``[0, target.top_degree]``.
        """
        return source.basis_tuples(
            arity,
            min_total=-degree,
            max_total=target.top_degree - degree,
            exclude=exclude
        )

    @classmethod
    def from_function(cls, arity, source, target, degree, function, exclude=()):
        """
        Tabulate ``function(key)`` on every degree-admissible basis tuple.
        """
        table = {}
        for key in cls.keys_for(arity, source, target, degree, exclude):
            value = function(key)
            if value:
                table[key] = value
        return cls(arity, source, target, degree, table)

    def on_basis(self, key):
        return dict(self._table.get(tuple(key), {}))

    def __call__(self, *vectors):
        if len(vectors) != self.arity:
            raise ContractViolation(
                f'Expected {self.arity} arguments, got {len(vectors)}.'
            )
        result = {}
        supports = [list(vector.items()) for vector in vectors]
        for combination in itertools.product(*supports):
            value = self._table.get(tuple(index for index, _ in combination))
            if value:
                coefficient = Fraction(1)
                for _, c in combination:
                    coefficient *= c
                accumulate(result, value, coefficient)
        return result

    def items(self):
        return sorted(self._table.items())

    def keys(self):
        return sorted(self._table)

    def is_zero(self):
        return not self._table

    def support_degrees(self):
        """
        Sorted degree tuples of the basis tuples with a nonzero value.
        """
        return sorted({
            tuple(self.source.degrees[i] for i in key) for key in self._table
        })

    def restrict(self, predicate):
        """
        Keep only the entries whose key satisfies ``predicate``.
        """
        return MultilinearMap(
            self.arity,
            self.source,
            self.target,
            self.degree,
            {key: value for key, value in self._table.items() if predicate(key)}
        )

    def conjugate(self, forward, inverse):
        """
        Transport along a linear isomorphism: ``forward . f . inverse**arity``.
        """
        if forward.source != self.target or inverse.target != self.source:
            raise ContractViolation('Conjugating maps do not match the spaces.')
        space = forward.target
        inputs = [inverse({i: Fraction(1)}) for i in range(space.dim)]

        def transported(key):
            return forward(self(*(inputs[i] for i in key)))

        return MultilinearMap.from_function(
            self.arity, space, space, self.degree, transported
        )

    def _check_compatible(self, other):
        if (
            self.arity != other.arity or
            self.source != other.source or
            self.target != other.target or
            self.degree != other.degree
        ):
            raise ContractViolation(
                'Multilinear maps differ in arity, degree or spaces.'
            )

    def __add__(self, other):
        self._check_compatible(other)
        table = {key: dict(value) for key, value in self._table.items()}
        for key, value in other._table.items():
            accumulate(table.setdefault(key, {}), value)
        return MultilinearMap(self.arity, self.source, self.target, self.degree, table)

    def __neg__(self):
        return -1 * self

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, coefficient):
        coefficient = to_scalar(coefficient)
        return MultilinearMap(
            self.arity,
            self.source,
            self.target,
            self.degree,
            {key: scale(value, coefficient) for key, value in self._table.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, MultilinearMap):
            return NotImplemented
        return (
            self.arity == other.arity and
            self.source == other.source and
            self.target == other.target and
            self.degree == other.degree and
            self._table == other._table
        )

    __hash__ = None

    def __repr__(self):
        return (
            f'MultilinearMap(arity={self.arity}, degree={self.degree}, '
            f'entries={len(self._table)})'
        )


def expand_arguments(space, args):
    """
    Multilinear expansion of mixed arguments into basis tuples.

    Each argument is either a basis index or a sparse vector. Yields
    ``(key, coefficient)`` pairs.
    """
    supports = []
    for arg in args:
        if isinstance(arg, int) and not isinstance(arg, bool):
            if not 0 <= arg < space.dim:
                raise ContractViolation(f'Index {arg} is out of range.')
            supports.append([(arg, Fraction(1))])
        else:
            supports.append(sorted(arg.items()))
    for combination in itertools.product(*supports):
        coefficient = Fraction(1)
        for _, value in combination:
            coefficient *= value
        yield tuple(index for index, _ in combination), coefficient
