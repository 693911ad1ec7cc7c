"""
Homotopy transfer of a Poincare DGCA to a minimal C-infinity structure on
its harmonic space.

The engine is the recursion

    m^_2(a1, a2) = a1 . a2
    m^_k = (-1)^(k-1) d^- m^_(k-1)(a1..a(k-1)) . ak
           - (-1)^(k |a1|) a1 . d^- m^_(k-1)(a2..ak)
           - sum_(i=2)^(k-2) (-1)^nu d^- m^_i(a1..ai) . d^- m^_(k-i)(a(i+1)..ak)

with ``nu = i + (k - i - 1)(|a1| + ... + |ai|)``, followed by
``m_k = pi m^_k``.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

from .config import get_settings
from .exceptions import ContractViolation
from .hodge import ensure_valid_hodge
from .primitives.graded import accumulate, expand_arguments, MultilinearMap
from .utils import sign

logger = logging.getLogger(__name__)


class MinimalCInftyStructure:
    """
    Multiplications ``m_k`` of internal degree ``2 - k`` on a graded space,
    for ``2 <= k <= max_arity``.

    :param space: the underlying :class:`GradedVectorSpace`
    :param operations: mapping ``k -> MultilinearMap``; missing arities up to
        ``max_arity`` are zero
    :param unit: basis index of the unit
    :param differential: optional ``m_1`` (a degree one
        :class:`GradedLinearMap`); ``None`` for minimal structures
    :param hodge: the Hodge homotopy the structure was transferred along
    :param ring: the cohomology ring, when the structure lives on cohomology
    """

    def __init__(
        self,
        space,
        operations,
        unit,
        max_arity=None,
        differential=None,
        hodge=None,
        ring=None,
    ):
        if max_arity is None:
            max_arity = max(operations, default=2)
        stored = {}
        for k, operation in operations.items():
            if not 2 <= k <= max_arity:
                raise ContractViolation(f'Arity {k} is outside [2, {max_arity}].')
            if (
                operation.arity != k or
                operation.degree != 2 - k or
                operation.source != space or
                operation.target != space
            ):
                raise ContractViolation(
                    f'm_{k} must be a {k}-ary map of degree {2 - k} on the space.'
                )
            stored[k] = operation
        self.space = space
        self._operations = stored
        self.unit = unit
        self.max_arity = max_arity
        self.differential = differential
        self.hodge = hodge
        self.ring = ring

    @classmethod
    def from_pdgca(cls, algebra, max_arity=3):
        """
        An algebra viewed as a C-infinity structure with ``m_1 = d``,
        ``m_2`` the product and no higher operations.
        """
        return cls(
            algebra.space,
            {2: algebra.mul},
            algebra.unit,
            max_arity=max_arity,
            differential=algebra.d,
        )

    @property
    def operations(self):
        return {k: self.m(k) for k in range(2, self.max_arity + 1)}

    def m(self, k):
        if k == 1:
            return self.differential
        if not 2 <= k <= self.max_arity:
            raise ContractViolation(
                f'm_{k} is outside the computed range [2, {self.max_arity}].'
            )
        operation = self._operations.get(k)
        if operation is None:
            operation = MultilinearMap.zero(k, self.space, self.space, 2 - k)
        return operation

    def replace(self, **operations):
        """
        Copy with some operations replaced, e.g. ``replace(m3=table)``.
        """
        stored = dict(self._operations)
        for name, operation in operations.items():
            stored[int(name.lstrip('m'))] = operation
        return MinimalCInftyStructure(
            self.space,
            stored,
            self.unit,
            self.max_arity,
            self.differential,
            self.hodge,
            self.ring,
        )

    def __eq__(self, other):
        if not isinstance(other, MinimalCInftyStructure):
            return NotImplemented
        return (
            self.space == other.space and
            self.max_arity == other.max_arity and
            self.operations == other.operations
        )

    __hash__ = None

    def __repr__(self):
        return (
            f'<MinimalCInftyStructure dim={self.space.dim} '
            f'max_arity={self.max_arity}>'
        )


class TransferWorkspace:
    """
    Memo tables for ``m^_k`` and ``d^- m^_k`` on basis tuples of the
    harmonic space. Values live in the algebra and are not projected.
    """

    def __init__(self, hodge, max_arity):
        if max_arity < 2:
            raise ContractViolation(f'max_arity must be at least 2, got {max_arity}.')
        self.hodge = hodge
        self.max_arity = max_arity
        self.algebra = hodge.base
        self.space = hodge.harmonic_space
        self.harmonics = hodge.harmonic_vectors
        self._hat = {}
        self._dhat = {}

    def __len__(self):
        return len(self._hat)

    def _degree_sum(self, key):
        return sum(self.space.degree(i) for i in key)

    def hat(self, key):
        """
        ``m^_k`` on a tuple of harmonic basis indices.
        """
        key = tuple(key)
        value = self._hat.get(key)
        if value is not None:
            return value
        k = len(key)
        if not 2 <= k <= self.max_arity:
            raise ContractViolation(
                f'Arity {k} is outside [2, {self.max_arity}].'
            )
        degree = self._degree_sum(key) + 2 - k
        if not 0 <= degree <= self.algebra.top_degree:
            value = {}
        elif k == 2:
            value = self.algebra.mul(self.harmonics[key[0]], self.harmonics[key[1]])
        else:
            value = self._recurse(key)
        self._hat[key] = value
        return value

    def dhat(self, key):
        """
        ``d^- m^_k`` on a tuple of harmonic basis indices.
        """
        key = tuple(key)
        value = self._dhat.get(key)
        if value is None:
            value = self.hodge.dminus(self.hat(key))
            self._dhat[key] = value
        return value

    def _recurse(self, key):
        k = len(key)
        mul = self.algebra.mul
        degrees = [self.space.degree(i) for i in key]
        value = {}
        accumulate(
            value,
            mul(self.dhat(key[:-1]), self.harmonics[key[-1]]),
            sign(k - 1)
        )
        accumulate(
            value,
            mul(self.harmonics[key[0]], self.dhat(key[1:])),
            -sign(k * degrees[0])
        )
        for i in range(2, k - 1):
            left = self.dhat(key[:i])
            if not left:
                continue
            right = self.dhat(key[i:])
            if not right:
                continue
            nu = i + (k - i - 1) * sum(degrees[:i])
            accumulate(value, mul(left, right), -sign(nu))
        return value

    def project(self, vector):
        """
        ``pi`` in harmonic coordinates.
        """
        return self.hodge.harmonic_projection(vector)


def merkulov_hat(workspace, args):
    """
    Evaluate ``m^_k`` on harmonic arguments.

    :param args: basis indices of the harmonic space or harmonic coordinate
        vectors; mixing both is allowed
    :returns: an element of the algebra (not projected)
    """
    if len(args) < 2:
        raise ContractViolation(f'Arity {len(args)} is below 2.')
    result = {}
    for key, coefficient in expand_arguments(workspace.space, args):
        accumulate(result, workspace.hat(key), coefficient)
    return result


def _fill(workspace, keys, workers):
    def evaluate(key):
        return key, workspace.project(workspace.hat(key))

    if workers > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(evaluate, keys))
    else:
        results = [evaluate(key) for key in keys]
    return {key: value for key, value in sorted(results) if value}


def transfer(hodge, max_arity=None, workers=None):
    """
    Transfer the algebra structure along a Hodge homotopy.

    Arity ``k`` is filled once every lower arity is memoized; within one
    arity basis tuples are independent and may be evaluated by ``workers``
    threads. Tables are assembled in sorted key order, so the result does
    not depend on scheduling.

    ::

        structure = transfer(hodge, max_arity=4)
        structure.m(3)({0: 1}, {1: 1}, {1: 1})
    """
    if max_arity is not None and max_arity < 2:
        raise ContractViolation(f'max_arity must be at least 2, got {max_arity}.')
    ensure_valid_hodge(hodge)
    settings = get_settings().override(max_arity=max_arity, workers=workers)
    workspace = TransferWorkspace(hodge, settings.max_arity)
    space = workspace.space
    operations = {}
    for k in range(2, settings.max_arity + 1):
        keys = list(MultilinearMap.keys_for(k, space, space, 2 - k))
        table = _fill(workspace, keys, settings.workers)
        operations[k] = MultilinearMap(k, space, space, 2 - k, table)
        logger.info(
            'transferred m_%d on %d harmonic classes (%d tuples, %d nonzero)',
            k, space.dim, len(keys), len(table)
        )
    logger.debug('memoized %d values', len(workspace))
    return MinimalCInftyStructure(
        space,
        operations,
        hodge.ring.unit,
        max_arity=settings.max_arity,
        hodge=hodge,
    )


def transfer_to_cohomology(structure):
    """
    Move a structure on harmonic space to cohomology along ``h -> [h]``.

    :raises ContractViolation: if ``structure`` was not transferred along a
        Hodge homotopy, or the transported ``m_2`` differs from the cup
        product
    """
    hodge = structure.hodge
    if hodge is None:
        raise ContractViolation('The structure carries no Hodge homotopy.')
    ring = hodge.ring
    forward = hodge.class_map
    backward = hodge.inverse_class_map
    operations = {
        k: operation.conjugate(forward, backward)
        for k, operation in structure.operations.items()
    }
    if operations[2] != ring.product:
        raise ContractViolation('Transported m_2 is not the cup product.')
    return MinimalCInftyStructure(
        ring.space,
        operations,
        ring.unit,
        max_arity=structure.max_arity,
        hodge=hodge,
        ring=ring,
    )


@dataclass
class ProfileCheck:
    """
    One vanishing statement evaluated on an arity. ``passed`` is ``None``
    when the dimension hypothesis does not hold.
    """
    name: str
    applicable: bool
    passed: bool = None
    detail: str = ''


@dataclass
class ArityProfile:
    arity: int
    zero: bool
    support: list
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(check.passed is not False for check in self.checks)


@dataclass
class VanishingProfile:
    r: int
    n: int
    arities: list = field(default_factory=list)

    @property
    def ok(self):
        return all(profile.ok for profile in self.arities)

    def arity(self, k):
        for profile in self.arities:
            if profile.arity == k:
                return profile
        raise KeyError(k)


def _diagonal_violations(operation, space, r):
    """
    Multisets of degree ``r`` basis classes on which the sum of ``m_k`` over
    all distinct orderings is nonzero.
    """
    classes = space.indices(r)
    k = operation.arity
    violations = []
    for multiset in _multisets(classes, k):
        total = {}
        for ordering in sorted(set(permutations(multiset))):
            accumulate(total, operation.on_basis(ordering))
        if total:
            violations.append(multiset)
    return violations


def _multisets(items, size):
    if not size:
        yield ()
        return
    for position, item in enumerate(items):
        for rest in _multisets(items[position:], size - 1):
            yield (item,) + rest


def vanishing_profile(structure, r, n):
    """
    Report, for each arity ``k >= 3``, whether ``m_k`` vanishes and on
    which degree tuples it is supported, and check the support statements
    that hold for an ``(r - 1)``-connected algebra of dimension ``n``:

    ``vanishing``
        ``n <= (k + 1)(r - 1) + 2`` implies ``m_k = 0``
    ``all-r``
        ``n <= (k + 1)(r - 1) + 3`` implies support on ``(r, ..., r)``
    ``all-r-shifted``
        ``n <= k(r - 1) + 4`` implies support on ``(r, ..., r)``
    ``one-slot-r+1``
        ``n = (k + 1)(r - 1) + 4`` implies support on ``(r, ..., r)`` or on
        tuples with exactly one slot of degree ``r + 1``
    ``diagonal``
        ``m_k(a, ..., a) = 0`` for every ``a`` of degree ``r``
    """
    profile = VanishingProfile(r, n)
    space = structure.space
    for k in range(3, structure.max_arity + 1):
        operation = structure.m(k)
        support = operation.support_degrees()
        entry = ArityProfile(k, operation.is_zero(), support)
        all_r = (r,) * k
        simply_connected = r >= 2

        applicable = simply_connected and n <= (k + 1) * (r - 1) + 2
        entry.checks.append(ProfileCheck(
            'vanishing',
            applicable,
            operation.is_zero() if applicable else None,
            f'n <= {(k + 1) * (r - 1) + 2}'
        ))

        applicable = simply_connected and n <= (k + 1) * (r - 1) + 3
        entry.checks.append(ProfileCheck(
            'all-r',
            applicable,
            all(s == all_r for s in support) if applicable else None,
            f'n <= {(k + 1) * (r - 1) + 3}'
        ))

        applicable = simply_connected and n <= k * (r - 1) + 4
        entry.checks.append(ProfileCheck(
            'all-r-shifted',
            applicable,
            all(s == all_r for s in support) if applicable else None,
            f'n <= {k * (r - 1) + 4}'
        ))

        applicable = simply_connected and n == (k + 1) * (r - 1) + 4
        passed = None
        if applicable:
            passed = all(
                s == all_r or (
                    sorted(s) == sorted((r,) * (k - 1) + (r + 1,))
                )
                for s in support
            )
        entry.checks.append(ProfileCheck(
            'one-slot-r+1', applicable, passed, f'n = {(k + 1) * (r - 1) + 4}'
        ))

        if simply_connected:
            violations = _diagonal_violations(operation, space, r)
            detail = ', '.join(
                '(' + ', '.join(space.name(i) for i in multiset) + ')'
                for multiset in violations
            )
            entry.checks.append(
                ProfileCheck('diagonal', True, not violations, detail)
            )
        profile.arities.append(entry)
    return profile
