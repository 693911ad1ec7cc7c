"""
Algebra description files.

A description is a line oriented text file::

    # the 3-sphere
    name: s3
    top_degree: 3

    [basis]
    1: 0
    x: 3

    [integral]
    x: 1

Sections are ``[basis]``, ``[differential]``, ``[product]``,
``[integral]``, ``[hodge]`` and ``[metric]``. Values are linear
combinations such as ``2*a2 - 1/3*c``. Products are given on one half of
each commuting pair (``x * y: xy``); the mirrored entry and the unit
products are derived. ``[hodge]`` lists ``d^-`` explicitly, ``[metric]``
lists Gram matrices per degree as ``5: 1, 1/2; 1/2, 1``.
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import ContractViolation, ParseError
from .hodge import construct_hodge_from_metric, HodgeHomotopy
from .pdgca import PDGCA
from .primitives.graded import GradedLinearMap, GradedVectorSpace
from .utils import format_scalar, to_scalar

logger = logging.getLogger(__name__)

SECTIONS = ('basis', 'differential', 'product', 'integral', 'hodge', 'metric')

NAME = r'(?:[A-Za-z_]\w*|1)'
NAME_RE = re.compile(rf'^{NAME}$')
SECTION_RE = re.compile(r'^\[(\w+)\]$')
ENTRY_RE = re.compile(r'^([^:]+):(.*)$')
PRODUCT_RE = re.compile(rf'^({NAME})\s*\*\s*({NAME})$')
TERM_RE = re.compile(
    rf'\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?({NAME})\s*'
)


@dataclass
class AlgebraDescription:
    """
    The parsed content of a description file, keyed by basis names.
    """
    name: str
    top_degree: int
    basis: list
    differential: dict = field(default_factory=dict)
    products: dict = field(default_factory=dict)
    integral: dict = field(default_factory=dict)
    hodge: dict = None
    metric: dict = None

    @property
    def names(self):
        return [name for name, _ in self.basis]


def parse_scalar(text, lineno=None):
    try:
        return to_scalar(text.strip())
    except ContractViolation:
        raise ParseError(f"'{text.strip()}' is not an exact rational", lineno)


def parse_combination(text, declared, lineno=None):
    """
    Parse ``2*a2 - 1/3*c`` into ``{'a2': 2, 'c': -1/3}``.

    :param declared: the basis names that may occur
    """
    text = text.strip()
    if text == '0':
        return {}
    result = {}
    position = 0
    first = True
    while position < len(text):
        match = TERM_RE.match(text, position)
        if not match or match.end() == position:
            raise ParseError(f"cannot parse '{text[position:]}'", lineno)
        term_sign, coefficient, name = match.groups()
        if term_sign is None and not first:
            raise ParseError(f"missing '+' or '-' before '{name}'", lineno)
        if name not in declared:
            raise ParseError(f"undeclared basis element '{name}'", lineno)
        value = parse_scalar(coefficient, lineno) if coefficient else Fraction(1)
        if term_sign == '-':
            value = -value
        total = result.get(name, 0) + value
        if total:
            result[name] = total
        else:
            result.pop(name, None)
        position = match.end()
        first = False
    return result


def parse_matrix(text, lineno=None):
    rows = []
    for row in text.split(';'):
        rows.append([parse_scalar(entry, lineno) for entry in row.split(',')])
    return rows


def _parse_degree(text, lineno):
    text = text.strip()
    if not re.match(r'^\d+$', text):
        raise ParseError(f"'{text}' is not a degree", lineno)
    return int(text)


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if line:
            yield lineno, line


def parse_string(text):
    """
    Parse description text.

    :raises ParseError: with the offending line number
    """
    header = {}
    basis = []
    declared = {}
    sections = {}
    section = None
    for lineno, line in _lines(text):
        match = SECTION_RE.match(line)
        if match:
            section = match.group(1)
            if section not in SECTIONS:
                raise ParseError(f"unknown section '[{section}]'", lineno)
            if section in sections:
                raise ParseError(f"section '[{section}]' appears twice", lineno)
            if section != 'basis' and 'basis' not in sections:
                raise ParseError(f"'[{section}]' before '[basis]'", lineno)
            sections[section] = {}
            continue
        match = ENTRY_RE.match(line)
        if not match:
            raise ParseError(f"expected 'key: value', got '{line}'", lineno)
        key, value = match.group(1).strip(), match.group(2).strip()
        if section is None:
            if key not in ('name', 'top_degree'):
                raise ParseError(f"unknown header '{key}'", lineno)
            if key in header:
                raise ParseError(f"header '{key}' appears twice", lineno)
            header[key] = (
                _parse_degree(value, lineno) if key == 'top_degree' else value
            )
            continue
        entries = sections[section]
        if section == 'basis':
            if not NAME_RE.match(key):
                raise ParseError(f"'{key}' is not a valid basis name", lineno)
            if key in declared:
                raise ParseError(f"basis element '{key}' declared twice", lineno)
            declared[key] = _parse_degree(value, lineno)
            basis.append((key, declared[key]))
        elif section == 'product':
            product = PRODUCT_RE.match(key)
            if not product:
                raise ParseError(f"expected 'a * b', got '{key}'", lineno)
            pair = product.groups()
            for name in pair:
                if name not in declared:
                    raise ParseError(f"undeclared basis element '{name}'", lineno)
            if pair in entries or pair[::-1] in entries:
                raise ParseError(f"product '{key}' given twice", lineno)
            entries[pair] = parse_combination(value, declared, lineno)
        elif section == 'metric':
            degree = _parse_degree(key, lineno)
            if degree in entries:
                raise ParseError(f'metric for degree {degree} given twice', lineno)
            entries[degree] = parse_matrix(value, lineno)
        else:
            if key not in declared:
                raise ParseError(f"undeclared basis element '{key}'", lineno)
            if key in entries:
                raise ParseError(f"entry for '{key}' given twice", lineno)
            if section == 'integral':
                entries[key] = parse_scalar(value, lineno)
            else:
                entries[key] = parse_combination(value, declared, lineno)
    for key in ('name', 'top_degree'):
        if key not in header:
            raise ParseError(f"missing header '{key}'")
    if not basis:
        raise ParseError("missing '[basis]' section")
    return AlgebraDescription(
        name=header['name'],
        top_degree=header['top_degree'],
        basis=basis,
        differential=sections.get('differential', {}),
        products=sections.get('product', {}),
        integral=sections.get('integral', {}),
        hodge=sections.get('hodge'),
        metric=sections.get('metric'),
    )


def parse(path):
    with open(path, encoding='utf-8') as handle:
        return parse_string(handle.read())


def parse_metric_string(text):
    """
    Parse a metric file: ``degree: rows`` lines, optionally under a
    ``[metric]`` header.
    """
    metric = {}
    for lineno, line in _lines(text):
        if line == '[metric]':
            continue
        match = ENTRY_RE.match(line)
        if not match:
            raise ParseError(f"expected 'degree: rows', got '{line}'", lineno)
        degree = _parse_degree(match.group(1), lineno)
        if degree in metric:
            raise ParseError(f'metric for degree {degree} given twice', lineno)
        metric[degree] = parse_matrix(match.group(2), lineno)
    return metric


def load_metric(path):
    with open(path, encoding='utf-8') as handle:
        return parse_metric_string(handle.read())


def _format_combination(vector, order):
    parts = []
    for name in sorted(vector, key=order.index):
        value = vector[name]
        magnitude = format_scalar(abs(value))
        term = name if magnitude == '1' else f'{magnitude}*{name}'
        if not parts:
            parts.append(term if value > 0 else f'-{term}')
        else:
            parts.append(f'+ {term}' if value > 0 else f'- {term}')
    return ' '.join(parts) if parts else '0'


def _format_matrix(rows):
    return '; '.join(', '.join(format_scalar(v) for v in row) for row in rows)


def emit(description):
    """
    Canonical text of a description: entries follow basis order, each
    product is written on its ordered half, and
    ``emit(parse_string(emit(d))) == emit(d)``.
    """
    order = description.names
    degrees = dict(description.basis)
    lines = [
        f'name: {description.name}',
        f'top_degree: {description.top_degree}',
        '',
        '[basis]',
    ]
    lines.extend(f'{name}: {degree}' for name, degree in description.basis)

    def combinations(title, entries):
        lines.extend(['', f'[{title}]'])
        for name in sorted(entries, key=order.index):
            lines.append(f'{name}: {_format_combination(entries[name], order)}')

    if description.differential:
        combinations('differential', description.differential)
    if description.products:
        products = {}
        for (a, b), vector in description.products.items():
            if order.index(a) > order.index(b):
                factor = -1 if degrees[a] * degrees[b] % 2 else 1
                a, b = b, a
                vector = {name: factor * value for name, value in vector.items()}
            products[(a, b)] = vector
        lines.extend(['', '[product]'])
        for a, b in sorted(products, key=lambda pair: tuple(map(order.index, pair))):
            vector = _format_combination(products[(a, b)], order)
            lines.append(f'{a} * {b}: {vector}')
    if description.integral:
        lines.extend(['', '[integral]'])
        for name in sorted(description.integral, key=order.index):
            lines.append(f'{name}: {format_scalar(description.integral[name])}')
    if description.hodge is not None:
        combinations('hodge', description.hodge)
    if description.metric is not None:
        lines.extend(['', '[metric]'])
        for degree in sorted(description.metric):
            lines.append(f'{degree}: {_format_matrix(description.metric[degree])}')
    return '\n'.join(lines) + '\n'


def _vectors(space, entries):
    return {
        space.index(key): {space.index(name): value for name, value in value.items()}
        for key, value in entries.items()
    }


def load(description):
    """
    Build the :class:`PDGCA` of a description. Axioms are not checked here;
    use :func:`~formality_utils.pdgca.validate_pdgca`.
    """
    try:
        space = GradedVectorSpace(description.top_degree, description.basis)
        products = {
            (space.index(a), space.index(b)): {
                space.index(name): value for name, value in vector.items()
            }
            for (a, b), vector in description.products.items()
        }
        algebra = PDGCA.from_products(
            space,
            products,
            _vectors(space, description.differential),
            {
                space.index(name): value
                for name, value in description.integral.items()
            },
            name=description.name,
        )
    except ContractViolation as exc:
        raise ParseError(str(exc))
    logger.debug('loaded %r', algebra)
    return algebra


def load_hodge(description, algebra, metric=None):
    """
    The Hodge homotopy of a description: the explicit ``[hodge]`` section
    if present, otherwise the one induced by ``metric`` (or the description's
    own ``[metric]``, or the identity metric).
    """
    if description.hodge is not None and metric is None:
        dminus = GradedLinearMap(
            algebra.space,
            algebra.space,
            -1,
            _vectors(algebra.space, description.hodge)
        )
        return HodgeHomotopy(algebra, dminus)
    if metric is None:
        metric = description.metric or {}
    return construct_hodge_from_metric(algebra, metric)
