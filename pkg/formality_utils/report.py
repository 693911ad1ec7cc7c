"""
Deterministic rendering of results as text or JSON.

Every ``*_to_dict`` function returns plain data (dicts, lists, strings,
integers, booleans) in a fixed order; :func:`render` turns it into text
or JSON. Exact scalars are written as ``p/q``.
"""
import json
from fractions import Fraction

from .utils import format_scalar

FORMATS = ('text', 'machine')


def _plain(value):
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def validation_to_dict(report):
    return {
        'ok': report.ok,
        'violations': [str(violation) for violation in report],
    }


def cohomology_to_dict(algebra, ring):
    space = ring.space
    return {
        'algebra': algebra.name,
        'top_degree': space.top_degree,
        'betti': list(ring.betti),
        'classes': [
            {
                'name': space.name(i),
                'degree': space.degree(i),
                'representative': algebra.space.format(ring.representatives[i]),
            }
            for i in range(space.dim)
        ],
    }


def hodge_to_dict(hodge):
    space = hodge.base.space
    return {
        'algebra': hodge.base.name,
        'dminus': [
            {'source': space.name(i), 'value': space.format(column)}
            for i, column in hodge.dminus.items()
        ],
        'harmonic': [
            {'class': hodge.harmonic_space.name(c), 'vector': space.format(vector)}
            for c, vector in enumerate(hodge.harmonic_vectors)
        ],
        'splitting': [
            {'degree': k, 'harmonic': h, 'exact': e, 'coexact': c}
            for k, (h, e, c) in sorted(hodge.splitting().items())
        ],
    }


def operation_rows(operation):
    """
    Rows ``m(a, b, ...) [degrees] -> value`` of a multilinear map, in key
    order.
    """
    space = operation.source
    return [
        {
            'arguments': [space.name(i) for i in key],
            'degrees': [space.degree(i) for i in key],
            'value': operation.target.format(value),
        }
        for key, value in operation.items()
    ]


def structure_to_dict(structure):
    return {
        'max_arity': structure.max_arity,
        'classes': [
            {'name': structure.space.name(i), 'degree': structure.space.degree(i)}
            for i in range(structure.space.dim)
        ],
        'operations': {
            f'm_{k}': operation_rows(operation)
            for k, operation in sorted(structure.operations.items())
        },
    }


def obstruction_to_dict(result, dimensions=None):
    data = {
        'solvable': result.solvable,
        'verified': result.verify(),
        'harrison_basis_size': len(result.basis),
    }
    if result.solvable:
        data['witness'] = operation_rows(result.witness.map)
    else:
        data['certificate'] = [
            {'arguments': list(arguments), 'output': output, 'coefficient': value}
            for arguments, output, value in result.certificate_terms
        ]
    if dimensions is not None:
        data['harrison_dimensions'] = {
            f'({p}, {s})': dim for (p, s), dim in sorted(dimensions.items())
        }
    return _plain(data)


def tensor_to_dict(tensor, verification=None, equivalent=None):
    space = tensor.space

    def monomial(pair):
        return f'{space.name(pair[0])}.{space.name(pair[1])}'

    data = {
        'entries': [
            {
                'left': monomial(first),
                'right': monomial(second),
                'value': space.format(value),
            }
            for (first, second), value in sorted(tensor.table.items())
        ],
        'kernel': [element.format() for element in tensor.kernel_basis],
        'restricted': [
            {'left': p, 'right': q, 'value': space.format(value)}
            for (p, q), value in sorted(tensor.restricted().items())
        ],
        'vanishes_on_bianchi': tensor.vanishes_on_bianchi(),
    }
    if verification is not None:
        data['harr_to_sym'] = validation_to_dict(verification)
    if equivalent is not None:
        data['equivalent'] = equivalent
    return data


def certificate_to_dict(certificate):
    return _plain({
        'algebra': certificate.algebra,
        'theorem': certificate.theorem,
        'parameters': {
            'r': certificate.r,
            'n': certificate.n,
            'b_r': certificate.b_r,
            'ell': certificate.ell,
            'max_arity': certificate.max_arity,
        },
        'hypotheses': [
            {'name': h.name, 'requirement': h.requirement, 'holds': h.holds}
            for h in certificate.hypotheses
        ],
        'conclusions': [
            {
                'statement': c.statement,
                'passed': c.passed,
                'value': c.value,
                'detail': c.detail,
            }
            for c in certificate.conclusions
        ],
        'passed': certificate.passed,
        'format_version': certificate.format_version,
        'fingerprint': certificate.fingerprint,
    })


def _text_lines(value, indent=0):
    pad = '  ' * indent
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                yield f'{pad}{key}:'
                yield from _text_lines(item, indent + 1)
            else:
                yield f'{pad}{key}: {_scalar_text(item)}'
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict) and 'arguments' in item and 'value' in item:
                arguments = ', '.join(item['arguments'])
                degrees = ' '.join(str(d) for d in item.get('degrees', ()))
                yield f'{pad}({arguments}) [{degrees}] -> {item["value"]}'
            elif isinstance(item, (dict, list)):
                yield f'{pad}-'
                yield from _text_lines(item, indent + 1)
            else:
                yield f'{pad}- {_scalar_text(item)}'
    else:
        yield f'{pad}{_scalar_text(value)}'


def _scalar_text(value):
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, (dict, list)):
        return 'none'
    return str(value)


def render(data, output_format='text'):
    """
    Render plain data. ``machine`` output is JSON with sorted keys.
    """
    data = _plain(data)
    if output_format == 'machine':
        return json.dumps(data, indent=2, sort_keys=True) + '\n'
    return '\n'.join(_text_lines(data)) + '\n'
