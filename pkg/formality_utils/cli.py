"""
Command line interface.

::

    formality-utils validate eleven_dim
    formality-utils transfer cp2 --max-arity 4
    formality-utils certify s2xs7 --theorem zhou --ell 5 --format machine

An algebra is given either as a path to a description file or as the name
of a bundled one. Exit status is 0 when every assertion passed, 1 when one
failed, 2 for unusable input and 3 when a theorem does not apply.
"""
import argparse
import logging
import os
import sys

from sqlalchemy.orm import sessionmaker

from . import __version__
from .bianchi_massey import bianchi_massey, bm_equivalence, verify_harr_to_sym
from .certify import certify, THEOREMS
from .cinfty import check_shuffle_vanishing, check_stasheff, check_unitality
from .config import get_settings
from .corpus import corpus_path
from .description import load, load_hodge, load_metric, parse
from .exceptions import (
    ContractViolation,
    FormalityError,
    ImproperlyConfigured,
    MetricError,
    NotApplicable,
    ParseError,
    ValidationError
)
from .functions.database import open_archive
from .harrison import (
    harrison_cohomology_dim,
    HochschildCochain,
    solve_formality_obstruction
)
from .hodge import construct_hodge_from_metric, hodge_family_check, validate_hodge
from .models import archive_certificate, Base, certificate_history
from .pdgca import cohomology, validate_pdgca
from .report import (
    certificate_to_dict,
    cohomology_to_dict,
    hodge_to_dict,
    obstruction_to_dict,
    render,
    structure_to_dict,
    tensor_to_dict,
    validation_to_dict
)
from .transfer import transfer, transfer_to_cohomology

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_NOT_APPLICABLE = 3


def _resolve(path):
    if os.path.exists(path):
        return path
    try:
        return corpus_path(path)
    except KeyError:
        raise ParseError(f"no such file or bundled algebra: '{path}'")


def _metric(value):
    if value is None or value == 'identity':
        return None if value is None else {}
    return load_metric(_resolve(value))


def _load(args):
    description = parse(_resolve(args.algebra))
    algebra = load(description)
    return description, algebra


def _hodge(args, description, algebra):
    return load_hodge(description, algebra, _metric(args.metric))


def _structure(args, hodge):
    return transfer_to_cohomology(
        transfer(hodge, max_arity=args.max_arity, workers=args.workers)
    )


def cmd_validate(args, out):
    description, algebra = _load(args)
    report = validate_pdgca(algebra)
    data = {'algebra': validation_to_dict(report)}
    ok = report.ok
    if ok and (description.hodge is not None or args.metric is not None):
        hodge = _hodge(args, description, algebra)
        hodge_report = validate_hodge(algebra, hodge.dminus)
        data['hodge'] = validation_to_dict(hodge_report)
        ok = hodge_report.ok
    out.write(render(data, args.format))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_cohomology(args, out):
    _, algebra = _load(args)
    out.write(render(cohomology_to_dict(algebra, cohomology(algebra)), args.format))
    return EXIT_OK


def cmd_hodge(args, out):
    description, algebra = _load(args)
    hodge = _hodge(args, description, algebra)
    out.write(render(hodge_to_dict(hodge), args.format))
    return EXIT_OK


def cmd_transfer(args, out):
    description, algebra = _load(args)
    structure = _structure(args, _hodge(args, description, algebra))
    out.write(render(structure_to_dict(structure), args.format))
    return EXIT_OK


def cmd_check(args, out):
    description, algebra = _load(args)
    structure = _structure(args, _hodge(args, description, algebra))
    selected = [
        name for name in ('stasheff', 'shuffle', 'unital') if getattr(args, name)
    ] or ['stasheff', 'shuffle', 'unital']
    up_to_p = min(args.max_p or get_settings().max_p, structure.max_arity)
    data = {}
    ok = True
    for name in selected:
        if name == 'stasheff':
            report = check_stasheff(structure, up_to_p)
        elif name == 'shuffle':
            report = check_shuffle_vanishing(structure, up_to_p)
        else:
            report = check_unitality(structure)
        data[name] = validation_to_dict(report)
        ok = ok and report.ok
    out.write(render(data, args.format))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_harrison_obstruction(args, out):
    description, algebra = _load(args)
    structure = _structure(args, _hodge(args, description, algebra))
    mu3 = HochschildCochain.from_structure(structure)
    result = solve_formality_obstruction(mu3)
    dimensions = {
        (p, -1): harrison_cohomology_dim(structure.ring, p, -1) for p in (2, 3)
    }
    out.write(render(obstruction_to_dict(result, dimensions), args.format))
    return EXIT_OK if result.verify() else EXIT_FAILED


def cmd_bianchi_massey(args, out):
    description, algebra = _load(args)
    hodge = _hodge(args, description, algebra)
    args.max_arity = 3
    structure = _structure(args, hodge)
    mu3 = HochschildCochain.from_structure(structure)
    tensor = bianchi_massey(hodge)
    verification = verify_harr_to_sym(tensor, mu3)
    equivalent = bm_equivalence(tensor, solve_formality_obstruction(mu3))
    out.write(render(tensor_to_dict(tensor, verification, equivalent), args.format))
    return EXIT_OK if verification.ok and equivalent else EXIT_FAILED


def cmd_certify(args, out):
    description = parse(_resolve(args.algebra))
    try:
        certificate = certify(
            description,
            args.theorem,
            ell=args.ell,
            max_arity=args.max_arity,
            max_p=args.max_p,
            metric=_metric(args.metric),
            second_metric=_metric(args.second_metric),
            workers=args.workers,
        )
    except NotApplicable as exc:
        out.write(render({
            'algebra': description.name,
            'theorem': args.theorem,
            'verdict': 'not applicable',
            'hypotheses': [
                {'name': h.name, 'requirement': h.requirement, 'holds': h.holds}
                for h in exc.hypotheses
            ],
        }, args.format))
        return EXIT_NOT_APPLICABLE
    archive = args.archive or get_settings().archive_url
    if archive:
        engine = open_archive(archive, Base.metadata)
        session = sessionmaker(bind=engine)()
        try:
            archive_certificate(session, certificate)
            session.commit()
        finally:
            session.close()
            engine.dispose()
    out.write(render(certificate_to_dict(certificate), args.format))
    return EXIT_OK if certificate.passed else EXIT_FAILED


def cmd_compare_hodge(args, out):
    _, algebra = _load(args)
    metrics = [_metric(args.metric) or {}, _metric(args.second_metric) or {}]
    distinct = hodge_family_check(algebra, metrics, workers=args.workers)
    data = {'distinct_mu3': len(distinct)}
    coboundary = True
    if len(distinct) > 1:
        structures = [
            transfer_to_cohomology(transfer(
                construct_hodge_from_metric(algebra, metric), max_arity=3
            ))
            for metric in metrics
        ]
        mu3, mu3_prime = (HochschildCochain.from_structure(s) for s in structures)
        result = solve_formality_obstruction(mu3 - mu3_prime)
        coboundary = result.solvable and result.verify()
        data['difference'] = obstruction_to_dict(result)
    data['cohomologous'] = coboundary
    out.write(render(data, args.format))
    return EXIT_OK if coboundary else EXIT_FAILED


def cmd_certificates(args, out):
    archive = args.archive or get_settings().archive_url
    if not archive:
        raise ImproperlyConfigured('No archive given; use --archive.')
    engine = open_archive(archive, Base.metadata)
    session = sessionmaker(bind=engine)()
    try:
        records = certificate_history(session, algebra=args.algebra)
        data = {
            'certificates': [
                {
                    'id': record.id,
                    'algebra': record.algebra,
                    'theorem': record.theorem,
                    'ell': record.ell,
                    'passed': record.passed,
                    'fingerprint': record.fingerprint,
                }
                for record in records
            ]
        }
    finally:
        session.close()
        engine.dispose()
    out.write(render(data, args.format))
    return EXIT_OK


COMMANDS = {
    'validate': (cmd_validate, 'check the algebra and Hodge axioms'),
    'cohomology': (cmd_cohomology, 'print Betti numbers and representatives'),
    'hodge': (cmd_hodge, 'print the Hodge homotopy and splitting'),
    'transfer': (cmd_transfer, 'print the transferred operations'),
    'check': (cmd_check, 'check the C-infinity axioms of the transfer'),
    'harrison-obstruction': (
        cmd_harrison_obstruction, 'solve the first formality obstruction'
    ),
    'bianchi-massey': (cmd_bianchi_massey, 'print the Bianchi-Massey tensor'),
    'certify': (cmd_certify, 'certify a theorem on an algebra'),
    'compare-hodge': (cmd_compare_hodge, 'compare mu_3 under two metrics'),
    'certificates': (cmd_certificates, 'list archived certificates'),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog='formality-utils',
        description='Homotopy transfer and formality checks on Poincare DGCAs.',
    )
    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument(
        '-v', '--verbose', action='count', default=0,
        help='-v for progress, -vv for debug output on stderr'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name, (handler, help_text) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler)
        if name == 'certificates':
            sub.add_argument('--algebra', help='only this algebra')
        else:
            sub.add_argument('algebra', help='description file or bundled name')
            sub.add_argument(
                '--metric', help="metric file or 'identity'"
            )
        sub.add_argument(
            '--format', choices=('text', 'machine'), default='text'
        )
        sub.add_argument('--max-arity', type=int)
        sub.add_argument('--max-p', type=int)
        sub.add_argument('--workers', type=int)
        if name in ('certify', 'compare-hodge'):
            sub.add_argument('--second-metric', help='metric file or identity')
        if name == 'certify':
            sub.add_argument('--theorem', choices=THEOREMS, required=True)
            sub.add_argument('--ell', type=int)
        if name in ('certify', 'certificates'):
            sub.add_argument('--archive', help='SQLAlchemy URL of the archive')
        if name == 'check':
            sub.add_argument('--stasheff', action='store_true')
            sub.add_argument('--shuffle', action='store_true')
            sub.add_argument('--unital', action='store_true')
    return parser


def configure_logging(verbosity):
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = get_settings().log_level
    logging.basicConfig(
        level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s'
    )


def main(argv=None, out=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out or sys.stdout
    try:
        configure_logging(args.verbose)
        return args.handler(args, out)
    except (ParseError, MetricError, ValidationError, ImproperlyConfigured) as exc:
        logger.error('%s', exc)
        sys.stderr.write(f'error: {exc}\n')
        return EXIT_INPUT
    except ContractViolation as exc:
        sys.stderr.write(f'error: {exc}\n')
        return EXIT_INPUT
    except FormalityError as exc:
        sys.stderr.write(f'error: {exc}\n')
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
