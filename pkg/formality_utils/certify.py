"""
Theorem certificates.

A certificate evaluates the dimension hypotheses of a vanishing or
formality statement on a concrete algebra and, when they hold, checks the
claimed conclusions exactly on the transferred structure.
"""
import hashlib
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .bianchi_massey import bianchi_massey, bm_equivalence, verify_harr_to_sym
from .cinfty import check_morphism, CInftyMorphism
from .config import get_settings
from .description import emit, load, load_hodge
from .exceptions import ContractViolation, NotApplicable, NotConnected
from .harrison import HochschildCochain, solve_formality_obstruction
from .hodge import construct_hodge_from_metric, qshape_check
from .pdgca import connectivity
from .primitives.graded import GradedLinearMap
from .transfer import transfer, transfer_to_cohomology

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

THEOREMS = (
    'A2',
    'zhou',
    'miller',
    'cavalcanti',
    'qshape',
    'harr-bm',
    'canonicity',
)


@dataclass
class Hypothesis:
    name: str
    requirement: str
    holds: bool


@dataclass
class Conclusion:
    """
    One exact assertion. ``value`` counts the nonzero entries behind a
    vanishing statement when there is one.
    """
    statement: str
    passed: bool
    value: Fraction = None
    detail: str = ''


@dataclass
class Certificate:
    algebra: str
    theorem: str
    r: int
    n: int
    b_r: int
    ell: int = None
    hypotheses: list = field(default_factory=list)
    conclusions: list = field(default_factory=list)
    max_arity: int = None
    format_version: int = FORMAT_VERSION
    fingerprint: str = ''

    @property
    def passed(self):
        return all(conclusion.passed for conclusion in self.conclusions)


def fingerprint(description):
    """
    SHA-256 of the canonical text of a description.
    """
    return hashlib.sha256(emit(description).encode('utf-8')).hexdigest()


def _bound_hypotheses(theorem, r, n, b_r, ell):
    hypotheses = [Hypothesis('connectivity', 'r >= 2', r >= 2)]
    if theorem == 'A2':
        bound = ell * (r - 1) + 2
        hypotheses.append(Hypothesis('dimension', f'n <= {bound}', n <= bound))
        first = ell - 1
    elif theorem == 'zhou':
        bound = ell * (r - 1) + 4
        hypotheses.append(Hypothesis('dimension', f'n <= {bound}', n <= bound))
        hypotheses.append(Hypothesis('betti', 'b_r = 1', b_r == 1))
        first = ell - 1
    elif theorem == 'miller':
        bound = 4 * r - 2
        hypotheses.append(Hypothesis('dimension', f'n <= {bound}', n <= bound))
        first = 3
    else:
        bound = 4 * r
        hypotheses.append(Hypothesis('dimension', f'n <= {bound}', n <= bound))
        hypotheses.append(Hypothesis('betti', 'b_r = 1', b_r == 1))
        first = 3
    return hypotheses, first


def _vanishing_conclusions(structure, first):
    conclusions = []
    for k in range(max(first, 3), structure.max_arity + 1):
        entries = len(structure.m(k).keys())
        conclusions.append(Conclusion(
            f'm_{k} = 0', entries == 0, Fraction(entries),
            f'{entries} nonzero entries'
        ))
    return conclusions


def _harr_bm_conclusions(hodge, structure):
    mu3 = HochschildCochain.from_structure(structure)
    tensor = bianchi_massey(hodge)
    report = verify_harr_to_sym(tensor, mu3)
    obstruction = solve_formality_obstruction(mu3)
    return [
        Conclusion(
            'd Xi = mu_3 on all basis triples', report.ok,
            Fraction(len(report)), str(report)
        ),
        Conclusion(
            'obstruction result verifies', obstruction.verify(),
            detail='solvable' if obstruction.solvable else 'unsolvable'
        ),
        Conclusion(
            'tensor and obstruction agree', bm_equivalence(tensor, obstruction),
            detail=(
                f'tensor vanishes on bianchi subspace: '
                f'{tensor.vanishes_on_bianchi()}'
            )
        ),
    ]


def _canonicity_conclusions(algebra, structure, second_metric, r, max_p, workers):
    second = transfer_to_cohomology(transfer(
        construct_hodge_from_metric(algebra, second_metric),
        max_arity=structure.max_arity,
        workers=workers,
    ))
    mu3 = HochschildCochain.from_structure(structure)
    mu3_prime = HochschildCochain.from_structure(second)
    result = solve_formality_obstruction(mu3 - mu3_prime, support=r)
    conclusions = [
        Conclusion(
            'mu_3 - mu_3\' is a coboundary', result.solvable and result.verify(),
            detail='mu_3 and mu_3\' differ' if mu3 != mu3_prime else 'equal'
        )
    ]
    if result.solvable:
        morphism = CInftyMorphism(structure, second, {
            1: GradedLinearMap.identity(structure.space),
            2: result.witness.map,
        })
        report = check_morphism(morphism, up_to_p=max_p)
        conclusions.append(Conclusion(
            f'(id, phi_2) is a morphism through p = {max_p}', report.ok,
            Fraction(len(report)), str(report)
        ))
    return conclusions


def certify(
    description,
    theorem,
    ell=None,
    max_arity=None,
    max_p=None,
    metric=None,
    second_metric=None,
    workers=None,
):
    """
    Check a theorem on the algebra of ``description``.

    :param theorem: one of :data:`THEOREMS`
    :param ell: the bound parameter of ``A2`` and ``zhou``
    :param second_metric: required by ``canonicity``
    :raises NotApplicable: if a hypothesis fails
    :raises ContractViolation: for an unknown theorem or a missing parameter
    """
    if theorem not in THEOREMS:
        raise ContractViolation(
            f"Unknown theorem '{theorem}'; choose from {', '.join(THEOREMS)}."
        )
    if theorem in ('A2', 'zhou') and ell is None:
        raise ContractViolation(f"Theorem '{theorem}' needs ell.")
    if theorem == 'canonicity' and second_metric is None:
        raise ContractViolation("Theorem 'canonicity' needs a second metric.")
    settings = get_settings().override(
        max_arity=max_arity, max_p=max_p, workers=workers
    )
    algebra = load(description)
    hodge = load_hodge(description, algebra, metric)
    try:
        r = connectivity(algebra)
    except NotConnected as exc:
        raise NotApplicable(str(exc))
    betti = hodge.ring.betti
    n = algebra.top_degree
    b_r = betti[r] if r < len(betti) else 0
    certificate = Certificate(
        algebra=description.name,
        theorem=theorem,
        r=r,
        n=n,
        b_r=b_r,
        ell=ell,
        max_arity=settings.max_arity,
        fingerprint=fingerprint(description),
    )
    if theorem in ('A2', 'zhou', 'miller', 'cavalcanti'):
        hypotheses, first = _bound_hypotheses(theorem, r, n, b_r, ell)
    elif theorem == 'qshape':
        hypotheses = [Hypothesis('connectivity', 'r >= 1', r >= 1)]
    else:
        hypotheses = [Hypothesis('connectivity', 'r >= 2', r >= 2)]
    certificate.hypotheses = hypotheses
    if not all(hypothesis.holds for hypothesis in hypotheses):
        failed = ', '.join(h.requirement for h in hypotheses if not h.holds)
        raise NotApplicable(
            f"'{theorem}' does not apply to {description.name}: {failed}",
            hypotheses,
        )
    if theorem == 'qshape':
        report = qshape_check(hodge, r)
        certificate.conclusions = [
            Conclusion(
                f'degree {k} respects the {rule}', False, detail=detail
            )
            for k, rule, detail in report.violations
        ] or [Conclusion('degree profile of a small quotient', True)]
        return certificate
    structure = transfer_to_cohomology(
        transfer(hodge, max_arity=settings.max_arity, workers=settings.workers)
    )
    if theorem == 'harr-bm':
        certificate.conclusions = _harr_bm_conclusions(hodge, structure)
    elif theorem == 'canonicity':
        certificate.conclusions = _canonicity_conclusions(
            algebra, structure, second_metric, r,
            min(settings.max_p, settings.max_arity), settings.workers
        )
    else:
        certificate.conclusions = _vanishing_conclusions(structure, first)
    logger.info(
        '%s on %s: %s', theorem, description.name,
        'passed' if certificate.passed else 'FAILED'
    )
    return certificate
