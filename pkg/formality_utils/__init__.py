from .bianchi_massey import (  # noqa
    alpha2,
    bianchi_massey,
    BianchiMasseyTensor,
    bm_equivalence,
    gamma,
    symmetric_normal_form,
    SymmetricSquareElement,
    top_degree_reduction,
    verify_harr_to_sym
)
from .certify import (  # noqa
    Certificate,
    certify,
    Conclusion,
    fingerprint,
    Hypothesis,
    THEOREMS
)
from .cinfty import (  # noqa
    bar_sign,
    check_morphism,
    check_shuffle_vanishing,
    check_stasheff,
    check_unitality,
    CInftyMorphism,
    gauge_by_phi2,
    shuffle_report,
    stasheff_value
)
from .config import get_settings, Settings  # noqa
from .corpus import corpus_names, corpus_path  # noqa
from .description import (  # noqa
    AlgebraDescription,
    emit,
    load,
    load_hodge,
    load_metric,
    parse,
    parse_metric_string,
    parse_string
)
from .exceptions import (  # noqa
    ContractViolation,
    FormalityError,
    ImproperlyConfigured,
    InvalidAlgebra,
    InvalidCochain,
    InvalidHodgeHomotopy,
    MetricError,
    MetricIncompatible,
    MetricNotPositiveDefinite,
    MismatchedInputs,
    NotAnIsomorphism,
    NotApplicable,
    NotConnected,
    ParseError,
    ValidationError
)
from .functions import (  # noqa
    create_database,
    database_exists,
    koszul_sign,
    open_archive,
    shuffle_terms
)
from .harrison import (  # noqa
    CochainSpace,
    compare_classes,
    harrison_cohomology_dim,
    harrison_subspace_basis,
    hochschild_differential,
    HochschildCochain,
    ObstructionResult,
    restrict_to_multiples,
    solve_formality_obstruction
)
from .hodge import (  # noqa
    construct_hodge_from_metric,
    ensure_valid_hodge,
    harmonic_projector,
    hodge_family_check,
    HodgeHomotopy,
    qshape_check,
    QShapeReport,
    validate_hodge
)
from .models import (  # noqa
    archive_certificate,
    Base,
    certificate_history,
    CertificateRecord,
    ConclusionRecord,
    generic_repr,
    Timestamp
)
from .pdgca import (  # noqa
    chain_pairing_matrix,
    cohomology,
    CohomologyRing,
    connectivity,
    is_nondegenerate,
    pairing,
    PDGCA,
    validate_pdgca,
    ValidationReport,
    Violation
)
from .primitives import (  # noqa
    GradedLinearMap,
    GradedVectorSpace,
    MultilinearMap
)
from .report import render  # noqa
from .transfer import (  # noqa
    merkulov_hat,
    MinimalCInftyStructure,
    transfer,
    transfer_to_cohomology,
    vanishing_profile,
    VanishingProfile
)
from .trees import (  # noqa
    binary_trees,
    tree_count,
    tree_sign,
    tree_summation_oracle
)
from .types import ScalarType  # noqa

__version__ = '0.1.0'
