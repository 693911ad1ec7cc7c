from .database import create_database, database_exists, open_archive  # noqa
from .linalg import (  # noqa
    identity,
    image_basis,
    inverse,
    is_positive_definite,
    kernel_basis,
    left_annihilator,
    matmul,
    rank,
    rref,
    solve_linear,
    transpose
)
from .signs import (  # noqa
    compose,
    koszul_sign,
    permutation_sign,
    shuffle_terms,
    shuffles
)
