from .graded import (  # noqa
    accumulate,
    clean,
    combine,
    GradedLinearMap,
    GradedVectorSpace,
    MultilinearMap,
    scale,
    subtract
)
