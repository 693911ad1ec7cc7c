from fractions import Fraction

import sqlalchemy as sa
from sqlalchemy import types

from ..utils import format_scalar, to_scalar


class ScalarType(types.TypeDecorator):
    """
    ScalarType stores an exact rational number as text ``p/q`` and gives it
    back as :class:`~fractions.Fraction`. Floats are refused on the way in
    since they would lose exactness.

    Example ::


        from formality_utils.types import ScalarType


        class Conclusion(Base):
            __tablename__ = 'conclusion'
            id = sa.Column(sa.Integer, primary_key=True)
            value = sa.Column(ScalarType())


        conclusion = Conclusion(value=Fraction(1, 3))
        session.commit()
        conclusion.value  # Fraction(1, 3)
    """
    impl = sa.UnicodeText()

    cache_ok = True

    def process_bind_param(self, value, dialect):
        # Fraction(2, 4) -> '1/2'
        if value is not None:
            return format_scalar(to_scalar(value))

    def process_result_value(self, value, dialect):
        if value is not None:
            return to_scalar(value)

    @property
    def python_type(self):
        return Fraction
