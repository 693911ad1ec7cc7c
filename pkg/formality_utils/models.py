"""
SQLAlchemy models of the certificate archive.

::

    engine = open_archive('sqlite:///certificates.db', Base.metadata)
    session = sessionmaker(bind=engine)()
    archive_certificate(session, certificate)
    session.commit()
"""
from datetime import datetime, timezone

import sqlalchemy as sa
from sqlalchemy.orm import declarative_base, relationship

from .types import ScalarType

Base = declarative_base()


def _now():
    return datetime.now(tz=timezone.utc).replace(tzinfo=None)


class Timestamp:
    """Adds `created` and `updated` columns to a derived declarative model.

    The `updated` column is refreshed by a `before_update` event that
    propagates to every derived model.
    """

    created = sa.Column(sa.DateTime, default=_now, nullable=False)
    updated = sa.Column(sa.DateTime, default=_now, nullable=False)


@sa.event.listens_for(Timestamp, 'before_update', propagate=True)
def timestamp_before_update(mapper, connection, target):
    target.updated = _now()


NOT_LOADED_REPR = '<not loaded>'


def _generic_repr_method(self, fields):
    state = sa.inspect(self)
    field_reprs = []
    for key in fields:
        if key in state.unloaded:
            value = NOT_LOADED_REPR
        else:
            value = repr(state.attrs[key].loaded_value)
        field_reprs.append('='.join((key, value)))
    return '{}({})'.format(self.__class__.__name__, ', '.join(field_reprs))


def generic_repr(*fields):
    """Adds a ``__repr__()`` listing the given fields to a model. Fields
    that are not loaded are shown as ``<not loaded>`` instead of being
    loaded.
    """
    def decorator(cls):
        cls.__repr__ = lambda self: _generic_repr_method(self, fields)
        return cls
    return decorator


@generic_repr('id', 'algebra', 'theorem', 'passed')
class CertificateRecord(Base, Timestamp):
    __tablename__ = 'certificate'

    id = sa.Column(sa.Integer, primary_key=True)
    algebra = sa.Column(sa.Unicode(255), nullable=False, index=True)
    theorem = sa.Column(sa.Unicode(32), nullable=False)
    ell = sa.Column(sa.Integer)
    r = sa.Column(sa.Integer, nullable=False)
    n = sa.Column(sa.Integer, nullable=False)
    b_r = sa.Column(sa.Integer, nullable=False)
    passed = sa.Column(sa.Boolean, nullable=False)
    format_version = sa.Column(sa.Integer, nullable=False)
    max_arity = sa.Column(sa.Integer)
    fingerprint = sa.Column(sa.Unicode(64), nullable=False)

    conclusions = relationship(
        'ConclusionRecord',
        back_populates='certificate',
        order_by='ConclusionRecord.position',
        cascade='all, delete-orphan',
    )


@generic_repr('id', 'statement', 'passed')
class ConclusionRecord(Base):
    __tablename__ = 'conclusion'

    id = sa.Column(sa.Integer, primary_key=True)
    certificate_id = sa.Column(
        sa.Integer, sa.ForeignKey('certificate.id'), nullable=False
    )
    position = sa.Column(sa.Integer, nullable=False)
    statement = sa.Column(sa.UnicodeText, nullable=False)
    passed = sa.Column(sa.Boolean, nullable=False)
    value = sa.Column(ScalarType())
    detail = sa.Column(sa.UnicodeText, default='')

    certificate = relationship('CertificateRecord', back_populates='conclusions')


def archive_certificate(session, certificate):
    """
    Add a :class:`~formality_utils.certify.Certificate` to the session.
    The caller commits.
    """
    record = CertificateRecord(
        algebra=certificate.algebra,
        theorem=certificate.theorem,
        ell=certificate.ell,
        r=certificate.r,
        n=certificate.n,
        b_r=certificate.b_r,
        passed=certificate.passed,
        format_version=certificate.format_version,
        max_arity=certificate.max_arity,
        fingerprint=certificate.fingerprint,
        conclusions=[
            ConclusionRecord(
                position=position,
                statement=conclusion.statement,
                passed=conclusion.passed,
                value=conclusion.value,
                detail=conclusion.detail,
            )
            for position, conclusion in enumerate(certificate.conclusions)
        ],
    )
    session.add(record)
    return record


def certificate_history(session, algebra=None):
    """
    Archived certificates in insertion order, optionally for one algebra.
    """
    query = sa.select(CertificateRecord).order_by(CertificateRecord.id)
    if algebra is not None:
        query = query.where(CertificateRecord.algebra == algebra)
    return list(session.execute(query).scalars())
