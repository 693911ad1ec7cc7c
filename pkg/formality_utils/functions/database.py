import logging
import os

import sqlalchemy as sa
from sqlalchemy.engine.url import make_url

from ..exceptions import ImproperlyConfigured

logger = logging.getLogger(__name__)


def _sqlite_file_exists(database):
    if not os.path.isfile(database) or os.path.getsize(database) < 100:
        return False

    with open(database, 'rb') as f:
        header = f.read(100)

    return header[:16] == b'SQLite format 3\x00'


def _make_url(url):
    try:
        url = make_url(url)
    except sa.exc.ArgumentError as exc:
        raise ImproperlyConfigured(f"'{url}' is not a database URL: {exc}")
    backend = url.get_backend_name()
    if backend != 'sqlite':
        raise ImproperlyConfigured(
            f"Certificate archives are SQLite databases, got '{backend}'."
        )
    return url


def database_exists(url):
    """Check if the certificate archive database exists.

    :param url: A SQLite engine URL.

    The archive file is recognised by its SQLite header. ::

        database_exists('sqlite:///certificates.db')  #=> False
        create_database('sqlite:///certificates.db')
        database_exists('sqlite:///certificates.db')  #=> True
    """
    database = _make_url(url).database
    if database:
        return database == ':memory:' or _sqlite_file_exists(database)
    # The default SQLite database is in memory.
    return True


def create_database(url):
    """Create an empty certificate archive database.

    :param url: A SQLite engine URL.

    ::

        create_database('sqlite:///certificates.db')
    """
    url = _make_url(url)
    database = url.database
    if database and database != ':memory:':
        engine = sa.create_engine(url)
        with engine.begin() as conn:
            conn.execute(sa.text('CREATE TABLE DB(id int)'))
            conn.execute(sa.text('DROP TABLE DB'))
        engine.dispose()
    logger.info('created sqlite archive %s', database or ':memory:')


def open_archive(url, metadata):
    """Return an engine for the archive at ``url``, creating the database
    and the tables declared in ``metadata`` when they are missing.
    """
    if not database_exists(url):
        create_database(url)
    engine = sa.create_engine(url)
    metadata.create_all(engine)
    return engine
