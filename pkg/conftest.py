import os
import warnings

import pytest
import sqlalchemy as sa
import sqlalchemy.exc
from sqlalchemy import create_engine
from sqlalchemy.orm import declarative_base, sessionmaker
from sqlalchemy.orm.session import close_all_sessions

from formality_utils import (
    construct_hodge_from_metric,
    corpus_path,
    load,
    load_hodge,
    load_metric,
    models,
    parse,
    transfer,
    transfer_to_cohomology
)

warnings.simplefilter('error', sa.exc.SAWarning)


def corpus_description(name):
    return parse(corpus_path(name))


def corpus_algebra(name):
    return load(corpus_description(name))


def corpus_hodge(name, metric=None):
    description = corpus_description(name)
    return load_hodge(description, load(description), metric)


def corpus_structure(name, max_arity=3, metric=None):
    return transfer_to_cohomology(
        transfer(corpus_hodge(name, metric), max_arity=max_arity)
    )


@pytest.fixture(scope='session')
def db_name():
    return os.environ.get('FORMALITY_UTILS_TEST_DB', 'formality_utils_test')


@pytest.fixture
def sqlite_memory_dsn():
    return 'sqlite:///:memory:'


@pytest.fixture
def sqlite_none_database_dsn():
    return 'sqlite://'


@pytest.fixture
def sqlite_file_dsn(db_name, tmp_path):
    return f'sqlite:///{tmp_path / db_name}.db'


@pytest.fixture
def dsn(request):
    if 'sqlite_file_dsn' in request.fixturenames:
        return request.getfixturevalue('sqlite_file_dsn')
    return request.getfixturevalue('sqlite_memory_dsn')


@pytest.fixture
def engine(dsn):
    engine = create_engine(dsn)
    # engine.echo = True
    return engine


@pytest.fixture
def connection(engine):
    return engine.connect()


@pytest.fixture
def Base():
    return declarative_base()


@pytest.fixture
def init_models():
    pass


@pytest.fixture
def session(request, engine, connection, Base, init_models):
    sa.orm.configure_mappers()
    with connection.begin():
        Base.metadata.create_all(connection)
        models.Base.metadata.create_all(connection)
    Session = sessionmaker(bind=connection)
    session = Session(future=True)

    def teardown():
        close_all_sessions()
        with connection.begin():
            models.Base.metadata.drop_all(connection)
            Base.metadata.drop_all(connection)
        connection.close()
        engine.dispose()

    request.addfinalizer(teardown)

    return session


@pytest.fixture(scope='session')
def s3():
    return corpus_algebra('s3')


@pytest.fixture(scope='session')
def cp2():
    return corpus_algebra('cp2')


@pytest.fixture(scope='session')
def seven_dim():
    return corpus_algebra('seven_dim')


@pytest.fixture(scope='session')
def eleven_dim():
    return corpus_algebra('eleven_dim')


@pytest.fixture(scope='session')
def cp2_s7():
    return corpus_algebra('cp2_s7')


@pytest.fixture(scope='session')
def hodge_family():
    return corpus_algebra('hodge_family')


@pytest.fixture(scope='session')
def second_metric():
    return load_metric(corpus_path('hodge_family_metric'))


@pytest.fixture(scope='session')
def eleven_dim_hodge():
    return corpus_hodge('eleven_dim')


@pytest.fixture(scope='session')
def cp2_s7_hodge():
    return corpus_hodge('cp2_s7')


@pytest.fixture(scope='session')
def eleven_dim_structure():
    return corpus_structure('eleven_dim', max_arity=4)


@pytest.fixture(scope='session')
def cp2_s7_structure():
    return corpus_structure('cp2_s7', max_arity=3)


@pytest.fixture(scope='session')
def hodge_family_structures(hodge_family, second_metric):
    return [
        transfer_to_cohomology(transfer(
            construct_hodge_from_metric(hodge_family, metric), max_arity=3
        ))
        for metric in ({}, second_metric)
    ]


@pytest.fixture(scope='session')
def corpus():
    return corpus_algebra


@pytest.fixture(scope='session')
def corpus_transfer():
    """
    Transfers onto harmonic space, cached per ``(name, max_arity)``.
    """
    cache = {}

    def corpus_transfer(name, max_arity):
        if (name, max_arity) not in cache:
            cache[name, max_arity] = transfer(
                corpus_hodge(name), max_arity=max_arity
            )
        return cache[name, max_arity]
    return corpus_transfer


@pytest.fixture(scope='session')
def corpus_cohomology_structure(corpus_transfer):
    cache = {}

    def corpus_cohomology_structure(name, max_arity):
        if (name, max_arity) not in cache:
            cache[name, max_arity] = transfer_to_cohomology(
                corpus_transfer(name, max_arity)
            )
        return cache[name, max_arity]
    return corpus_cohomology_structure
