import io
import json

import pytest

from formality_utils import __version__
from formality_utils.cli import (
    EXIT_FAILED,
    EXIT_INPUT,
    EXIT_NOT_APPLICABLE,
    EXIT_OK,
    main
)

ACYCLIC_BAND = '''
name: acyclic_band
top_degree: 5

[basis]
1: 0
u: 2
p: 2
v: 3
q: 3
om: 5

[differential]
u: v
p: q

[product]
u * q: om
p * v: -om

[integral]
om: 1
'''


def run(*argv):
    out = io.StringIO()
    status = main(list(argv), out=out)
    return status, out.getvalue()


@pytest.fixture(autouse=True)
def environment(monkeypatch):
    for name in ('ARCHIVE', 'MAX_ARITY', 'MAX_P', 'WORKERS', 'LOG_LEVEL'):
        monkeypatch.delenv('FORMALITY_UTILS_' + name, raising=False)


@pytest.fixture
def acyclic_band(tmp_path):
    path = tmp_path / 'acyclic_band.alg'
    path.write_text(ACYCLIC_BAND)
    return str(path)


class TestValidate:
    def test_corpus_algebra(self):
        status, output = run('validate', 'eleven_dim')
        assert status == EXIT_OK
        assert output == 'algebra:\n  ok: yes\n  violations: none\n'

    def test_machine_format(self):
        status, output = run('validate', 'eleven_dim', '--format', 'machine')
        assert status == EXIT_OK
        assert json.loads(output) == {'algebra': {'ok': True, 'violations': []}}

    def test_with_metric(self):
        status, output = run(
            'validate', 'hodge_family',
            '--metric', 'hodge_family_metric',
            '--format', 'machine',
        )
        assert status == EXIT_OK
        assert json.loads(output)['hodge'] == {'ok': True, 'violations': []}


class TestInputErrors:
    def test_missing_file(self, capsys):
        status, output = run('validate', 'no_such_algebra')
        assert status == EXIT_INPUT
        assert output == ''
        assert (
            "error: no such file or bundled algebra: 'no_such_algebra'\n"
            in capsys.readouterr().err
        )

    def test_missing_ell(self, capsys):
        status, _ = run('certify', 'cp2', '--theorem', 'A2')
        assert status == EXIT_INPUT
        assert "error: Theorem 'A2' needs ell.\n" in capsys.readouterr().err

    def test_archive_is_required(self, capsys):
        status, _ = run('certificates')
        assert status == EXIT_INPUT
        assert 'No archive given' in capsys.readouterr().err

    def test_unknown_theorem_is_rejected_by_the_parser(self):
        with pytest.raises(SystemExit) as e:
            run('certify', 'cp2', '--theorem', 'hopf')
        assert e.value.code == 2


class TestCommands:
    def test_cohomology(self):
        status, output = run('cohomology', 'cp2', '--format', 'machine')
        assert status == EXIT_OK
        assert json.loads(output)['betti'] == [1, 0, 1, 0, 1]

    def test_transfer(self):
        status, output = run(
            'transfer', 'cp2_s7', '--max-arity', '3', '--format', 'machine'
        )
        assert status == EXIT_OK
        assert set(json.loads(output)['operations']) == {'m_2', 'm_3'}

    def test_check(self):
        status, output = run(
            'check', 'eleven_dim', '--max-arity', '3', '--stasheff', '--shuffle'
        )
        assert status == EXIT_OK
        assert output.startswith('stasheff:\n  ok: yes\n')

    def test_harrison_obstruction(self):
        status, output = run(
            'harrison-obstruction', 'eleven_dim',
            '--max-arity', '3', '--format', 'machine',
        )
        data = json.loads(output)
        assert status == EXIT_OK
        assert data['solvable'] is False
        assert data['verified'] is True

    def test_compare_hodge(self):
        status, output = run(
            'compare-hodge', 'hodge_family',
            '--second-metric', 'hodge_family_metric',
            '--format', 'machine',
        )
        data = json.loads(output)
        assert status == EXIT_OK
        assert data['distinct_mu3'] == 2
        assert data['cohomologous'] is True

    def test_version(self, capsys):
        with pytest.raises(SystemExit):
            run('--version')
        assert capsys.readouterr().out.strip() == __version__


class TestCertify:
    def test_passed(self):
        status, output = run(
            'certify', 'cp3', '--theorem', 'miller', '--max-arity', '3',
            '--format', 'machine',
        )
        data = json.loads(output)
        assert status == EXIT_OK
        assert data['passed'] is True
        assert data['parameters']['n'] == 6

    def test_not_applicable(self):
        status, output = run('certify', 'eleven_dim', '--theorem', 'miller')
        assert status == EXIT_NOT_APPLICABLE
        assert 'verdict: not applicable\n' in output

    def test_failed(self, acyclic_band):
        status, output = run('certify', acyclic_band, '--theorem', 'qshape')
        assert status == EXIT_FAILED
        assert 'passed: no\n' in output

    def test_archive(self, sqlite_file_dsn):
        for theorem in ('miller', 'qshape'):
            status, _ = run(
                'certify', 'cp3', '--theorem', theorem, '--max-arity', '3',
                '--archive', sqlite_file_dsn,
            )
            assert status == EXIT_OK

        status, output = run(
            'certificates', '--archive', sqlite_file_dsn, '--format', 'machine'
        )
        records = json.loads(output)['certificates']
        assert status == EXIT_OK
        assert [r['theorem'] for r in records] == ['miller', 'qshape']
        assert all(r['algebra'] == 'cp3' and r['passed'] for r in records)

    def test_archive_filter(self, sqlite_file_dsn):
        run(
            'certify', 'cp3', '--theorem', 'miller', '--max-arity', '3',
            '--archive', sqlite_file_dsn,
        )
        status, output = run(
            'certificates', '--archive', sqlite_file_dsn,
            '--algebra', 'cp4', '--format', 'machine',
        )
        assert status == EXIT_OK
        assert json.loads(output) == {'certificates': []}
