import os

import pytest

from formality_utils import (
    corpus_names,
    corpus_path,
    load,
    parse,
    validate_pdgca
)


class TestCorpus:
    def test_names(self):
        assert corpus_names() == [
            'cp2',
            'cp2_s7',
            'cp3',
            'cp4',
            'eleven_dim',
            'hodge_family',
            's2xs7',
            's3',
            'seven_dim',
        ]

    def test_metric_path(self):
        path = corpus_path('hodge_family_metric')
        assert path.endswith('.metric')
        assert os.path.exists(path)

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            corpus_path('cp5')

    @pytest.mark.parametrize('name', corpus_names())
    def test_every_algebra_is_valid(self, name):
        description = parse(corpus_path(name))
        assert description.name == name
        assert validate_pdgca(load(description)).ok
