"""
Bundled algebra descriptions.
"""
import os

CORPUS_DIR = os.path.dirname(os.path.abspath(__file__))

EXTENSIONS = ('.alg', '.metric')


def corpus_names():
    """
    Names of the bundled algebras, sorted.
    """
    return sorted(
        filename[:-len('.alg')]
        for filename in os.listdir(CORPUS_DIR)
        if filename.endswith('.alg')
    )


def corpus_path(name):
    """
    Path of a bundled description (``.alg``) or metric (``.metric``) file.

    :raises KeyError: if nothing with that name is bundled
    """
    for extension in EXTENSIONS:
        path = os.path.join(CORPUS_DIR, name + extension)
        if os.path.exists(path):
            return path
    raise KeyError(name)
