import numpy as np
import pytest

from src.core.families import FamilyKind, FamilySpec, generate_family, random_hypergraph
from src.core.hypergraph import make_hypergraph
from src.core.modes import CensusMode
from src.database.db_manager import reset_db_manager
from src.utils.config import LoggingSettings, PathSettings, Settings, reset_settings, set_settings

CORPUS_SEED = 20240611
CORPUS_SIZE = 100


@pytest.fixture(autouse=True)
def settings(tmp_path):
    """Built-in defaults with every output path inside the test's temporary directory"""
    s = Settings(
        paths=PathSettings(reports=str(tmp_path / "reports"), checkpoints=str(tmp_path / "checkpoints")),
        database_url=f"sqlite:///{tmp_path / 'hgpoly.db'}",
        logging=LoggingSettings(file=str(tmp_path / "hgpoly.log")),
    )
    set_settings(s)
    yield s
    reset_settings()
    reset_db_manager()


def build_corpus():
    """
    About a hundred hypergraphs on at most 6 vertices: hand-picked cases,
    family instances, then seeded random members of every census mode.
    """
    corpus = [
        make_hypergraph(1, []),
        make_hypergraph(3, []),
        make_hypergraph(3, [[1, 2, 3]]),
        make_hypergraph(3, [[1, 2], [2, 3], [1, 3]]),
        make_hypergraph(4, [[1, 2], [3, 4]]),
        make_hypergraph(4, [[1, 2], [1, 2, 3], [1, 2, 3, 4]]),
        make_hypergraph(5, [[1, 2, 3], [3, 4, 5], [1, 5]]),
        make_hypergraph(6, [[1, 2, 3, 4, 5, 6]]),
    ]
    for spec in (
        FamilySpec(FamilyKind.HYPERCYCLE, m=3, r=3),
        FamilySpec(FamilyKind.HYPERPATH, m=2, r=3),
        FamilySpec(FamilyKind.HYPERPATH, m=5, r=2),
        FamilySpec(FamilyKind.SUNFLOWER, r=3, p=1, k=4),
        FamilySpec(FamilyKind.SUNFLOWER, r=4, p=2, k=2),
        FamilySpec(FamilyKind.SUNFLOWER, r=3, p=2, k=2),
        FamilySpec(FamilyKind.COMPLETE_R, n=5, r=3),
        FamilySpec(FamilyKind.COMPLETE_R, n=4, r=2),
        FamilySpec(FamilyKind.EMPTY, n=6),
    ):
        corpus.append(generate_family(spec))

    rng = np.random.default_rng(CORPUS_SEED)
    modes = (CensusMode.uniform(2), CensusMode.uniform(3), CensusMode.sperner(), CensusMode.all())
    while len(corpus) < CORPUS_SIZE:
        n = int(rng.integers(2, 7))
        mode = modes[len(corpus) % len(modes)]
        corpus.append(random_hypergraph(n, rng, mode, edge_probability=float(rng.uniform(0.15, 0.5))))
    return corpus


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture
def triple():
    return make_hypergraph(3, [[1, 2, 3]])


@pytest.fixture
def hypercycle():
    """C_3^3 on 6 vertices"""
    return generate_family(FamilySpec(FamilyKind.HYPERCYCLE, m=3, r=3))


@pytest.fixture
def sunflower_723():
    """SH(7,2,3): three 3-edges through vertex 1"""
    return generate_family(FamilySpec(FamilyKind.SUNFLOWER, n=7, p=2, r=3))
