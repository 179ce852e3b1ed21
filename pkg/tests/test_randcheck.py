import math
import random

import pytest

from waringeq.exactla import Matrix, det, polyval_matrix
from waringeq.randcheck import (
    SampleConfig,
    exact_family_commutes,
    family_commutes_randomized,
    random_matrix,
)
from waringeq.scalarpoly import UniPoly


def test_config_validation():
    with pytest.raises(ValueError):
        SampleConfig(set_size=1)
    with pytest.raises(ValueError):
        SampleConfig(trials=0)
    with pytest.raises(ValueError):
        SampleConfig(seed=-1)
    assert SampleConfig().set_size == 2**31


def test_random_matrix_deterministic():
    cfg = SampleConfig(seed=42)
    assert random_matrix(4, cfg) == random_matrix(4, cfg)
    assert random_matrix(4, cfg) != random_matrix(4, SampleConfig(seed=43))


def test_random_matrix_range_small_set():
    cfg = SampleConfig(set_size=2, seed=1)
    rng = cfg.stream(0, 0)
    seen = set()
    for _ in range(50):
        m = random_matrix(1, cfg, rng)
        seen.add(m[0, 0])
    assert seen == {1, 2}


def test_random_matrix_rarely_singular():
    cfg = SampleConfig(set_size=10**6, seed=3)
    rng = cfg.stream(0, 0)
    singular = sum(det(random_matrix(3, cfg, rng)) == 0 for _ in range(1000))
    assert singular / 1000 <= 0.01


def test_streams_are_independent_of_order():
    cfg = SampleConfig(seed=9)
    a = cfg.draw(cfg.stream(2, 5), 4)
    cfg.draw(cfg.stream(2, 4), 100)
    assert cfg.draw(cfg.stream(2, 5), 4) == a


def test_diagonal_family_always_commutes():
    fam = [Matrix.diag([1, 2, 3]), Matrix.diag([0, 5, -1]), Matrix.diag([7, 7, 7])]
    cfg = SampleConfig(set_size=10, seed=0)
    rng = cfg.stream(2, 0)
    assert all(family_commutes_randomized(fam, cfg, rng) for _ in range(200))


def test_singleton_and_empty():
    cfg = SampleConfig()
    assert family_commutes_randomized([Matrix([[1, 2], [3, 4]])], cfg)
    assert family_commutes_randomized([], cfg)


def test_size_mismatch_raises():
    with pytest.raises(ValueError):
        family_commutes_randomized([Matrix.identity(2), Matrix.identity(3)], SampleConfig())


def test_nilpotent_pair_detected():
    fam = [Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]])]
    assert not exact_family_commutes(fam)
    cfg = SampleConfig(set_size=10**6, seed=5)
    rng = cfg.stream(2, 0)
    rejected = sum(not family_commutes_randomized(fam, cfg, rng) for _ in range(1000))
    assert rejected / 1000 >= 0.997


def test_one_sided_on_polynomial_families():
    rng = random.Random(12)
    cfg = SampleConfig(set_size=5, seed=2)
    stream = cfg.stream(2, 0)
    for _ in range(30):
        n = rng.randint(2, 4)
        base = Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        fam = [polyval_matrix(UniPoly([rng.randint(-2, 2) for _ in range(rng.randint(1, 4))]), base) for _ in range(4)]
        assert exact_family_commutes(fam)
        assert all(family_commutes_randomized(fam, cfg, stream) for _ in range(20))


def test_false_accept_rate_small_set():
    fam = [Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]]), Matrix.diag([1, 2])]
    cfg = SampleConfig(set_size=20, seed=7)
    stream = cfg.stream(2, 0)
    trials = 4000
    accepts = sum(family_commutes_randomized(fam, cfg, stream) for _ in range(trials))
    p = 2 / 20
    assert accepts / trials <= p + 3 * math.sqrt(p * (1 - p) / trials)
