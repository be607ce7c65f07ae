"""The instance generators: determinism, recipe shape, validity."""

import math

from scx.complexes import Partition
from scx.domination import rep_value, total_domination
from scx.matroids import LinearMatroid, UniformMatroid
from scx.randomgen import (
    random_complex,
    random_linear_matroid,
    random_matroid,
    random_partition,
    random_representation,
    random_single_layer_complex,
    trial_rng,
)


def test_trial_rng_is_reproducible():
    a = trial_rng(7, 3)
    b = trial_rng(7, 3)
    assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]


def test_trial_rng_streams_differ_between_trials():
    draws = {tuple(trial_rng(0, t).random() for _ in range(3)) for t in range(50)}
    assert len(draws) == 50
    assert tuple(trial_rng(0, 1).random() for _ in range(3)) != tuple(
        trial_rng(1, 0).random() for _ in range(3)
    )


def test_random_complex_recipe_bounds():
    for t in range(200):
        x = random_complex(trial_rng(11, t), n_max=7, d_max=3)
        assert 4 <= x.n <= 7
        assert x.missing_faces
        sizes = {len(mu) for mu in x.missing_faces}
        assert min(sizes) >= 2
        assert max(sizes) <= 4


def test_random_complex_reproducible():
    xs = [random_complex(trial_rng(5, 9)) for _ in range(2)]
    assert xs[0].n == xs[1].n
    assert xs[0].missing_faces == xs[1].missing_faces


def test_random_complex_fixed_n_and_unmixed():
    for t in range(40):
        x = random_complex(trial_rng(2, t), n=6, mixed=False)
        assert x.n == 6
        assert len({len(mu) for mu in x.missing_faces}) == 1


def test_single_layer_always_has_dominating_set():
    for t in range(60):
        x = random_single_layer_complex(trial_rng(3, t))
        assert len({len(mu) for mu in x.missing_faces}) == 1
        assert not math.isinf(total_domination(x))


def test_random_representation_is_valid_and_positive():
    for t in range(30):
        rng = trial_rng(13, t)
        x = random_complex(rng)
        rep = random_representation(rng, x)
        v = rep_value(rep)
        assert v > 0


def test_random_partition_covers_ground_set():
    for t in range(40):
        rng = trial_rng(17, t)
        n = rng.randint(4, 9)
        m = rng.randint(1, n)
        part = random_partition(rng, n, m)
        assert isinstance(part, Partition)
        assert len(part.classes) == m
        seen = sorted(v for cls in part.classes for v in cls)
        assert seen == list(range(n))


def test_random_partition_rejects_bad_class_counts():
    rng = trial_rng(0, 0)
    for m in (0, 10):
        try:
            random_partition(rng, 5, m)
            raise AssertionError("expected ValueError")
        except ValueError:
            pass


def test_random_linear_matroid_loopless_with_rank():
    for t in range(40):
        m = random_linear_matroid(trial_rng(19, t))
        assert isinstance(m, LinearMatroid)
        assert 5 <= m.n <= 9
        assert m.full_rank >= 2
        for v in range(m.n):
            assert m.rank((v,)) == 1


def test_random_matroid_mixes_kinds():
    kinds = {type(random_matroid(trial_rng(23, t))) for t in range(60)}
    assert kinds == {LinearMatroid, UniformMatroid}
