import random

from mopbidiag.verify import CHECKS, format_table, random_instance, run_random


def test_generator_bounds():
    rng = random.Random(7)
    for _ in range(100):
        mu, n = random_instance(rng)
        assert 1 <= mu.q <= 3 and 1 <= mu.p <= 3
        assert 1 <= len(mu.support) <= 8 and 1 <= n <= 12
        assert all(v.denominator <= 12 for _, w in mu.support for row in w.tolists() for v in row)


def test_seeded_runs_repeat():
    a, b = run_random(8, seed=11), run_random(8, seed=11)
    assert a == b and a.ok
    assert format_table(a, []) == format_table(b, [])


def test_report_counts():
    rep = run_random(6, seed=2)
    assert rep.checked == 6
    assert set(rep.passes) == set(CHECKS) and all(v == 6 for v in rep.passes.values())
