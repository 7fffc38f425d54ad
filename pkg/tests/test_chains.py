import math
from fractions import Fraction

import pytest

from sawkit.chains import (
    chain_maximal_elements,
    chain_maximal_elements_bruteforce,
    chain_stats,
    check_chain_lemma,
    expected_weight,
    lym_sum,
    monte_carlo_chain_stats,
    sample_chain,
    chain_stream,
)
from sawkit.constructions import consecutive_layers, middle_layers, star
from sawkit.families import family_from_sets, mask_of
from sawkit.sampling import random_family, random_saw_family, stream


def test_lym_sum_examples():
    top = family_from_sets(4, [0b1111])
    assert lym_sum(top) == 1
    assert lym_sum(middle_layers(5, 1)) == 2
    assert lym_sum(star(3, 1)) == Fraction(1, 3) + Fraction(2, 3) + 1 == 2


def test_expected_weight_identity():
    assert expected_weight(family_from_sets(3, [])) == 0
    for i in range(300):
        n = 1 + i % 10
        fam = random_family(n, stream(71, i))
        assert expected_weight(fam) == len(fam)


def test_chain_stats_layers():
    stats = chain_stats(middle_layers(5, 1))
    assert stats.lym_sum == 2
    assert stats.expected_weight == 20
    assert stats.hits_by_layer[2] == 1 and stats.hits_by_layer[3] == 1
    assert stats.hits_by_layer[0] == 0


def test_sample_chain_basics():
    chain = sample_chain(1, chain_stream(3))
    assert chain.prefixes() == (0, 1)
    first = sample_chain(6, chain_stream(9)).order
    again = sample_chain(6, chain_stream(9)).order
    assert first == again
    assert sorted(first) == [1, 2, 3, 4, 5, 6]


def test_sample_chain_first_element_uniform():
    n = 5
    trials = 20_000
    rng = chain_stream(11)
    counts = [0] * (n + 1)
    for _ in range(trials):
        counts[sample_chain(n, rng).order[0]] += 1
    p = 1 / n
    sigma = math.sqrt(p * (1 - p) / trials)
    for e in range(1, n + 1):
        assert abs(counts[e] / trials - p) <= 3 * sigma


def test_monte_carlo_top_set_always_hit():
    fam = family_from_sets(4, [0b1111])
    stats = monte_carlo_chain_stats(fam, trials=2000, seed=1)
    assert stats.mean_hits == 1.0
    assert stats.var_hits == 0.0


def test_monte_carlo_matches_exact_within_three_sigma():
    fam = middle_layers(5, 1)
    stats = monte_carlo_chain_stats(fam, trials=50_000, seed=2)
    sigma_h = math.sqrt(stats.var_hits / stats.trials)
    sigma_w = math.sqrt(stats.var_weight / stats.trials)
    assert abs(stats.mean_hits - 2.0) <= 3 * sigma_h
    assert abs(stats.mean_weight - 20.0) <= 3 * sigma_w


def test_monte_carlo_worker_invariance():
    fam = star(4, 2)
    one = monte_carlo_chain_stats(fam, trials=10_000, seed=5, workers=1)
    many = monte_carlo_chain_stats(fam, trials=10_000, seed=5, workers=7)
    assert one == many


def test_chain_maximal_antichain_is_everything():
    fam = consecutive_layers(5, 2, 2)
    assert chain_maximal_elements(fam) == tuple(int(m) for m in fam.masks)


def test_chain_maximal_full_chain_only_top():
    fam = family_from_sets(3, [0b000, 0b001, 0b011, 0b111])
    assert chain_maximal_elements(fam) == (0b111,)


def test_chain_maximal_matches_bruteforce():
    for case in range(40):
        n = 2 + case % 7
        fam = random_family(n, stream(72, case), max_size=30)
        assert chain_maximal_elements(fam) == chain_maximal_elements_bruteforce(fam)


def test_check_chain_lemma_rejections():
    with pytest.raises(ValueError, match="empty set"):
        check_chain_lemma(family_from_sets(3, [0]))
    with pytest.raises(ValueError, match="saw"):
        check_chain_lemma(consecutive_layers(3, 1, 3))


def test_check_chain_lemma_equality_structure():
    report = check_chain_lemma(middle_layers(5, 1))
    assert report.bound_holds and report.equality
    assert report.structure_checked and report.structure_ok
    top = check_chain_lemma(family_from_sets(4, [0b1111]))
    assert top.bound_holds and not top.equality
    assert top.lym == 1


def test_chain_bound_on_random_saw_families():
    for case in range(400):
        n = 2 + case % 8
        fam = random_saw_family(n, stream(73, case), max_size=25)
        report = check_chain_lemma(fam)
        assert report.bound_holds
        if report.structure_checked:
            assert report.structure_ok
