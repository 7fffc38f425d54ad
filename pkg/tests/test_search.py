import pytest

from sawkit.constructions import (
    consecutive_layers,
    extremal_intersecting_saw_families_odd,
    extremal_t_saw_families,
    lightning,
    max_t_saw_size,
    middle_layers,
    odd_intersecting_extremal,
)
from sawkit.families import is_intersecting, is_t_saw
from sawkit.search import (
    Mode,
    SearchProblem,
    SearchStatus,
    conjecture_probe,
    exhaustive_oracle,
    expand_orbits,
    search_max,
    verify_classification,
)


def family_sets(outcome):
    return {fam.mask_set() for fam in outcome.optima}


def test_exhaustive_n4_t1_two_window_optima():
    outcome = search_max(
        SearchProblem(n=4, t=1, mode=Mode.EXHAUSTIVE, enumerate_all_optima=True)
    )
    assert outcome.optimum == 10
    assert family_sets(outcome) == {
        consecutive_layers(4, 1, 2).mask_set(),
        consecutive_layers(4, 2, 3).mask_set(),
    }


def test_exhaustive_n4_t3_sixteen_optima():
    outcome = search_max(
        SearchProblem(n=4, t=3, mode=Mode.EXHAUSTIVE, enumerate_all_optima=True)
    )
    assert outcome.optimum == 15
    assert len(outcome.optima) == 16


def test_oracle_sperner_and_small_values():
    assert exhaustive_oracle(4, 0).optimum == 6
    assert exhaustive_oracle(3, 1, require_intersecting=True).optimum == 4


def test_bb_symmetry_n5_unique_window():
    outcome = search_max(
        SearchProblem(n=5, t=1, symmetry=True, enumerate_all_optima=True)
    )
    assert outcome.optimum == 20
    assert outcome.status is SearchStatus.PROVED
    assert outcome.orbit_sizes == (1,)
    labeled = expand_orbits(5, outcome.optima)
    assert len(labeled) == 1
    assert labeled[0] == middle_layers(5, 1)


def test_intersecting_n3_four_optima():
    outcome = exhaustive_oracle(3, 1, require_intersecting=True)
    assert outcome.optimum == 4
    predicted = {fam.mask_set() for fam in extremal_intersecting_saw_families_odd(2)}
    assert family_sets(outcome) == predicted


def test_intersecting_n5_unique_optimum():
    outcome = search_max(
        SearchProblem(n=5, t=1, require_intersecting=True, enumerate_all_optima=True)
    )
    assert outcome.optimum == 15
    assert len(outcome.optima) == 1
    assert outcome.optima[0] == odd_intersecting_extremal(3)


def test_intersecting_n4_conjectured_value():
    outcome = exhaustive_oracle(4, 1, require_intersecting=True)
    assert outcome.optimum == 7
    assert lightning(2).mask_set() in family_sets(outcome)


@pytest.mark.parametrize("n", range(1, 5))
def test_bb_matches_oracle(n):
    for t in range(0, n + 1):
        for intersecting in (False, True):
            oracle = exhaustive_oracle(n, t, require_intersecting=intersecting)
            bb = search_max(
                SearchProblem(
                    n=n, t=t, require_intersecting=intersecting, enumerate_all_optima=True
                )
            )
            assert bb.optimum == oracle.optimum
            assert family_sets(bb) == family_sets(oracle)


@pytest.mark.parametrize("n", range(2, 5))
def test_symmetry_expansion_reproduces_labeled_optima(n):
    for t in range(0, n + 1):
        labeled = search_max(
            SearchProblem(n=n, t=t, enumerate_all_optima=True)
        )
        symmetric = search_max(
            SearchProblem(n=n, t=t, symmetry=True, enumerate_all_optima=True)
        )
        assert symmetric.optimum == labeled.optimum
        expanded = {fam.mask_set() for fam in expand_orbits(n, symmetric.optima)}
        assert expanded == family_sets(labeled)
        assert sum(symmetric.orbit_sizes) == len(labeled.optima)


def test_oracle_first_set_reduction_is_lossless():
    for n in range(2, 5):
        for t in (0, 1):
            for intersecting in (False, True):
                plain = exhaustive_oracle(n, t, require_intersecting=intersecting)
                reduced = exhaustive_oracle(
                    n, t, require_intersecting=intersecting, _force_reduction=True
                )
                assert plain.optimum == reduced.optimum
                assert family_sets(plain) == family_sets(reduced)


def test_oracle_n5_intersecting_agrees_with_bb():
    oracle = exhaustive_oracle(5, 1, require_intersecting=True)
    assert oracle.optimum == 15
    assert family_sets(oracle) == {odd_intersecting_extremal(3).mask_set()}


def test_search_results_reverified_and_deterministic():
    problem = SearchProblem(n=4, t=2, enumerate_all_optima=True)
    first = search_max(problem)
    second = search_max(problem)
    assert first.optimum == second.optimum == 14
    assert first.nodes_explored == second.nodes_explored
    assert [f.mask_set() for f in first.optima] == [f.mask_set() for f in second.optima]
    for fam in first.optima:
        assert is_t_saw(fam, 2)


def test_layer_window_restriction():
    outcome = search_max(
        SearchProblem(n=6, t=1, layer_window=(3, 4), enumerate_all_optima=True)
    )
    assert outcome.optimum == len(consecutive_layers(6, 3, 4))
    assert outcome.optima[0] == consecutive_layers(6, 3, 4)


def test_budget_exhaustion_is_reported():
    outcome = search_max(SearchProblem(n=5, t=2, budget=50, enumerate_all_optima=True))
    assert outcome.status is SearchStatus.BUDGET_EXHAUSTED
    assert outcome.nodes_explored <= 51


def test_mode_guards():
    with pytest.raises(ValueError, match="exhaustive"):
        search_max(SearchProblem(n=5, t=1, mode=Mode.EXHAUSTIVE))
    with pytest.raises(ValueError, match="symmetry"):
        search_max(SearchProblem(n=8, t=1, symmetry=True))
    with pytest.raises(ValueError):
        search_max(SearchProblem(n=4, t=5))
    with pytest.raises(ValueError):
        exhaustive_oracle(5, 1)
    with pytest.raises(ValueError):
        exhaustive_oracle(6, 1, require_intersecting=True)


@pytest.mark.parametrize("n,t", [(4, 0), (4, 1), (4, 2), (4, 3), (4, 4), (3, 1), (5, 1)])
def test_verify_classification(n, t):
    report = verify_classification(n, t)
    assert report.ok
    assert report.optimum == max_t_saw_size(n, t)
    assert not report.missing and not report.extra


def test_conjecture_probe_k2_matches():
    probe = conjecture_probe(2)
    assert probe.verdict == "matched"
    assert probe.outcome.optimum == 7
    assert probe.outcome.status is SearchStatus.PROVED


def test_conjecture_probe_k3_proves_26():
    probe = conjecture_probe(3)
    assert probe.verdict == "matched"
    assert probe.outcome.optimum == 26
    assert len(probe.incumbent) == 26
    assert is_intersecting(probe.incumbent) and is_t_saw(probe.incumbent, 1)


def test_conjecture_probe_budget_honesty():
    probe = conjecture_probe(3, budget=100)
    assert probe.verdict == "unresolved"
    assert probe.outcome.status is SearchStatus.BUDGET_EXHAUSTED
    assert probe.incumbent == lightning(3)


def test_n6_intersecting_full_optima_orbits():
    outcome = search_max(
        SearchProblem(
            n=6, t=1, require_intersecting=True, symmetry=True, enumerate_all_optima=True
        )
    )
    assert outcome.optimum == 26
    assert sorted(outcome.orbit_sizes) == [6, 30]
    labeled = expand_orbits(6, outcome.optima)
    assert len(labeled) == 36
    assert lightning(3).mask_set() in {fam.mask_set() for fam in labeled}
