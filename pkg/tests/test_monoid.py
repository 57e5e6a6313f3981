import pytest

from pentagon import (
    BudgetError,
    GrowthSeries,
    ValidationError,
    canonical_solution,
    cyclic_group,
    enumerate_pruned,
    estimate_growth_degree,
    group_solution,
    growth_series,
    identity_solution,
    irretractable_solution,
    normal_forms,
    presentation_of,
    rank_expected,
    series_from_presentation,
)
from pentagon.monoid import MonoidPresentation, _dense_stratum, _rewrites

from conftest import small_involutive_panel


def test_presentation_of_bitmask_solution():
    pres = presentation_of(irretractable_solution(1))
    nontrivial = {r for r in pres.relations if r[0] != r[1]}
    assert nontrivial == {
        ((0, 1), (1, 0)),
        ((1, 0), (1, 1)),
        ((1, 1), (0, 1)),
    }


def test_presentation_of_identity_solution():
    pres = presentation_of(identity_solution(2))
    nontrivial = {r for r in pres.relations if r[0] != r[1]}
    # theta is trivial and multiplication is left zero, so x.y = y.x
    assert nontrivial == {((0, 1), (1, 0)), ((1, 0), (0, 1))}


def test_presentation_of_singleton():
    pres = presentation_of(identity_solution(1))
    assert all(lhs == rhs for lhs, rhs in pres.relations)


def test_growth_series_examples():
    assert growth_series(irretractable_solution(1), 5).counts == (1, 2, 2, 2, 2, 2)
    assert growth_series(identity_solution(2), 4).counts == (1, 2, 3, 4, 5)
    assert growth_series(identity_solution(1), 3).counts == (1, 1, 1, 1)


def test_growth_series_free_abelian_oracle():
    # identity solutions present free abelian monoids; class counts must
    # match the multiset count C(length + n - 1, n - 1)
    from math import comb

    for n in (1, 2, 3):
        counts = growth_series(identity_solution(n), 5).counts
        for ell, c in enumerate(counts):
            assert c == comb(ell + n - 1, n - 1)


def test_growth_engines_agree():
    for s in small_involutive_panel():
        if s.size > 4:
            continue
        dense = growth_series(s, 5, method="dense")
        strat = growth_series(s, 5, method="stratified")
        assert dense == strat
    big = canonical_solution(3, 1, 1)
    dense = growth_series(big, 3, method="dense")
    strat = growth_series(big, 3, method="stratified")
    assert dense == strat


def test_growth_series_budget():
    with pytest.raises(BudgetError):
        growth_series(canonical_solution(3, 1, 1), 7, method="dense")
    with pytest.raises(BudgetError):
        growth_series(identity_solution(4), 6, word_budget=100, method="stratified")


def test_growth_series_bad_arguments():
    with pytest.raises(ValidationError):
        growth_series(identity_solution(2), -1)
    with pytest.raises(ValidationError):
        growth_series(identity_solution(2), 3, method="magic")


def test_rank_expected_examples():
    assert rank_expected(canonical_solution(3, 1, 1)) == 3
    assert rank_expected(irretractable_solution(1)) == 1
    for n in (1, 2, 5):
        assert rank_expected(identity_solution(n)) == n


def test_rank_expected_rejects_non_involutive():
    with pytest.raises(ValidationError):
        rank_expected(group_solution(cyclic_group(4)))


def test_estimate_growth_degree_examples():
    deg = estimate_growth_degree(growth_series(irretractable_solution(1), 5))
    assert deg.degree == 1
    deg = estimate_growth_degree(growth_series(identity_solution(2), 4))
    assert deg.degree == 2
    deg = estimate_growth_degree(growth_series(identity_solution(1), 3))
    assert deg.degree == 1


def test_estimate_growth_degree_inconclusive_when_short():
    assert estimate_growth_degree(GrowthSeries((1, 3))) is None
    assert estimate_growth_degree(GrowthSeries((1, 4, 9))) is None


def test_estimate_growth_degree_reports_onset():
    est = estimate_growth_degree(growth_series(canonical_solution(3, 1, 1), 8))
    assert est.degree == 3
    assert est.onset == 2


def test_growth_degree_matches_rank_small_panel():
    for s in small_involutive_panel():
        if s.size > 6:
            continue
        rank = rank_expected(s)
        series = growth_series(s, rank + 4)
        est = estimate_growth_degree(series)
        assert est is not None
        assert est.degree == rank


def test_normal_forms_examples():
    assert normal_forms(irretractable_solution(1), 2) == [(0, 0), (0, 1)]
    assert normal_forms(identity_solution(2), 2) == [(0, 0), (0, 1), (1, 1)]
    assert normal_forms(identity_solution(3), 0) == [()]


def test_normal_forms_count_matches_series():
    for s in small_involutive_panel():
        if s.size > 4:
            continue
        counts = growth_series(s, 4, method="dense").counts
        for ell in range(5):
            assert len(normal_forms(s, ell)) == counts[ell]


def test_normal_forms_budget():
    with pytest.raises(BudgetError):
        normal_forms(canonical_solution(3, 1, 1), 7)


def test_series_monotone_under_relation_subsets(rng):
    for s in [irretractable_solution(1), canonical_solution(2, 1, 0)]:
        pres = presentation_of(s)
        full = series_from_presentation(pres, 5).counts
        rels = list(pres.relations)
        for _ in range(4):
            subset = tuple(r for r in rels if rng.random() < 0.5)
            sub = MonoidPresentation(pres.generators, subset)
            partial = series_from_presentation(sub, 5).counts
            assert all(p >= f for p, f in zip(partial, full))
        # subsets generating the same congruence give equal counts:
        # dropping the trivial pairs, or listing everything twice
        nontrivial = tuple(r for r in rels if r[0] != r[1])
        assert series_from_presentation(
            MonoidPresentation(pres.generators, nontrivial), 5
        ).counts == full
        assert series_from_presentation(
            MonoidPresentation(pres.generators, tuple(rels) * 2), 5
        ).counts == full


def test_free_when_all_relations_trivial():
    # counts hit n^ell for every length exactly when every relation pair
    # is syntactically trivial
    for s in small_involutive_panel():
        if s.size > 3:
            continue
        pres = presentation_of(s)
        trivial = all(lhs == rhs for lhs, rhs in pres.relations)
        counts = growth_series(s, 4).counts
        hits_free = all(c == s.size**ell for ell, c in enumerate(counts))
        assert trivial == hits_free


def test_stratum_consistent_with_previous_length():
    # words equal at length ell-1 stay equal after appending a generator
    for s in [irretractable_solution(1), canonical_solution(2, 1, 0)]:
        pres = presentation_of(s)
        rw = _rewrites(pres)
        n = pres.generators
        for ell in (2, 3, 4):
            prev = _dense_stratum(n, rw, ell - 1)
            cur = _dense_stratum(n, rw, ell)
            for w1 in range(n ** (ell - 1)):
                w2 = prev.find(w1)
                if w1 == w2:
                    continue
                for g in range(n):
                    assert cur.find(w1 * n + g) == cur.find(w2 * n + g)


def test_growth_defined_beyond_involutive_solutions():
    # the presentation exists for any table; only rank needs the hypotheses
    from pentagon import SolutionTable

    flip = SolutionTable.from_function(2, lambda i, j: (j, i))
    for s in (flip, group_solution(cyclic_group(4))):
        dense = growth_series(s, 5, method="dense")
        strat = growth_series(s, 5, method="stratified")
        assert dense == strat
        assert dense.counts[0] == 1
        assert dense.counts[1] == s.size


def test_growth_series_on_enumerated_catalog():
    for n in (1, 2, 3):
        for s in enumerate_pruned(n):
            series = growth_series(s, 6)
            assert series.counts[0] == 1
            assert series.counts[1] == n
            est = estimate_growth_degree(series)
            assert est is not None
            assert est.degree == rank_expected(s)
