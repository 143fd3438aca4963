"""Game model, defining systems, sampling, and file round-trips."""

import numpy as np
import pytest

from xorgames.errors import (
    DuplicateClause,
    ExhaustedSpace,
    IndexOutOfRange,
    ParseError,
)
from xorgames.games import (
    Clause,
    Dedup,
    defining_system,
    format_game,
    game_from_system,
    make_game,
    parse_game,
    sample_clause_array,
    sample_random_game,
    sampler_rng,
)

from conftest import random_game


class TestMakeGame:
    def test_smallest_valid_game(self):
        g = make_game(1, [(1, 1, 1, 0)])
        assert g.n == 1 and g.m == 1
        assert g.clauses[0] == Clause(1, 1, 1, 0)

    def test_ghz_game_builds(self, ghz_game):
        assert ghz_game.m == 4 and ghz_game.n == 2

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            make_game(1, [(1, 1, 2, 0)])

    def test_bad_parity(self):
        with pytest.raises(IndexOutOfRange):
            make_game(1, [(1, 1, 1, 2)])

    def test_duplicate_clause(self):
        with pytest.raises(DuplicateClause):
            make_game(2, [(1, 2, 1, 0), (1, 2, 1, 0)])

    def test_same_triple_different_parity_allowed(self):
        g = make_game(1, [(1, 1, 1, 0), (1, 1, 1, 1)])
        assert g.m == 2

    def test_clause_order_preserved(self):
        clauses = [(2, 1, 1, 1), (1, 2, 2, 0), (1, 1, 1, 1)]
        g = make_game(2, clauses)
        assert [tuple(c) for c in g.clauses] == clauses


class TestDefiningSystem:
    def test_single_clause(self):
        sys_ = defining_system(make_game(1, [(1, 1, 1, 1)]))
        assert sys_.gamma == ((1, 1, 1),)
        assert sys_.s_vec == (1,)

    def test_ghz_rows(self, ghz_game):
        sys_ = defining_system(ghz_game)
        assert sys_.gamma[1] == (1, 0, 0, 1, 0, 1)
        assert sys_.s_vec == (0, 1, 1, 1)

    def test_block_placement(self):
        sys_ = defining_system(make_game(2, [(2, 1, 1, 0)]))
        assert sys_.gamma == ((0, 1, 1, 0, 1, 0),)
        assert sys_.s_vec == (0,)

    def test_each_row_three_ones_one_per_block(self, py_rng):
        for _ in range(30):
            g = random_game(py_rng)
            sys_ = defining_system(g)
            n = g.n
            for row in sys_.gamma:
                assert sum(row) == 3
                assert sum(row[:n]) == 1
                assert sum(row[n : 2 * n]) == 1
                assert sum(row[2 * n :]) == 1

    def test_round_trip(self, py_rng):
        for _ in range(30):
            g = random_game(py_rng)
            assert game_from_system(defining_system(g)) == g


class TestSampler:
    def test_deterministic(self):
        a = sample_random_game(7, 15, seed=99)
        b = sample_random_game(7, 15, seed=99)
        assert a == b

    def test_seed_changes_game(self):
        assert sample_random_game(7, 15, seed=1) != sample_random_game(7, 15, seed=2)

    def test_single_triple_space(self):
        g = sample_random_game(1, 1, seed=3)
        assert (g.clauses[0].a, g.clauses[0].b, g.clauses[0].c) == (1, 1, 1)

    def test_exhausted_triple(self):
        with pytest.raises(ExhaustedSpace):
            sample_random_game(1, 2, seed=0, dedup=Dedup.TRIPLE)

    def test_full_tuple_forced(self):
        g = sample_random_game(1, 2, seed=0, dedup=Dedup.FULL_TUPLE)
        assert sorted(tuple(c) for c in g.clauses) == [(1, 1, 1, 0), (1, 1, 1, 1)]

    def test_triple_dedup_distinct_triples(self):
        for seed in range(5):
            g = sample_random_game(3, 20, seed=seed, dedup=Dedup.TRIPLE)
            triples = [(c.a, c.b, c.c) for c in g.clauses]
            assert len(set(triples)) == len(triples)

    def test_full_dedup_allows_triple_repeats(self):
        g = sample_random_game(2, 16, seed=0, dedup=Dedup.FULL_TUPLE)
        tuples = [tuple(c) for c in g.clauses]
        assert len(set(tuples)) == len(tuples)
        triples = [(c.a, c.b, c.c) for c in g.clauses]
        assert len(set(triples)) < len(triples)

    def test_enumeration_branch_distinct_and_deterministic(self):
        # 2m > capacity switches to shuffled enumeration
        a = sample_random_game(2, 7, seed=4, dedup=Dedup.TRIPLE)
        b = sample_random_game(2, 7, seed=4, dedup=Dedup.TRIPLE)
        assert a == b
        triples = [(c.a, c.b, c.c) for c in a.clauses]
        assert len(set(triples)) == 7

    def test_marginal_frequencies(self):
        # n=3, m=1: every triple should appear with frequency 1/27 +- 0.01.
        samples = 120_000
        triple_counts = np.zeros(27, dtype=np.int64)
        parity = 0
        for trial in range(samples):
            rng = sampler_rng(2024, 3, 1, Dedup.TRIPLE, trial)
            arr = sample_clause_array(3, 1, rng, Dedup.TRIPLE)
            a, b, c, s = arr[0]
            triple_counts[(a - 1) * 9 + (b - 1) * 3 + (c - 1)] += 1
            parity += s
        freqs = triple_counts / samples
        assert np.all(np.abs(freqs - 1 / 27) < 0.01)
        assert abs(parity / samples - 0.5) < 0.01


class TestFileFormat:
    def test_round_trip(self, py_rng):
        for _ in range(20):
            g = random_game(py_rng)
            assert parse_game(format_game(g)) == g

    def test_header_with_player_count(self):
        g = parse_game("1 1 3\n1 1 1 0\n")
        assert g.m == 1

    def test_rejects_other_player_counts(self):
        with pytest.raises(ParseError):
            parse_game("1 1 2\n1 1 1 0\n")

    def test_malformed_clause_line_number(self):
        with pytest.raises(ParseError) as exc:
            parse_game("1 1\n1 1 x 0\n")
        assert exc.value.line_no == 2

    def test_clause_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_game("2 3\n1 1 1 0\n2 2 2 1\n")

    def test_out_of_range_index(self):
        with pytest.raises(ParseError) as exc:
            parse_game("1 1\n1 1 2 0\n")
        assert exc.value.line_no == 2

    def test_empty_file(self):
        with pytest.raises(ParseError):
            parse_game("")
