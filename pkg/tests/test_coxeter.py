import itertools

import pytest

from pircons.coxeter import CoxeterError, CoxeterSystem, SIZE_BOUND_ENV


def test_group_sizes(groups):
    assert groups["A2"].size == 6
    assert groups["A3"].size == 24
    assert groups["B2"].size == 8
    assert groups["B3"].size == 48
    assert groups["I2(5)"].size == 10


def test_type_d_and_products():
    assert CoxeterSystem({"type": "D", "rank": 2}).size == 4
    assert CoxeterSystem({"type": "D", "rank": 3}).size == 24
    assert CoxeterSystem({"type": "D", "rank": 4}).size == 192
    prod = CoxeterSystem({"type": "product",
                          "factors": [{"type": "A", "rank": 1},
                                      {"type": "A", "rank": 2}]})
    assert prod.size == 12
    assert prod.matrix[0][1] == 2 and prod.matrix[1][2] == 3


def test_bad_configs_rejected():
    with pytest.raises(CoxeterError):
        CoxeterSystem({"type": "E", "rank": 8})
    with pytest.raises(CoxeterError):
        CoxeterSystem({"type": "I2", "m": 1})
    with pytest.raises(CoxeterError):
        CoxeterSystem({"type": "D", "rank": 1})
    with pytest.raises(CoxeterError):
        CoxeterSystem({"type": "product", "factors": []})


def test_size_bound(monkeypatch):
    with pytest.raises(CoxeterError, match="size bound"):
        CoxeterSystem({"type": "B", "rank": 3}, bound=10)
    monkeypatch.setenv(SIZE_BOUND_ENV, "5")
    with pytest.raises(CoxeterError, match="size bound"):
        CoxeterSystem({"type": "A", "rank": 2})


def test_coxeter_matrix_matches_orders(groups):
    W = groups["B3"]
    assert W.matrix[0][1] == 4 and W.matrix[1][2] == 3 and W.matrix[0][2] == 2


def test_mult_gen(groups):
    W = groups["A2"]
    e = W.identity
    s1 = W.mult_gen(e, 0, "left")
    assert W.length[s1] == 1
    assert W.mult_gen(s1, 0, "left") == e
    s2s1 = W.mult_gen(W.mult_gen(e, 0, "right"), 1, "left")
    assert W.label(s2s1) == "2.1"
    # (s2 s1) * s1 = s2
    assert W.label(W.mult_gen(s2s1, 0, "right")) == "2"
    with pytest.raises(ValueError):
        W.mult_gen(e, 0, "sideways")


def test_length_changes_by_one(groups):
    W = groups["A3"]
    for w in range(W.size):
        for s in range(W.num_gens):
            for side in ("left", "right"):
                assert abs(W.length[W.mult_gen(w, s, side)]
                           - W.length[w]) == 1


def test_nonidentity_has_left_descent(groups):
    for W in groups.values():
        for w in range(W.size):
            if w != W.identity:
                assert W.left_descents(w)


def _subword_leq(W, u, w):
    """Subword-property oracle: u <= w iff some subsequence of a reduced
    word of w multiplies to u with the right length."""
    word = W.word[w]
    target_len = W.length[u]
    for picks in itertools.combinations(range(len(word)), target_len):
        g = W.identity
        for i in picks:
            g = W.right[g][word[i]]
        if g == u:
            return True
    return target_len == 0


def test_bruhat_examples(groups):
    W = groups["A2"]
    s1 = W.mult_gen(W.identity, 0, "left")
    s2 = W.mult_gen(W.identity, 1, "left")
    s2s1 = W.mult_gen(s1, 1, "left")
    for w in range(W.size):
        assert W.bruhat_leq(W.identity, w)
    assert not W.bruhat_leq(s1, s2)
    assert W.bruhat_leq(s1, s2s1)


@pytest.mark.parametrize("name", ["A2", "A3", "B2"])
def test_bruhat_against_subword_oracle(groups, name):
    W = groups[name]
    for u in range(W.size):
        for w in range(W.size):
            assert W.bruhat_leq(u, w) == _subword_leq(W, u, w)


def test_bruhat_refines_length(groups):
    W = groups["B3"]
    for u in range(W.size):
        for w in range(W.size):
            if u != w and W.bruhat_leq(u, w):
                assert W.length[u] < W.length[w]


def test_quotient_examples(groups):
    W = groups["A2"]
    chain = W.quotient({1})
    assert [chain.poset.labels[i] for i in range(3)] == ["e", "1", "2.1"]
    assert chain.poset.rank == (0, 1, 2)

    full = W.quotient(set())
    assert full.n == W.size

    point = W.quotient({0, 1})
    assert point.n == 1 and point.poset.labels == ("e",)


def test_quotient_reps_have_no_H_descents(groups):
    W = groups["B3"]
    quot = W.quotient({0, 2})
    for i in range(quot.n):
        assert not (W.right_descents(quot.reps[i]) & {0, 2})
    for i in range(quot.n):
        assert quot.poset.rank[i] == W.length[quot.reps[i]]


def test_quotient_restriction_of_full_order(groups):
    """The full Bruhat poset restricted to W^H equals the quotient poset."""
    W = groups["A3"]
    quot = W.quotient({0})
    full = W.quotient(set())
    for i in range(quot.n):
        for j in range(quot.n):
            gi, gj = quot.reps[i], quot.reps[j]
            assert quot.poset.leq(i, j) == full.poset.leq(
                full.rep_index[gi], full.rep_index[gj])


def test_lower_intervals(groups):
    W = groups["A2"]
    full = W.quotient(set())
    e = full.poset.index("e")
    assert full.lower_interval(e).n == 1

    w0 = full.poset.index("1.2.1")
    top_ideal = full.lower_interval(w0)
    assert top_ideal.n == 6 and top_ideal.max_rank() == 3

    chain = W.quotient({1})
    ideal = chain.lower_interval(chain.poset.index("2.1"))
    assert ideal.n == 3 and ideal.rank == (0, 1, 2)


def test_inverse_product_words(groups):
    W = groups["B2"]
    for u in range(W.size):
        assert W.product(u, W.inverse(u)) == W.identity
        for v in range(W.size):
            uv = W.product(u, v)
            assert W.length[uv] <= W.length[u] + W.length[v]


def test_lex_least_words(groups):
    W = groups["A2"]
    w0 = W.longest_element()
    assert W.lex_least_word(w0) == (0, 1, 0)
    assert W.label(W.identity) == "e"
