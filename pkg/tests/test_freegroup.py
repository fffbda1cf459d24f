import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyplab.freegroup import (
    IDENTITY,
    MAX_WORD_LENGTH,
    Word,
    WordLengthError,
    apply,
    ball,
    ball_size,
    compose,
    conjugate_intersection_probe,
    conjugated_by_gamma,
    edge_audit,
    gamma,
    gamma_inverse_map,
    gamma_map,
    homomorphy_probe,
    left_translation,
    shell,
    tree_dist,
    word_concat,
)

W = Word.from_string


@st.composite
def words(draw, max_len=12):
    letters = []
    for _ in range(draw(st.integers(0, max_len))):
        options = [x for x in (1, -1, 2, -2) if not letters or letters[-1] != -x]
        letters.append(draw(st.sampled_from(options)))
    return Word(tuple(letters))


class TestWordBasics:
    def test_identity_serializes_as_one(self):
        assert str(IDENTITY) == "1"
        assert W("1") == IDENTITY

    def test_round_trip(self):
        for text in ("a", "Ab", "baB", "aaBBA"):
            assert str(W(text)) == text

    def test_unreduced_rejected(self):
        with pytest.raises(ValueError):
            Word((1, -1))

    def test_bad_character(self):
        with pytest.raises(ValueError):
            W("ax")

    def test_length_cap(self):
        with pytest.raises(WordLengthError):
            Word((1,) * (MAX_WORD_LENGTH + 1))

    def test_concat_overflow(self):
        long = Word((1,) * MAX_WORD_LENGTH)
        with pytest.raises(WordLengthError):
            word_concat(long, Word((2,)))


class TestConcat:
    def test_cancellation_to_identity(self):
        assert word_concat(W("a"), W("A")) == IDENTITY

    def test_partial_cancellation(self):
        assert word_concat(W("ab"), W("Ba")) == W("aa")

    @given(words(), words())
    @settings(max_examples=100, deadline=None)
    def test_length_subadditive(self, u, v):
        assert len(word_concat(u, v)) <= len(u) + len(v)

    @given(words(8), words(8), words(8))
    @settings(max_examples=100, deadline=None)
    def test_associative(self, u, v, w):
        assert word_concat(word_concat(u, v), w) == word_concat(u, word_concat(v, w))

    @given(words())
    @settings(max_examples=50, deadline=None)
    def test_identity_neutral(self, u):
        assert word_concat(u, IDENTITY) == u
        assert word_concat(IDENTITY, u) == u

    @given(words())
    @settings(max_examples=50, deadline=None)
    def test_inverse_cancels(self, u):
        assert word_concat(u, u.inverse()) == IDENTITY


class TestTreeDist:
    def test_self_distance(self):
        assert tree_dist(W("ab"), W("ab")) == 0

    def test_from_identity(self):
        assert tree_dist(IDENTITY, W("ab")) == 2

    def test_shared_prefix(self):
        assert tree_dist(W("ba"), W("a")) == 3

    @given(words(), words())
    @settings(max_examples=100, deadline=None)
    def test_matches_reduced_quotient(self, u, v):
        assert tree_dist(u, v) == len(word_concat(u.inverse(), v))

    @given(words(8), words(8), words(8))
    @settings(max_examples=100, deadline=None)
    def test_triangle(self, u, v, w):
        assert tree_dist(u, w) <= tree_dist(u, v) + tree_dist(v, w)

    @given(words(8), words(8), words(6))
    @settings(max_examples=100, deadline=None)
    def test_left_invariance(self, u, v, x):
        assert tree_dist(word_concat(x, u), word_concat(x, v)) == tree_dist(u, v)


class TestBall:
    def test_sizes(self):
        for r in range(5):
            assert len(ball(r)) == ball_size(r) == 2 * (3**r - 1) + 1

    def test_enumeration_order(self):
        names = [str(w) for w in ball(2)[:9]]
        assert names == ["1", "a", "A", "b", "B", "aa", "ab", "aB", "AA"]

    def test_shell(self):
        assert all(len(w) == 3 for w in shell(3))
        assert len(shell(3)) == 4 * 3**2


class TestGamma:
    def test_fixed_when_leading_a_power(self):
        assert gamma(W("abb")) == W("abb")
        assert gamma(W("Ab")) == W("Ab")

    def test_flips_when_leading_b_power(self):
        assert gamma(W("b")) == W("B")
        assert gamma(W("bAbb")) == W("BaBB")

    def test_identity(self):
        assert gamma(IDENTITY) == IDENTITY

    def test_involution_exhaustive(self):
        for w in ball(6):
            assert gamma(gamma(w)) == w

    def test_preserves_length(self):
        for w in ball(5):
            assert len(gamma(w)) == len(w)


class TestApply:
    def test_left_translation(self):
        assert apply(left_translation(W("a")), IDENTITY) == W("a")

    def test_composition_right_to_left(self):
        m = compose(gamma_map(), left_translation(W("b")), gamma_inverse_map())
        assert apply(m, IDENTITY) == W("B")

    def test_conjugated_generator(self):
        m = conjugated_by_gamma(W("a"))
        assert apply(m, IDENTITY) == gamma(W("a"))

    @given(words(6), words(6), words(4))
    @settings(max_examples=100, deadline=None)
    def test_translations_compose(self, x, y, w):
        lhs = apply(left_translation(x), apply(left_translation(y), w))
        assert lhs == apply(left_translation(word_concat(x, y)), w)

    @given(words(5), words(6), words(6))
    @settings(max_examples=100, deadline=None)
    def test_translation_preserves_distance(self, x, u, v):
        m = left_translation(x)
        assert tree_dist(apply(m, u), apply(m, v)) == tree_dist(u, v)


class TestEdgeAudit:
    def test_left_translation_ok(self):
        result = edge_audit(left_translation(W("ba")), 4)
        assert result.ok and result.counterexample is None

    def test_gamma_ok_radius_six(self):
        result = edge_audit(gamma_map(), 6)
        assert result.ok
        assert result.edges_checked == 2 * (3**6 - 1)

    def test_constant_map_fails(self):
        result = edge_audit(lambda w: IDENTITY, 1)
        assert not result.ok
        assert result.counterexample is not None

    def test_gamma_preserves_distance_on_ball(self):
        vertices = ball(5)
        for u in vertices[:40]:
            for v in vertices[60:90]:
                assert tree_dist(gamma(u), gamma(v)) == tree_dist(u, v)


class TestHomomorphyProbe:
    def test_leading_a_power_witness(self):
        result = homomorphy_probe(W("a"), 1)
        assert result.fails and result.witness_y == W("b")

    def test_leading_b_power_witness(self):
        result = homomorphy_probe(W("b"), 1)
        assert result.fails and result.witness_y == W("a")

    def test_all_short_words_have_unit_witness(self):
        for x1 in ball(3):
            if len(x1) == 0:
                continue
            result = homomorphy_probe(x1, 1)
            assert result.fails and len(result.witness_y) == 1

    def test_identity_rejected(self):
        with pytest.raises(ValueError):
            homomorphy_probe(IDENTITY, 2)


class TestIntersectionProbe:
    def test_agreement_at_identity_alone(self):
        result = conjugate_intersection_probe(1, 0)
        assert sorted(str(w) for w in result.survivors) == ["A", "B", "a", "b"]

    def test_radius_one_test_kills_everything(self):
        assert conjugate_intersection_probe(2, 1).survivors == []

    def test_monotone_in_test_radius(self):
        loose = len(conjugate_intersection_probe(2, 0).survivors)
        tight = len(conjugate_intersection_probe(2, 1).survivors)
        assert tight <= loose
