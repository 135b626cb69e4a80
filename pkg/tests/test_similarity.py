"""Comparator unit tests.

``oracle_coincidence`` is an independent pure-Python evaluation of the
signed-mass definition (explicit np-set construction, term by term); the
library must match it and the hand-derived examples frozen below.
"""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import coinknn as ck
from coinknn.errors import InvalidInputError, UndefinedComparisonError


def oracle_coincidence(u, v, d_exponent, e_exponent):
    """Brute-force signed coincidence: explicit masses, plain Python floats."""
    shared = 0.0
    union = 0.0
    total_u = 0.0
    total_v = 0.0
    for uk, vk in zip(u, v):
        u_pos, u_neg = max(uk, 0.0), min(uk, 0.0)
        v_pos, v_neg = max(vk, 0.0), min(vk, 0.0)
        shared += min(u_pos, v_pos) + min(abs(u_neg), abs(v_neg))
        union += max(u_pos, v_pos) + max(abs(u_neg), abs(v_neg))
        total_u += u_pos + abs(u_neg)
        total_v += v_pos + abs(v_neg)
    assert union > 0.0, "oracle needs at least one non-zero vector"
    if shared == 0.0:
        return 0.0
    jaccard = shared / union
    interiority = shared / min(total_u, total_v)
    return jaccard**d_exponent * interiority**e_exponent


finite_coord = st.one_of(
    st.just(0.0),
    st.floats(min_value=1e-6, max_value=1e6),
    st.floats(min_value=-1e6, max_value=-1e-6),
)


def vector_pairs(min_dim=1, max_dim=8):
    return st.integers(min_dim, max_dim).flatmap(
        lambda m: st.tuples(
            st.lists(finite_coord, min_size=m, max_size=m),
            st.lists(finite_coord, min_size=m, max_size=m),
        )
    )


class TestNpSet:
    def test_mixed_signs(self):
        ns = ck.npset_decompose([3.0, -2.0, 0.0])
        assert ns.positive.tolist() == [3.0, 0.0, 0.0]
        assert ns.negative.tolist() == [0.0, -2.0, 0.0]

    def test_zero_vector(self):
        ns = ck.npset_decompose([0.0, 0.0])
        assert ns.positive.tolist() == [0.0, 0.0]
        assert ns.negative.tolist() == [0.0, 0.0]

    def test_all_positive(self):
        ns = ck.npset_decompose([1.5, 2.5])
        assert ns.positive.tolist() == [1.5, 2.5]
        assert ns.negative.tolist() == [0.0, 0.0]

    def test_rejects_nan(self):
        with pytest.raises(InvalidInputError):
            ck.npset_decompose([1.0, float("nan")])

    @given(st.lists(finite_coord, min_size=1, max_size=8))
    def test_reconstruction_exact(self, values):
        ns = ck.npset_decompose(values)
        assert np.array_equal(ns.positive + ns.negative, np.asarray(values))
        # per coordinate at most one non-zero mass
        assert not np.any((ns.positive > 0) & (ns.negative < 0))


class TestCoincidenceExamples:
    def test_half(self):
        assert ck.coincidence([2, 2], [1, 1], 1, 1) == 0.5

    def test_d_cubes_the_jaccard(self):
        assert ck.coincidence([2, 2], [1, 1], 3, 1) == 0.125

    def test_identical_is_one_exactly(self):
        for d, e in [(1, 1), (3, 1), (0.7, 2.3)]:
            assert ck.coincidence([1, 2, 3], [1, 2, 3], d, e) == 1.0

    def test_signed_masses(self):
        # shared 1, union 3, smaller total 2
        assert ck.coincidence([1, -1], [1, 1], 1, 1) == pytest.approx(1 / 6, abs=1e-15)

    def test_matches_oracle_on_examples(self):
        for u, v in [([2, 2], [1, 1]), ([1, -1], [1, 1]), ([0.5, -3], [-1, -2])]:
            assert ck.coincidence(u, v, 3, 1) == pytest.approx(
                oracle_coincidence(u, v, 3, 1), abs=1e-15
            )

    def test_both_zero_is_undefined(self):
        with pytest.raises(UndefinedComparisonError):
            ck.coincidence([0.0, 0.0], [0.0, 0.0], 3, 1)

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            ck.coincidence([1, 2], [1, 2, 3], 3, 1)

    def test_bad_exponents(self):
        with pytest.raises(InvalidInputError):
            ck.coincidence([1], [2], 0.0, 1)
        with pytest.raises(InvalidInputError):
            ck.coincidence([1], [2], 3, -0.5)

    def test_zero_against_nonzero_is_zero(self):
        assert ck.coincidence([0.0], [1.0], 3, 1) == 0.0
        assert ck.coincidence([0.0], [1.0], 3, 0) == 0.0


class TestNonNegativeForm:
    def test_half(self):
        assert ck.coincidence_nonneg([2, 2], [1, 1], 1, 1) == 0.5

    def test_disjoint_supports(self):
        assert ck.coincidence_nonneg([1, 0], [0, 1], 1, 1) == 0.0
        assert ck.coincidence_nonneg([1, 0], [0, 1], 4.5, 2) == 0.0

    def test_scale_invariance_identity(self):
        assert ck.coincidence_nonneg([6, 6], [3, 3], 1, 1) == ck.coincidence(
            [2, 2], [1, 1], 1, 1
        )

    def test_rejects_negative(self):
        with pytest.raises(InvalidInputError):
            ck.coincidence_nonneg([1, -1], [1, 1], 1, 1)

    @given(vector_pairs())
    @settings(max_examples=300)
    def test_equals_general_form(self, pair):
        u = [abs(x) for x in pair[0]]
        v = [abs(x) for x in pair[1]]
        assume(sum(u) > 0 or sum(v) > 0)
        assert ck.coincidence_nonneg(u, v, 3, 1) == pytest.approx(
            ck.coincidence(u, v, 3, 1), abs=1e-12
        )


class TestDissimilarity:
    def test_identical_is_zero(self):
        assert ck.dissimilarity([4, 5], [4, 5], 3, 1) == 0.0

    def test_disjoint_is_one(self):
        assert ck.dissimilarity([1, 0], [0, 1], 3, 1) == 1.0

    def test_complement(self):
        assert ck.dissimilarity([2, 2], [1, 1], 1, 1) == 0.5


class TestEuclidean:
    def test_pythagorean(self):
        assert ck.euclidean([0, 0], [3, 4]) == 5.0

    def test_identity(self):
        assert ck.euclidean([7], [7]) == 0.0

    def test_1d_absolute_difference(self):
        assert ck.euclidean([1], [4]) == 3.0

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            ck.euclidean([1], [1, 2])


class TestCompareDispatch:
    def test_euclidean(self):
        assert ck.compare(ck.Euclidean(), [0], [3]) == 3.0

    def test_dissimilarity_identical(self):
        assert ck.compare(ck.CoincidenceDissimilarity(3, 1), [2, 2], [2, 2]) == 0.0

    def test_dissimilarity_value(self):
        assert ck.compare(ck.CoincidenceDissimilarity(1, 1), [2, 2], [1, 1]) == 0.5

    def test_compare_many_matches_scalar(self):
        rng = np.random.default_rng(7)
        pts = rng.uniform(-5, 5, (40, 3))
        ref = rng.uniform(-5, 5, 3)
        for kind in (ck.Euclidean(), ck.CoincidenceDissimilarity(2.5, 0.5)):
            batch = ck.compare_many(kind, ref, pts)
            single = [ck.compare(kind, ref, row) for row in pts]
            assert batch == pytest.approx(single, abs=1e-15)

    def test_kind_validation(self):
        with pytest.raises(InvalidInputError):
            ck.CoincidenceDissimilarity(-1.0, 1.0)
        with pytest.raises(InvalidInputError):
            ck.CoincidenceDissimilarity(3.0, -1.0)


class TestProperties:
    @given(vector_pairs(), st.floats(0.5, 5.0), st.floats(0.0, 2.0))
    @settings(max_examples=300)
    def test_bounds(self, pair, d, e):
        u, v = pair
        assume(any(x != 0 for x in u) or any(x != 0 for x in v))
        c = ck.coincidence(u, v, d, e)
        assert 0.0 <= c <= 1.0
        assert 0.0 <= ck.dissimilarity(u, v, d, e) <= 1.0

    @given(vector_pairs())
    @settings(max_examples=300)
    def test_symmetry_exact(self, pair):
        u, v = pair
        assume(any(x != 0 for x in u) or any(x != 0 for x in v))
        assert ck.coincidence(u, v, 3, 1) == ck.coincidence(v, u, 3, 1)
        assert ck.euclidean(u, v) == ck.euclidean(v, u)

    @given(vector_pairs(), st.floats(-3, 3))
    @settings(max_examples=300)
    def test_scale_invariance(self, pair, log_gamma):
        u, v = pair
        assume(any(x != 0 for x in u) or any(x != 0 for x in v))
        gamma = 10.0**log_gamma
        su = [gamma * x for x in u]
        sv = [gamma * x for x in v]
        assert ck.coincidence(su, sv, 3, 1) == pytest.approx(
            ck.coincidence(u, v, 3, 1), abs=1e-12
        )
        # distance commutes with scaling to 1e-12 of the data magnitude
        # (scaling can wash out ulp-level coordinate differences entirely)
        scale = gamma * (max(map(abs, u)) + max(map(abs, v)))
        assert abs(ck.euclidean(su, sv) - gamma * ck.euclidean(u, v)) <= max(
            1e-12 * scale, 5e-324
        )

    @given(st.lists(finite_coord, min_size=1, max_size=8))
    def test_identity_exact(self, u):
        assume(any(x != 0 for x in u))
        assert ck.coincidence(u, u, 3, 1) == 1.0

    def test_bounds_bulk(self):
        # high-volume randomized bounds sweep on the library batch path
        rng = np.random.default_rng(11)
        n = 100_000
        us = rng.uniform(-50, 50, (n, 5))
        vs = rng.uniform(-50, 50, (n, 5))
        from coinknn import _kernels

        c = _kernels.coincidence_pairs(us, vs, 3.0, 1.0)
        assert np.all(c >= 0.0) and np.all(c <= 1.0)

    def test_rank_order_invariant_in_d_scalar_features(self):
        # in 1-D the interiority factor is identically 1, so the index is a
        # pure power of the min/max ratio and rankings cannot depend on d
        rng = np.random.default_rng(3)
        pool_u = rng.uniform(0.1, 10.0, (400, 1))
        pool_v = rng.uniform(0.1, 10.0, (400, 1))
        from coinknn import _kernels

        orders = []
        for d in (0.5, 1.0, 3.0, 5.0):
            values = _kernels.coincidence_pairs(pool_u, pool_v, d, 1.0)
            orders.append(np.argsort(values, kind="stable"))
        for other in orders[1:]:
            assert np.array_equal(orders[0], other)

    def test_rank_order_invariant_in_d_without_interiority(self):
        # with the interiority factor off (e exponent 0) the index is again a
        # pure power, so rankings are d-invariant in any dimension
        rng = np.random.default_rng(4)
        pool_u = rng.uniform(0.0, 10.0, (400, 3))
        pool_v = rng.uniform(0.0, 10.0, (400, 3))
        from coinknn import _kernels

        orders = []
        for d in (0.5, 1.0, 3.0, 5.0):
            values = _kernels.coincidence_pairs(pool_u, pool_v, d, 0.0)
            orders.append(np.argsort(values, kind="stable"))
        for other in orders[1:]:
            assert np.array_equal(orders[0], other)

    def test_rank_can_depend_on_d_when_interiority_varies(self):
        # boundary of the invariance: with the interiority factor weighted in
        # (e=1) and 2-D features, candidates trading Jaccard ratio against
        # interiority can swap order as d changes
        u = [4.0, 4.0]
        inside = [1.4, 1.4]  # ratio 0.35, interiority 1
        askew = [0.4, 7.0]  # ratio 0.40, interiority ~0.59
        low_d = ck.coincidence(u, inside, 3, 1) - ck.coincidence(u, askew, 3, 1)
        high_d = ck.coincidence(u, inside, 5, 1) - ck.coincidence(u, askew, 5, 1)
        assert low_d > 0 > high_d
