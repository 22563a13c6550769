import math

import pytest
from hypothesis import given, strategies as st

from sitassess.errors import DimensionMismatchError, DomainError
from sitassess.model import (
    Cluster,
    ClusterElement,
    FactualSemanticFeature,
    Scenario,
    cosine_similarity,
    element_vector,
    relevance,
)

from conftest import make_element, make_fsf


def oracle_cosine(v1, v2):
    """Independent term-by-term oracle: explicit loops, no fsum."""
    dot = 0.0
    s1 = 0.0
    s2 = 0.0
    for x, y in zip(v1, v2):
        dot += x * y
        s1 += x * x
        s2 += y * y
    if s1 == 0.0 and s2 == 0.0:
        return 1.0
    if s1 == 0.0 or s2 == 0.0:
        return 0.0
    return dot / (math.sqrt(s1) * math.sqrt(s2))


nonneg = st.floats(min_value=0.0, max_value=1e6, allow_nan=False)


class TestCosineSimilarity:
    def test_identity(self):
        assert cosine_similarity((1, 2, 3), (1, 2, 3)) == 1.0

    def test_orthogonal(self):
        assert cosine_similarity((1, 0, 0), (0, 1, 0)) == 0.0

    def test_derived_value(self):
        # 10 / (sqrt(14) * sqrt(20)), frozen from the term-by-term oracle
        expected = oracle_cosine((1, 2, 3), (2, 4, 0))
        assert expected == pytest.approx(0.597614, abs=1e-6)
        assert cosine_similarity((1, 2, 3), (2, 4, 0)) == pytest.approx(expected, abs=1e-12)

    def test_both_zero(self):
        assert cosine_similarity((0, 0), (0, 0)) == 1.0

    def test_one_zero(self):
        assert cosine_similarity((0, 0, 0), (1, 2, 3)) == 0.0
        assert cosine_similarity((1, 2, 3), (0, 0, 0)) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            cosine_similarity((1, 2), (1, 2, 3))

    def test_empty(self):
        with pytest.raises(DimensionMismatchError):
            cosine_similarity((), ())

    def test_negative_component(self):
        with pytest.raises(DomainError):
            cosine_similarity((1, -2), (1, 2))

    def test_non_finite_component(self):
        with pytest.raises(DomainError):
            cosine_similarity((1, float("nan")), (1, 2))
        with pytest.raises(DomainError):
            cosine_similarity((1, 2), (1, float("inf")))

    @given(st.lists(nonneg, min_size=1, max_size=8))
    def test_symmetry(self, v):
        w = list(reversed(v))
        assert cosine_similarity(v, w) == pytest.approx(cosine_similarity(w, v), abs=1e-12)

    @given(st.lists(st.floats(min_value=1e-3, max_value=1e6, allow_nan=False), min_size=1, max_size=8),
           st.floats(min_value=1e-3, max_value=1e3, allow_nan=False))
    def test_scale_invariance(self, v, k):
        scaled = [k * c for c in v]
        assert cosine_similarity(scaled, v) == pytest.approx(1.0, abs=1e-9)

    @given(st.integers(min_value=1, max_value=8).flatmap(
        lambda n: st.tuples(st.lists(nonneg, min_size=n, max_size=n),
                            st.lists(nonneg, min_size=n, max_size=n))))
    def test_range(self, pair):
        v, w = pair
        assert 0.0 <= cosine_similarity(v, w) <= 1.0


class TestRelevance:
    def test_all_perfect(self):
        assert relevance([1, 1, 1]) == 1.0

    def test_singleton(self):
        assert relevance([0.7]) == 0.7

    def test_derived_mean(self):
        # frozen from a plain summation oracle: (0.8 + 1.0 + 0.6) / 3
        assert relevance([0.8, 1.0, 0.6]) == pytest.approx(0.8, abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            relevance([])

    def test_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            relevance([0.5, 1.2])
        with pytest.raises(DomainError):
            relevance([-0.1])

    @given(st.lists(st.floats(min_value=0.0, max_value=1.0, allow_nan=False), min_size=1, max_size=20),
           st.data())
    def test_monotone_under_single_decrease(self, values, data):
        i = data.draw(st.integers(min_value=0, max_value=len(values) - 1))
        if values[i] < 1e-9:  # a decrease below float resolution cannot move the mean
            return
        smaller = values.copy()
        smaller[i] = data.draw(st.floats(min_value=0.0, max_value=values[i] - 1e-9,
                                         allow_nan=False))
        assert relevance(smaller) < relevance(values)


class TestElementVector:
    def test_concatenation(self):
        e = make_element((2, 5, 1), 3)
        assert element_vector(e) == (2.0, 5.0, 1.0, 3.0)

    def test_zero_case(self):
        assert element_vector(make_element((0, 0, 0), 0)) == (0.0, 0.0, 0.0, 0.0)

    def test_fractional(self):
        assert element_vector(make_element((1.5, 0.25, 4), 7)) == (1.5, 0.25, 4.0, 7.0)

    def test_injective_up_to_inputs(self):
        a = make_element((1, 2), 3)
        b = make_element((1, 2), 3)
        c = make_element((1, 2, 3), 0)
        assert element_vector(a) == element_vector(b)
        assert (a.indicators, a.an_size) == (b.indicators, b.an_size)
        assert element_vector(a) != element_vector(c)


class TestDomainTypes:
    def test_fsf_requires_nonempty_kind_and_id(self):
        with pytest.raises(DomainError):
            make_fsf(kind="")
        with pytest.raises(DomainError):
            make_fsf(ident="")

    def test_fsf_duplicate_attribute_names(self):
        with pytest.raises(DomainError):
            make_fsf(attrs=(("a", "1"), ("a", "2")))

    def test_fsf_negative_time(self):
        with pytest.raises(DomainError):
            make_fsf(time=-1)

    def test_element_rejects_negative_an(self):
        with pytest.raises(DomainError):
            make_element((1, 2), -1)

    def test_element_rejects_negative_indicator(self):
        with pytest.raises(DomainError):
            make_element((1, -2), 0)

    def test_cluster_rejects_empty(self):
        with pytest.raises(DomainError):
            Cluster(name="c", elements=())

    def test_scenario_rejects_duplicate_cluster_names(self):
        c = Cluster(name="c", elements=(make_element((1,), 0),))
        with pytest.raises(DomainError):
            Scenario(name="s", clusters=(c, c), captured_at=0)
