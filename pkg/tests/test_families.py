import pytest

from grassdense.core import DimensionVector, Status, parse
from grassdense.engine import decide
from grassdense.families import (
    FamilyRule, SizeClassification, classify_size, enumerate_vectors,
    fibonacci_family, repeat_family,
)
from grassdense.oracle import oracle_decide


class TestFibonacciFamily:
    def test_short_tower(self):
        got = fibonacci_family(parse("1,1,1;2"), 1)
        assert [str(v) for v in got] == ["(1^3,2;3)", "(1^3,2,3;5)"]

    def test_depth_five(self):
        got = fibonacci_family(parse("1,1,1;2"), 5)
        assert str(got[-1]) == "(1^3,2,3,5,8,13,21;34)"
        assert len(got) == 6

    def test_members_have_zero_expected_stabilizer(self):
        for v in fibonacci_family(parse("1,1,1;2"), 5):
            assert v.expected_stab_dim == 0

    def test_members_dense(self):
        for v in fibonacci_family(parse("1,1,1;2"), 4):
            assert decide(v).status is Status.DENSE

    def test_rejects_bad_base(self):
        with pytest.raises(ValueError):
            fibonacci_family(parse("1,1;3"), 2)  # b + a_t = 4 > sum(a) = 2
        with pytest.raises(ValueError):
            fibonacci_family(parse("1,1,1;2"), -1)


class TestRepeatFamily:
    def test_tower(self):
        got = repeat_family(parse("1,1,1,2;3"), 4)
        assert [str(v) for v in got] == [
            "(1^3,2;3)", "(1^3,2^2;5)", "(1^3,2^3;7)", "(1^3,2^4;9)"]

    def test_k1_is_base(self):
        assert repeat_family(parse("1,1,1,2;3"), 1) == [parse("1,1,1,2;3")]

    def test_members_dense_zero_stab(self):
        for v in repeat_family(parse("1,1,1,2;3"), 4):
            assert v.expected_stab_dim == 0
            assert decide(v).status is Status.DENSE

    def test_rejects_base_without_excess_entry(self):
        with pytest.raises(ValueError):
            repeat_family(parse("1,1;3"), 2)  # excess -1
        with pytest.raises(ValueError):
            repeat_family(parse("1,1,1,1,2;3"), 2)  # excess 3 not an entry


class TestEnumerate:
    def test_count_and_order(self):
        vs = list(enumerate_vectors(3, 3, 2))
        assert len(vs) == 12
        assert vs[0] == parse("1;2")
        assert vs[-1] == parse("2,2,2;3")
        keys = [(v.ambient, v.length, v.dims) for v in vs]
        assert keys == sorted(keys)

    def test_max_size_respected(self):
        assert all(v.size <= 2 for v in enumerate_vectors(6, 3, 2))

    def test_default_size_is_full(self):
        assert parse("5;6") in list(enumerate_vectors(6, 1))

    def test_empty_ranges(self):
        assert list(enumerate_vectors(1, 3)) == []
        assert list(enumerate_vectors(4, 0)) == []


class TestClassifySize:
    def test_size1(self):
        c = classify_size(1)
        assert c.families == () and c.exceptional_dense == ()
        assert c.is_dense(parse("1,1,1;2"))       # r = n+1
        assert not c.is_dense(DimensionVector((1,) * 4, 2))

    def test_size2_frozen(self):
        c = classify_size(2)
        assert [str(p) for p in c.families[0].dense_profiles] == \
            ["(1;2)", "(1^2;2)", "(1^3;2)"]
        assert [str(v) for v in c.exceptional_dense] == \
            ["(2^3;3)", "(1,2^3;3)", "(2^4;3)", "(1,2^3;4)", "(2^4;5)"]

    def test_size3_tail_frozen(self):
        c = classify_size(3)
        assert [str(v) for v in c.exceptional_dense] == [
            "(2,3^2;4)", "(3^3;4)", "(1,2,3^2;4)", "(1,3^3;4)", "(2^3,3;4)",
            "(2^2,3^2;4)", "(2,3^3;4)", "(3^4;4)", "(1,3^4;4)", "(3^5;4)",
            "(3^3;5)", "(1,2,3^2;5)", "(2^3,3;5)", "(2,3^3;5)", "(3^4;5)",
            "(1,3^3;6)", "(2^2,3^2;6)", "(2,3^3;6)",
            "(2,3^3;7)", "(3^4;7)",
            "(3^4;8)", "(1,3^4;9)", "(3^5;11)",
        ]

    def test_tail_invariants(self):
        for l in (2, 3):
            c = classify_size(l)
            for v in c.exceptional_dense:
                assert v.size == l
                assert v.excess >= l + 1
                assert v.expected_stab_dim >= 0

    def test_tail_members_certified_dense(self):
        for v in classify_size(3).exceptional_dense:
            r = oracle_decide(v, samples=2, seed=31)
            assert r.is_dense, str(v)

    def test_predicate_matches_engine(self):
        c = classify_size(2)
        for v in enumerate_vectors(9, 8, 2):
            if v.size != 2:
                continue
            assert c.is_dense(v) == (decide(v).status is Status.DENSE), str(v)

    def test_is_dense_rejects_wrong_size(self):
        with pytest.raises(ValueError):
            classify_size(2).is_dense(parse("1,3;5"))

    def test_supported_range(self):
        with pytest.raises(ValueError):
            classify_size(0)
        with pytest.raises(ValueError):
            classify_size(6)

    def test_custom_backend_consulted(self):
        calls = []

        def backend(d):
            calls.append(d)
            return Status.SPARSE

        c = classify_size(1, backend=backend)
        # everything sparse -> no exceptional tail; backend actually used
        assert c.exceptional_dense == ()

    def test_json_and_text_render(self):
        c = classify_size(2)
        j = c.to_json_dict()
        assert j["size"] == 2
        assert j["exceptional_dense"][0] == {"dims": [2, 2, 2], "n": 3, "text": "(2^3;3)"}
        assert "(2^4;5)" in c.to_text()


class TestFamilyRule:
    def test_vacuous_profile_is_dense(self):
        rule = FamilyRule(excess=3, dense_profiles=())
        assert rule.admits(parse("3,3,3,3,3;12"))  # no entries < 3

    def test_profile_lookup(self):
        rule = FamilyRule(excess=2, dense_profiles=(parse("1;2"),))
        assert rule.admits(parse("1,2,2;5"))       # profile (1;2)
        assert not rule.admits(parse("1,1,2;4"))   # profile (1^2;2) not listed
