import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mbsmooth import ClassDistribution, Instance, InstanceBase, build_instance_base, normalize_counts
from mbsmooth.errors import EmptyBase, MixedArity, MixedKind, NegativeCount

from conftest import make_base


def test_singleton_base():
    base = build_instance_base([Instance(("a", "x"), "V")])
    assert base.arity == 2
    assert base.value_inventory == (frozenset({"a"}), frozenset({"x"}))
    assert base.class_inventory == {"V"}


def test_inventories():
    base = make_base([(("a", "x"), "V"), (("b", "x"), "N")])
    assert base.value_inventory[0] == {"a", "b"}
    assert base.value_inventory[1] == {"x"}
    assert base.class_inventory == {"V", "N"}
    assert base.classes == ("N", "V")


def test_order_and_duplicates_kept():
    rows = [(("a",), "V"), (("a",), "V"), (("b",), "N")]
    base = make_base(rows)
    assert [i.label for i in base] == ["V", "V", "N"]
    assert len(base) == 3
    assert list(base.label_counts()) == [1, 2]


def test_errors():
    with pytest.raises(EmptyBase):
        InstanceBase([])
    with pytest.raises(MixedArity):
        make_base([(("a", "x"), "V"), (("a",), "N")])
    with pytest.raises(MixedKind):
        InstanceBase([Instance(("a",), "V"), Instance((np.ones(3),), "N")])
    with pytest.raises(MixedKind):
        InstanceBase([Instance((np.ones(2),), "V"), Instance((np.ones(3),), "N")])


def test_immutable(toy3):
    with pytest.raises(AttributeError):
        toy3.foo = 1
    with pytest.raises(ValueError):
        toy3.codes[0, 0] = 5


def test_vector_features():
    base = InstanceBase([Instance((np.array([1.0, 0.0]), "a"), "V"), Instance((np.array([0.0, 2.0]), "b"), "N")])
    assert base.kinds == ("vector", "symbol")
    assert base.value_inventory[0] == frozenset()
    np.testing.assert_allclose(base.vector_norms(0), [1.0, 2.0])
    assert not base.is_symbolic()


@pytest.mark.parametrize(
    "counts, expected",
    [
        ({"V": 3, "N": 1}, {"V": 0.75, "N": 0.25}),
        ({"V": 2}, {"V": 1.0}),
    ],
)
def test_normalize_counts(counts, expected):
    d = normalize_counts(counts)
    assert d.defined
    assert d.mass == pytest.approx(expected)


def test_normalize_zero_is_undefined():
    d = normalize_counts({"V": 0, "N": 0})
    assert not d.defined and d.mass == {}
    assert d.argmax() is None


def test_negative_count():
    with pytest.raises(NegativeCount):
        normalize_counts({"V": -1})


def test_argmax_tie_lexicographic():
    assert ClassDistribution({"V": 0.5, "N": 0.5}).argmax() == "N"


rows_strategy = st.lists(
    st.tuples(st.tuples(st.sampled_from("abc"), st.sampled_from("xyz")), st.sampled_from(["V", "N", "P"])),
    min_size=1,
    max_size=30,
)


@given(rows_strategy)
def test_build_is_pure(rows):
    a, b = make_base(rows), make_base(rows)
    assert a.instances == b.instances
    assert a.value_inventory == b.value_inventory
    assert a.class_inventory == b.class_inventory
    assert np.array_equal(a.codes, b.codes)
    for inst in a:
        for i, v in enumerate(inst.values):
            assert v in a.value_inventory[i]


@given(st.dictionaries(st.sampled_from("ABCD"), st.integers(0, 20)))
def test_normalized_masses(counts):
    d = normalize_counts(counts)
    if sum(counts.values()) == 0:
        assert not d.defined
    else:
        assert all(0 <= p <= 1 for p in d.mass.values())
        assert abs(sum(d.mass.values()) - 1) <= 1e-9
