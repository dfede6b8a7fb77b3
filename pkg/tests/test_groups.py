import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magicplanes import magic
from magicplanes.groups import (
    AbelianGroup,
    GroupError,
    Labeling,
    g_add,
    g_scale,
    g_zero,
    labeling_from_components,
    labeling_from_json,
    line_sum,
    verify,
)


def test_group_arithmetic_examples():
    z6 = AbelianGroup.of(6)
    assert g_add(z6(3), z6(3)) == g_zero(z6)
    z2c = AbelianGroup.power(2, 3)
    assert g_add(z2c(1, 0, 1), z2c(1, 1, 1)) == z2c(0, 1, 0)
    z9 = AbelianGroup.of(9)
    assert g_scale(4, z9(7)) == z9(1)
    assert g_scale(-1, z9(7)) == z9(2)


def test_group_validation():
    with pytest.raises(GroupError):
        AbelianGroup(())
    with pytest.raises(GroupError):
        AbelianGroup((1, 3))
    with pytest.raises(GroupError):
        AbelianGroup.of(2, 2)(1)
    with pytest.raises(GroupError):
        g_add(AbelianGroup.of(2)(1), AbelianGroup.of(3)(1))


def test_group_size_and_str():
    g = AbelianGroup.of(8, 2)
    assert g.size == 16 and g.rank == 2
    assert str(AbelianGroup.power(5, 3)) == "(Z/5Z)^3"


def test_labeling_must_be_total(fano):
    g = AbelianGroup.of(2)
    with pytest.raises(GroupError):
        Labeling(fano, g, (g(0),) * 6)
    with pytest.raises(GroupError):
        Labeling(fano, g, (AbelianGroup.of(3)(0),) * 7)


def test_line_sum_examples(fano):
    v = magic.v_line(fano, 0, 6)
    assert all(line_sum(v, li).residues == (3,) for li in range(7))
    zero = labeling_from_components(fano, [5], [[0] * 7])
    assert line_sum(zero, 2).is_zero()
    coord = magic.magic_order2(fano)
    assert line_sum(coord, 1).is_zero()     # L2 = {x1, x3, x5}


def test_verify_examples(fano):
    r = verify(magic.v_line(fano, 0, 6))
    assert r.classification == "pseudomagic"
    assert r.magic_constant.residues == (3,)
    assert not r.is_injective
    assert r.witnesses["colliding_points"][0] != r.witnesses["colliding_points"][1]

    const = labeling_from_components(fano, [4], [[1] * 7])
    r = verify(const)
    assert r.is_line_invariant and r.classification == "trivially-constant"
    assert r.magic_constant.residues == (3,)

    r = verify(magic.magic_order2(fano))
    assert r.classification == "magic" and r.magic_constant.is_zero()


def test_verify_not_line_invariant(fano):
    v = labeling_from_components(fano, [5], [[1, 0, 0, 0, 0, 0, 0]])
    r = verify(v)
    assert r.classification == "not-line-invariant"
    assert r.magic_constant is None
    a, b = r.witnesses["unequal_lines"]
    assert r.line_sums[a] != r.line_sums[b]


def test_labeling_json_roundtrip(planes):
    v = magic.magic_labeling(planes[5])
    data = json.loads(v.dumps())
    assert data["group"] == [5, 5, 5]
    back = labeling_from_json(planes[5], data)
    assert back.values == v.values


def test_labeling_json_errors(fano):
    with pytest.raises(GroupError):
        labeling_from_json(fano, {"values": []})
    with pytest.raises(GroupError):
        labeling_from_json(fano, {"group": [2], "values": [[0]] * 3})


def test_report_renderings(fano):
    r = verify(magic.v_line(fano, 0, 6))
    js = r.to_json()
    assert js["classification"] == "pseudomagic" and js["magic_constant"] == [3]
    assert "classification: pseudomagic" in r.text()


@settings(max_examples=60, deadline=None)
@given(m=st.integers(2, 12), a=st.lists(st.integers(0, 11), min_size=7, max_size=7),
       b=st.lists(st.integers(0, 11), min_size=7, max_size=7))
def test_line_sums_are_additive(fano, m, a, b):
    va = labeling_from_components(fano, [m], [a])
    vb = labeling_from_components(fano, [m], [b])
    ra, rb, rsum = verify(va), verify(vb), verify(va + vb)
    assert rsum.line_sums == [g_add(x, y) for x, y in zip(ra.line_sums, rb.line_sums)]


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([2, 3, 4]), m=st.integers(2, 16), data=st.data())
def test_image_bound_for_line_invariant_combinations(planes, q, m, data):
    # integer combinations of line labelings are line invariant; their image is at most gcd(n, m)
    p = planes[q]
    terms = data.draw(st.lists(st.tuples(st.integers(-5, 5), st.integers(0, p.num_lines - 1)), max_size=6))
    shift = data.draw(st.integers(0, m - 1))
    vals = [(x + shift) % m for x in magic.combine_lines(p, m, terms)]
    r = verify(labeling_from_components(p, [m], [vals]))
    assert r.is_line_invariant
    assert r.image_size <= math.gcd(q, m)
