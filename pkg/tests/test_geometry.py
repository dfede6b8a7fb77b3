import json

import pytest

from magicplanes import geometry as geo
from magicplanes.geometry import line_through, lines_through_point, meet

ORDERS = (2, 3, 4, 5, 7, 8, 9)


@pytest.mark.parametrize("q", ORDERS)
def test_generated_planes_satisfy_axioms_and_counts(planes, q):
    p = planes[q]
    N = q * q + q + 1
    assert p.num_points == p.num_lines == N
    assert all(len(l) == q + 1 for l in p.lines)
    assert all(len(t) == q + 1 for t in p.lines_through)
    rep = geo.validate_axioms(p)
    assert rep.ok, rep.violations[:5]
    assert rep.order == q


@pytest.mark.parametrize("q", ORDERS)
def test_flag_count_both_ways(planes, q):
    p = planes[q]
    by_lines = sum(len(l) for l in p.lines)
    by_points = sum(len(t) for t in p.lines_through)
    assert by_lines == by_points == (q * q + q + 1) * (q + 1)


@pytest.mark.parametrize("q", ORDERS)
def test_incidence_is_orthogonality(planes, q):
    p = planes[q]
    for li, d in enumerate(p.line_coords):
        for x, c in enumerate(p.coords):
            dot = c[0] * d[0] + c[1] * d[1] + c[2] * d[2]
            assert dot.is_zero() == p.incident(x, li)


def test_points_are_normalized_and_sorted(planes):
    for q in (3, 4, 9):
        p = planes[q]
        keys = []
        for c in p.coords:
            first = next(e for e in c if not e.is_zero())
            assert first == p.spec.one()
            keys.append(tuple(e.index for e in c))
        assert keys == sorted(keys)


def test_build_is_deterministic():
    a, b = geo.build_plane(4), geo.build_plane(4)
    assert a.labels == b.labels and a.lines == b.lines


def test_build_rejects_non_prime_power():
    with pytest.raises(ValueError):
        geo.build_plane(6)


def test_pg4_line_through_axis_points(planes):
    p = planes[4]
    li = line_through(p, p.point_at(0, 0, 1), p.point_at(1, 0, 0))
    expected = {p.point_at(1, 0, a) for a in range(4)} | {p.point_at(0, 0, 1)}
    assert set(p.lines[li]) == expected


def test_fano_basics(planes):
    p = planes[2]
    assert (p.num_points, p.num_lines) == (7, 7)
    assert {len(l) for l in p.lines} == {3}


def test_corrupted_fano_reports_violations(planes):
    p = planes[2]
    lines = [list(l) for l in p.lines]
    lines[0] = lines[0][:2]
    bad = geo.from_lines(lines, p.labels, order=2)
    rep = geo.validate_axioms(bad)
    assert not rep.ok
    kinds = {k for k, _ in rep.violations}
    assert "line-size" in kinds and "axiom1" in kinds
    assert ("line-size", (0, 2)) in rep.violations


def test_no_quadrilateral_is_reported():
    # a single line with all points: a degenerate structure with no quadrilateral
    p = geo.from_lines([[0, 1, 2]], ["a", "b", "c"], order=2)
    rep = geo.validate_axioms(p)
    assert ("axiom3", ()) in rep.violations


def test_ingested_textbook_table_is_a_plane():
    p = geo.from_incidence_text(geo.FANO_INCIDENCE)
    rep = geo.validate_axioms(p)
    assert rep.ok and p.order == 2
    assert not p.has_coords()


# textbook labels: x1..x7 are indices 0..6, L1..L7 are 0..6
def test_line_through_textbook(fano):
    assert line_through(fano, 1, 2) == 0          # x2 x3 -> L1
    assert set(fano.lines[0]) == {1, 2, 3}
    assert line_through(fano, 0, 3) == 3          # x1 x4 -> L4
    assert set(fano.lines[3]) == {0, 3, 6}
    assert line_through(fano, 3, 0) == 3


def test_meet_textbook(fano):
    assert meet(fano, 0, 1) == 2                  # L1 L2 -> x3
    assert meet(fano, 3, 4) == 6                  # L4 L5 -> x7
    assert meet(fano, 4, 3) == 6


def test_lines_through_point_textbook(fano, planes):
    assert lines_through_point(fano, 0) == [1, 2, 3]      # x1 -> L2 L3 L4
    assert lines_through_point(fano, 6) == [3, 4, 5]      # x7 -> L4 L5 L6
    p3 = planes[3]
    assert all(len(lines_through_point(p3, x)) == 4 for x in range(p3.num_points))


def test_degenerate_queries_raise(fano):
    with pytest.raises(geo.PlaneError):
        line_through(fano, 2, 2)
    with pytest.raises(geo.PlaneError):
        meet(fano, 1, 1)


def test_textbook_fano_coordinates(fano):
    assert [tuple(e.index for e in c) for c in fano.coords] == list(geo.FANO_POINTS)


@pytest.mark.parametrize("q", (2, 3, 4, 9))
def test_json_roundtrip_keeps_coordinates(planes, q):
    p = planes[q]
    data = json.loads(p.dumps())
    assert data["order"] == q
    assert data["points"][0].startswith("[")
    back = geo.from_json(data)
    assert back.lines == p.lines and back.labels == p.labels
    assert back.has_coords() and back.coords == p.coords


def test_json_with_opaque_labels_has_no_coordinates(planes):
    data = planes[2].to_json()
    data["points"] = [f"p{i}" for i in range(7)]
    back = geo.from_json(data)
    assert not back.has_coords()
    assert geo.validate_axioms(back).ok


def test_json_with_wrong_incidences_does_not_get_coordinates(planes):
    data = planes[2].to_json()
    data["points"] = list(reversed(data["points"]))
    back = geo.from_json(data)
    assert not back.has_coords()


def test_malformed_inputs():
    with pytest.raises(geo.PlaneError):
        geo.from_json({"order": 2})
    with pytest.raises(geo.PlaneError):
        geo.from_incidence_text("0 1\n1 0 1\n")
    with pytest.raises(geo.PlaneError):
        geo.from_incidence_text("0 2\n1 0\n")
    with pytest.raises(geo.PlaneError):
        geo.from_lines([[0, 5]], ["a", "b"])


def test_incidence_text_roundtrip(planes):
    p = planes[3]
    back = geo.from_incidence_text(geo.to_incidence_text(p))
    assert back.lines == p.lines


def test_permuted_rejects_non_permutations(planes):
    with pytest.raises(geo.PlaneError):
        planes[2].permuted([0, 0, 1, 2, 3, 4, 5], list(range(7)))
