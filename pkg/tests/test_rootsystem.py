from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from nilsheets.rootsystem import RootSystemError, all_subsets, build_root_system, parse_type

TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6", "E7", "E8"]
COUNTS = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "B3": 9, "C3": 9, "D4": 12, "G2": 6,
          "F4": 24, "E6": 36, "E7": 63, "E8": 120}


def _reflection_closure(rs):
    # independent oracle: close the simple roots under simple reflections
    l = rs.rank
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for r in frontier:
            for i in range(l):
                c = sum(r[j] * rs.cartan[j][i] for j in range(l))  # <r, a_i^vee>
                s = tuple(r[j] - c * (j == i) for j in range(l))
                if all(x >= 0 for x in s) and any(s) and s not in found:
                    found.add(s)
                    new.append(s)
        frontier = new
    return found


@pytest.mark.parametrize("name", TYPES)
def test_root_counts_and_closure(name):
    rs = build_root_system(name)
    assert len(rs.positive_roots) == COUNTS[name]
    assert set(rs.positive_roots) == _reflection_closure(rs)


def test_g2_roots():
    rs = build_root_system("G2")
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)}
    assert rs.is_long((0, 1)) and not rs.is_long((1, 0))


def test_bad_types():
    for bad in ["X3", "E9", "A0", "G3", "F5", ""]:
        with pytest.raises(RootSystemError):
            build_root_system(bad)


def test_e6_highest_root():
    rs = build_root_system("E6")
    assert sum(rs.highest_root()) == 11
    assert rs.dim_algebra == 78


@pytest.mark.parametrize("name", ["G2", "B3", "F4", "C3"])
def test_cartan_integer_root_strings(name):
    rs = build_root_system(name)
    roots = list(rs.positive_roots) + [tuple(-x for x in r) for r in rs.positive_roots]
    rootset = set(roots)
    for a, b in product(roots, repeat=2):
        if a == b or a == tuple(-x for x in b):
            continue
        p = 0
        while tuple(x - (p + 1) * y for x, y in zip(a, b)) in rootset:
            p += 1
        q = 0
        while tuple(x + (q + 1) * y for x, y in zip(a, b)) in rootset:
            q += 1
        assert rs.cartan_integer(a, b) == p - q


def test_orthogonal_pairing_is_zero():
    rs = build_root_system("B2")
    a, b = (1, 0), (1, 2)
    assert rs.inner(a, b) == 0 and rs.cartan_integer(a, b) == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["F4", "E6", "D4", "B3"]), st.data())
def test_subsystem_is_brute_force_span(name, data):
    rs = build_root_system(name)
    pi = data.draw(st.sets(st.integers(0, rs.rank - 1)))
    expected = [k for k, r in enumerate(rs.positive_roots)
                if all(r[j] == 0 for j in range(rs.rank) if j not in pi)]
    assert rs.subsystem_roots(pi) == expected
    sub = rs.subsystem(pi)
    assert sub.num_positive == len(expected)


def test_subsystem_extremes():
    rs = build_root_system("E6")
    assert rs.subsystem(range(6)).num_positive == 36
    assert rs.subsystem([]).num_positive == 0


def test_e6_levi_types():
    rs = build_root_system("E6")
    # native Bourbaki numbering, node 4 is the branch node
    names = sorted(str(t) for t in rs.subsystem([0, 1, 2, 4, 5]).types)
    assert names == ["A1", "A2", "A2"]
    names = sorted(str(t) for t in rs.subsystem([0, 2, 3, 4, 5]).types)
    assert names == ["A5"]


def test_inner_product_symmetric_and_norms():
    rs = build_root_system("F4")
    for a in rs.positive_roots:
        assert rs.norm(a) > 0
        for b in rs.positive_roots:
            assert rs.inner(a, b) == rs.inner(b, a)


def test_label_roundtrip():
    for name in ["G2", "F4", "E6", "E7", "A3"]:
        rs = build_root_system(name)
        for w in [tuple(range(rs.rank)), tuple((i * 7) % 3 for i in range(rs.rank))]:
            assert rs.parse_labels(rs.format_labels(w)) == w


def test_parse_semisimple():
    rs = build_root_system("A2+A1")
    assert rs.rank == 3 and rs.num_positive == 4
    assert [str(t) for t in parse_type("B3")] == ["B3"]


def test_all_subsets_count():
    assert len(list(all_subsets(4))) == 16
