import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from nilsheets.chevalley import build_algebra
from nilsheets.induction import SheetDiagram, Settings, u_space
from nilsheets.orbitclass import (AmbiguousSignature, SignatureNotFound, dimension_of_orbit,
                                  enumerate_orbit_wdds, evaluate_candidate, identify_orbit,
                                  orbit_table, signature_from_wdd, signature_of_element)
from nilsheets.rootsystem import build_root_system


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def _classical_counts(family, n):
    # independent oracle: partition classification of nilpotent orbits
    if family == "A":
        return sum(1 for _ in partitions(n + 1))
    if family == "B":
        ps = [p for p in partitions(2 * n + 1)
              if all(c % 2 == 0 for k, c in Counter(p).items() if k % 2 == 0)]
        return len(ps)
    if family == "C":
        ps = [p for p in partitions(2 * n)
              if all(c % 2 == 0 for k, c in Counter(p).items() if k % 2 == 1)]
        return len(ps)
    ps = [p for p in partitions(2 * n)
          if all(c % 2 == 0 for k, c in Counter(p).items() if k % 2 == 0)]
    very_even = [p for p in ps if all(k % 2 == 0 for k in p)]
    return len(ps) + len(very_even)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "C4",
                                  "D4", "D5"])
def test_classical_orbit_counts(name):
    table = Settings().table(build_algebra(name))
    assert len(table) == _classical_counts(name[0], int(name[1:]))


def test_type_a_dimensions_from_partitions():
    n = 5
    expected = []
    for p in partitions(n):
        dual = [sum(1 for x in p if x > i) for i in range(p[0])]
        expected.append(n * n - sum(d * d for d in dual))
    table = Settings().table(build_algebra("A4"))
    assert sorted(o.dimension for o in table) == sorted(expected)


@pytest.mark.parametrize("name,count", [("G2", 5), ("F4", 16), ("E6", 21)])
def test_exceptional_counts(name, count):
    assert len(Settings().table(build_algebra(name))) == count


def test_signature_examples():
    rs = build_root_system("G2")
    assert signature_from_wdd(rs, rs.parse_labels("2 2")) == (2, 0, 2, 0, 1, 0, 1, 0, 1, 0, 1)
    s = signature_from_wdd(rs, rs.parse_labels("2 0"))
    assert s[:2] == (4, 0)
    assert dimension_of_orbit(build_algebra("G2"), s) == 10
    assert signature_from_wdd(rs, (0, 0)) == (14,)
    assert dimension_of_orbit(14, (14,)) == 0


def test_signature_paths_agree():
    alg = build_algebra("G2")
    rs = alg.rootsystem
    assert signature_of_element(alg, alg.sum_of_root_vectors([1, 2])) == signature_from_wdd(rs, (2, 2))
    assert signature_of_element(alg, alg.zero()) == (14,)
    f4 = build_algebra("F4")
    e = f4.sum_of_root_vectors([9, 15])
    assert signature_of_element(f4, e) == signature_from_wdd(f4.rootsystem, f4.rootsystem.parse_labels("2 0 0 1"))


def test_identify():
    f4 = build_algebra("F4")
    assert identify_orbit(f4, f4.sum_of_root_vectors([1, 2, 3, 4])).wdd == (2, 2, 2, 2)
    assert identify_orbit(f4, f4.zero()).is_zero


def test_identify_generic_point_of_u_e6():
    e6 = build_algebra("E6")
    rs = e6.rootsystem
    sd = SheetDiagram(rs.parse_labels("2 0 2[2] 0 2"))
    u = u_space(e6, sd)
    rng = random.Random(3)
    e = e6.sum_of_root_vectors([k + 1 for k in u], [rng.randint(1, 20) for _ in u])
    orb = identify_orbit(e6, e)
    assert orb.label == "D5" and orb.dimension == 68


def test_enumerate_small():
    assert set(enumerate_orbit_wdds(build_algebra("A1"))) == {(0,), (2,)}
    g2 = enumerate_orbit_wdds(build_algebra("G2"))
    assert len(g2) == 5 and {(1, 0), (0, 1), (2, 2)} <= set(g2)


def test_non_characteristic_rejected():
    alg = build_algebra("A2")
    assert evaluate_candidate(alg, (1, 0), random.Random(0)) is None
    assert evaluate_candidate(alg, (2, 0), random.Random(0)) is None
    assert evaluate_candidate(alg, (1, 1), random.Random(0)) is not None


@pytest.mark.parametrize("name", ["G2", "F4", "E6"])
def test_signatures_distinct(name):
    assert Settings().table(build_algebra(name)).signatures_distinct()


def test_d4_collisions_are_reported():
    table = Settings().table(build_algebra("D4"))
    assert not table.signatures_distinct()
    sig = next(s for s, v in table.by_signature.items() if len(v) > 1)
    with pytest.raises(AmbiguousSignature):
        table.lookup(sig)
    assert len(table.lookup_all(sig)) == 3
    with pytest.raises(SignatureNotFound):
        table.lookup((1, 2, 3))


def test_orbit_dimensions_are_even():
    for name in ["F4", "E6", "B4"]:
        assert all(o.dimension % 2 == 0 for o in Settings().table(build_algebra(name)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_dimension_equals_centralizer_codim(seed):
    alg = build_algebra("F4")
    rng = random.Random(seed)
    roots = rng.sample(range(1, alg.npos + 1), rng.randint(1, 4))
    e = alg.sum_of_root_vectors(roots)
    assert identify_orbit(alg, e).dimension == alg.dim - alg.centralizer_dim(e)


def test_disk_cache_roundtrip(tmp_path):
    from nilsheets import orbitclass
    alg = build_algebra("B3")
    key = (alg.rootsystem.cartan, alg.rootsystem.scan_order)
    orbitclass._TABLES.pop(key, None)
    first = orbit_table(alg, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and "signs=" in files[0].read_text().splitlines()[0]
    orbitclass._TABLES.pop(key, None)
    second = orbit_table(alg, cache_dir=tmp_path)
    assert [(o.wdd, o.signature, o.dimension) for o in first] == \
           [(o.wdd, o.signature, o.dimension) for o in second]
    # a damaged cache is ignored and rebuilt
    files[0].write_text(files[0].read_text().replace("|", "#", 3))
    orbitclass._TABLES.pop(key, None)
    third = orbit_table(alg, cache_dir=tmp_path)
    assert len(third) == len(first)
