import pytest

from nilsheets.chevalley import build_algebra
from nilsheets.corpus import load_corpus
from nilsheets.diagrams import DiagramSpec, diagram_of, format_spec, parse_spec
from nilsheets.induction import SheetDiagram, Settings, induction_table
from nilsheets.repfinder import (NotFound, find_any_representative, find_representative,
                                 is_admissible, minimal_support_size, verify_representative)
from nilsheets.sl2jm import build_triple


def _setup(name, labels):
    alg = build_algebra(name)
    rs = alg.rootsystem
    table = Settings().table(alg)
    return alg, rs, table, SheetDiagram(rs.parse_labels(labels))


def test_g2_regular_spec_search():
    alg, rs, table, sd = _setup("G2", "2 2")
    spec = DiagramSpec(2, frozenset({(0, 1, 3)}), frozenset(), frozenset({1}))
    roots = find_representative(alg, sd, spec, table.by_wdd[(2, 2)], table)
    assert roots == (1, 2)


def test_f4_b2_spec_search():
    alg, rs, table, sd = _setup("F4", "2 0 0 1")
    spec = parse_spec("1-2:2;long=2", 2)
    assert find_representative(alg, sd, spec, table.by_wdd[rs.parse_labels("2 0 0 1")], table) == (9, 15)


def test_too_small_u():
    alg, rs, table, sd = _setup("G2", "2 0")
    spec = DiagramSpec(6, frozenset(), frozenset(), frozenset())
    with pytest.raises(NotFound):
        find_representative(alg, sd, spec, table.by_wdd[sd.labels], table)


def test_verify_examples():
    alg, rs, table, sd = _setup("G2", "2 0")
    target = table.by_wdd[rs.parse_labels("2 0")]
    assert verify_representative(alg, sd, [2, 4], target, table).ok
    sd22 = SheetDiagram((2, 2))
    rep = verify_representative(alg, sd22, [1], table.by_wdd[(2, 2)], table)
    assert rep.in_u and not rep.orbit_ok
    bad = verify_representative(alg, sd, [1, 4], target, table)
    assert not bad.in_u


def test_empty_representative_of_zero_orbit():
    alg = build_algebra("A1")
    table = Settings().table(alg)
    assert verify_representative(alg, SheetDiagram((0,)), [], table.zero, table).ok


def test_admissibility():
    alg = build_algebra("F4")
    assert is_admissible(alg, [1, 2, 3, 4])
    assert not is_admissible(alg, [1, 1])
    assert not is_admissible(alg, [1, 11, 3, 4])   # three mutually linked roots
    g2 = build_algebra("G2")
    assert not is_admissible(g2, [1, 2, 3])         # dependent


def test_minimal_support():
    g2 = build_algebra("G2")
    assert minimal_support_size(g2, build_triple(g2.sum_of_root_vectors([1, 2]))) == 2
    a1 = build_algebra("A1")
    assert minimal_support_size(a1, build_triple(a1.root_vector(1))) == 1
    assert minimal_support_size(a1, None) == 0


def test_spec_free_search_g2():
    alg, rs, table, sd = _setup("G2", "0 2")
    target = table.by_wdd[rs.parse_labels("2 0")]
    roots = find_any_representative(alg, sd, target, table, min_size=2)
    assert len(roots) == 2 and verify_representative(alg, sd, roots, target, table).ok


def test_diagram_roundtrip():
    alg = build_algebra("F4")
    rs = alg.rootsystem
    for roots in [(1, 3, 4, 2), (1, 11, 3, 4), (9, 15), (1, 16, 2, 22)]:
        spec = diagram_of(rs, [rs.positive_roots[r - 1] for r in roots])
        assert parse_spec(format_spec(spec), len(roots)) == spec


def test_corpus_representatives_f4():
    alg = build_algebra("F4")
    rs = alg.rootsystem
    table = Settings().table(alg)
    for row in load_corpus("F4").sheets:
        target = table.by_wdd[row.induced_wdd]
        assert verify_representative(alg, SheetDiagram(row.sheet_diagram), row.representative,
                                     target, table).ok
        spec = diagram_of(rs, [rs.positive_roots[r - 1] for r in row.representative])
        assert spec == row.spec


def test_attached_representatives_g2_f4():
    for name in ["G2", "F4"]:
        alg = build_algebra(name)
        corpus = load_corpus(name)
        recs = induction_table(alg, Settings(), with_reps=True, corpus=corpus,
                               preferred=corpus.levi_subsets())
        for r in recs:
            rep = r.representative
            assert rep is not None and rep.verified
            assert len(rep.roots) >= rep.support_bound


def test_spec_free_for_type_without_corpus():
    alg = build_algebra("B3")
    recs = induction_table(alg, Settings(), with_reps=True)
    assert all(r.representative is not None and r.representative.verified for r in recs)
