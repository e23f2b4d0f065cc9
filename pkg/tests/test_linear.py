from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import table_of
from cyclicflats import (ExactMatrix, UsageError, column_matroid, counterexample_matrix, free_matroid,
                         is_modular_matroid, projective_geometry)
from cyclicflats.linear import bareiss_rank, field_tag, parse_field, rank_of_vectors


def test_field_tags():
    assert parse_field("Q") == 0 and parse_field("GF(7)") == 7
    assert field_tag(0) == "Q" and field_tag(3) == "GF(3)"
    for bad in ("GF(4)", "R", "GF(1)"):
        with pytest.raises(UsageError):
            parse_field(bad)


def test_floats_are_rejected():
    with pytest.raises(UsageError):
        ExactMatrix.from_rows([[1.5, 2]], ["a", "b"])


def test_fraction_strings_are_exact():
    a = ExactMatrix.from_rows([["1/3", "2"], ["1", "6"]], ["a", "b"])
    assert a.column("a") == (Fraction(1, 3), 1)
    assert column_matroid(a).rank == 1


def test_mod_p_reduction():
    a = ExactMatrix.from_rows([[1, 3], [2, 6]], ["a", "b"], p=5)
    assert a.column("b") == (3, 1)
    with pytest.raises(UsageError):
        ExactMatrix.from_rows([["1/5"]], ["a"], p=5)


def test_identity_is_free_and_zero_column_is_loop():
    eye = ExactMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]], ["a", "b", "c"])
    assert column_matroid(eye) == free_matroid(["a", "b", "c"])
    z = ExactMatrix.from_rows([[1, 0], [0, 0]], ["a", "b"])
    assert column_matroid(z).loops.labels() == ["b"]


def test_counterexample_columns():
    a = counterexample_matrix()
    assert a.nrows == 5 and a.ncols == 11
    assert a.column("d1_1") == (0, 1, 2, 0, 0)
    assert a.column("l4_1") == (1, 1, 1, 1, 1)
    assert a.column("l4_2") == (0, 1, 1, 1, 1)
    assert bareiss_rank(a.columns) == 5 == rank_of_vectors(a.columns)


def test_counterexample_flats_by_brute_force():
    # independent route: oracle rank table of the 11 columns
    a = counterexample_matrix()
    n = a.ncols
    t = oracles.table_from_columns([list(c) for c in a.columns])
    idx = {x: i for i, x in enumerate(a.labels)}
    mask = lambda names: sum(1 << idx[x] for x in names)  # noqa: E731
    g = {k: mask(v) for k, v in a.groups.items()}
    assert [t[-1], t[g["D1"]], t[g["D2"]], t[g["D3"]], t[g["l4"]]] == [5, 3, 3, 3, 2]
    rules = [(g["D1"] | g["l4"], lambda c: c[3] == c[4]), (g["D2"] | g["l4"], lambda c: c[1] == c[2]),
             (g["D3"] | g["l4"], lambda c: c[1] == c[4]), (g["D1"] | g["D3"], lambda c: c[4] == 0),
             (g["D2"] | g["D3"], lambda c: c[1] == 0)]
    hyperplanes = set()
    for union, rule in rules:
        cl = oracles.closure(t, n, union)
        assert cl == mask(x for x, c in zip(a.labels, a.columns) if rule(c))
        assert t[cl] == 4
        hyperplanes.add(cl)
    assert len(hyperplanes) == 5
    assert t[g["D1"] | g["D2"]] == 5


def test_verify_counterexample_report(counterexample_report):
    rep = counterexample_report
    assert rep.ok, rep.failed()
    names = [c["name"] for c in rep.checks]
    for tag in ("(1)", "(2)", "(3)", "(4)", "(5)", "(6)", "(7)"):
        assert any(n.startswith(tag) for n in names)
    assert rep.witnesses["non_modular_pairs_checked"] > 0


def test_projective_geometries():
    pg = projective_geometry(4, 2)
    assert pg.size == 15 and pg.rank == 4
    assert is_modular_matroid(pg)
    fano = projective_geometry(3, 2)
    lines = fano.lines()
    assert fano.size == 7 and len(lines) == 7 and all(len(x) == 3 for x in lines)
    assert projective_geometry(3, 3).size == 13
    with pytest.raises(UsageError):
        projective_geometry(7, 2)
    with pytest.raises(UsageError):
        projective_geometry(3, 4)


matrices = st.integers(1, 4).flatmap(lambda r: st.lists(
    st.lists(st.integers(-4, 4), min_size=r, max_size=r), min_size=0, max_size=6))


@given(matrices, st.sampled_from([0, 2, 3, 5, 7]))
def test_rank_routes_agree(cols, p):
    expected = oracles.matrix_rank(cols, p)
    reduced = [[x % p for x in c] for c in cols] if p else cols
    assert rank_of_vectors(reduced, p) == expected
    if p == 0:
        assert bareiss_rank(cols) == expected


@given(matrices, st.sampled_from([0, 2, 3]))
def test_column_matroid_matches_oracle(cols, p):
    labels = [f"c{i}" for i in range(len(cols))]
    m = column_matroid(ExactMatrix(tuple(tuple(c) for c in cols), tuple(labels), p))
    assert table_of(m) == oracles.table_from_columns(cols, p)


@given(st.lists(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=3, max_size=3),
                max_size=5))
def test_rational_entries(cols):
    assert rank_of_vectors(cols) == oracles.matrix_rank(cols) == bareiss_rank(cols)
