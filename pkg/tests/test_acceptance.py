"""Acceptance criteria 1-9, each an exact check.

Every criterion prints one PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Run alone with ``pytest tests/test_acceptance.py``
or ``python3 tests/test_acceptance.py``.
"""

import functools
import random
import sys
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from conftest import curated, labelled, table_of  # noqa: E402
from cyclicflats import (AmalgamProblem, CyclicFlatPresentation, GroundSet, Matroid, build_m_p,  # noqa: E402
                         build_n_ip, build_n_planes, bundle_condition_holds, bundle_counterexample, check_z_axioms,
                         cyclic_flats_from_oracle, extend, forced_closure, has_amalgam, is_modular_matroid,
                         is_modular_pair, l_construction, modular_cuts, projective_geometry, uniform,
                         verify_loop_argument, verify_nonsticky_planes, vamos)
from cyclicflats.checks import bundle_test_matroids  # noqa: E402
from cyclicflats.properties import disjoint_coplanar_line_pairs  # noqa: E402

RESULTS: dict[int, str] = {}
SEED = 20240607


def criterion(number: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                note = fn(*args, **kwargs)
            except BaseException as exc:
                line = f"criterion {number} FAIL: {title} ({type(exc).__name__}: {exc})"
                RESULTS[number] = line
                print(line)
                raise
            line = f"criterion {number} PASS: {title}" + (f" [{note}]" if note else "")
            RESULTS[number] = line
            print(line)
        return run
    return wrap


@criterion(1, "Vamos suite")
def test_criterion_1_vamos():
    m = vamos()
    assert check_z_axioms(m.presentation) == []
    assert m.rank == 4 and m.size == 8
    fours = [sorted(s.labels()) for s, r in m.presentation.flats if len(s) == 4 and r == 3]
    assert len(fours) == 5 and ["a", "a'", "d", "d'"] not in fours
    assert not bundle_condition_holds(m)
    q = bundle_counterexample(m)
    assert [s.labels() for s in q.lines] == [["a", "a'"], ["b", "b'"], ["c", "c'"], ["d", "d'"]]
    assert [(x.labels(), y.labels()) for x, y in q.non_coplanar] == [(["a", "a'"], ["d", "d'"])]
    return "five rank-3 cyclic 4-sets, one non-coplanar pair"


@criterion(2, "rank-5 counterexample suite")
def test_criterion_2_counterexample(counterexample_report):
    rep = counterexample_report
    assert rep.ok, rep.failed()
    by_tag = {}
    for c in rep.checks:
        by_tag.setdefault(c["name"].split()[0], []).append(c)
    assert sorted(by_tag) == ["(1)", "(2)", "(3)", "(4)", "(5)", "(6)", "(7)"]
    assert by_tag["(1)"][0]["actual"] == [5, 3, 3, 3, 2]
    assert len(by_tag["(2)"]) + len(by_tag["(3)"]) + len(by_tag["(5)"]) == 10
    return f"{len(rep.checks)} checks, {rep.witnesses['non_modular_pairs_checked']} non-modular pairs"


def _c3_candidates():
    """(n, family) pairs; see the ledger for how the space was chosen."""
    for n in range(3):
        for fam in oracles.all_families(n, extra_rank=1):
            yield n, fam
    for fam in oracles.all_families(3):
        yield 3, fam
    for fam in oracles.small_families(4, 3):
        yield 4, fam
    for n in (4, 5):
        for t in oracles.all_matroid_tables(n):
            for fam in oracles.perturbations(n, oracles.cyclic_flats(t, n)):
                yield n, fam
    rng = random.Random(SEED)
    for _ in range(120):
        n = rng.choice([6, 7])
        t = oracles.random_table_of_size(rng, n)
        pert = list(oracles.perturbations(n, oracles.cyclic_flats(t, n)))
        for fam in rng.sample(pert, min(15, len(pert))):
            yield n, fam
        sets = rng.sample(range(1 << n), rng.randint(1, 5))
        yield n, [(z, rng.randint(0, bin(z).count("1"))) for z in sets]


@criterion(3, "cyclic-flat validator matches the rank axioms")
def test_criterion_3_validator():
    grounds = {n: GroundSet([str(i) for i in range(n)]) for n in range(8)}
    total = accepted = 0
    disagreements = []
    for n, fam in _c3_candidates():
        total += 1
        p = CyclicFlatPresentation.from_masks(grounds[n], fam)
        valid = not check_z_axioms(p)
        if valid != oracles.oracle_valid(n, fam):
            disagreements.append((n, fam))
            continue
        if valid:
            accepted += 1
            assert cyclic_flats_from_oracle(Matroid(p, validate=False)) == p
    assert not disagreements, disagreements[:5]
    return f"{total} candidates, {accepted} accepted, all round-tripped"


@criterion(4, "disjoint hyperplanes, rank 3")
def test_criterion_4_planes_r3():
    m = uniform(3, 4)
    h, h2 = m.subset(["1", "2"]), m.subset(["3", "4"])
    mp, p = build_m_p(m, h, h2)
    assert len(p) == 1 and mp.rank_of(p) == 1
    c = build_n_planes(m, h, h2)
    assert check_z_axioms(c.n.presentation) == []
    assert c.n.loops in forced_closure(c.n, [c.in_n(c.h1), c.in_n(c.h2)])
    cert = verify_nonsticky_planes(m, h, h2)
    assert cert.holds and cert.replay()
    assert has_amalgam(AmalgamProblem(c.n, mp)) is None
    assert {"name": "has_amalgam(N, M_P)", "expected": None, "actual": None, "ok": True} in cert.checks


@criterion(5, "disjoint hyperplanes, rank 4")
def test_criterion_5_planes_r4():
    m = uniform(4, 6)
    h, h2 = m.subset(["1", "2", "3"]), m.subset(["4", "5", "6"])
    mp, p = build_m_p(m, h, h2)
    assert len(p) == 2 and mp.rank_of(p) == 2
    cert = verify_nonsticky_planes(m, h, h2)
    assert cert.holds and cert.replay()
    # 2(r-1) >= r+1 + r(P) at r = 4
    assert cert.facts["inequality"] == "3+3 = 6 >= 5 + r(P), so r(P) <= 1"
    assert cert.facts["r_N'(P) bound"] == 1 < mp.rank_of(p)
    return f"{cert.facts['chains_checked']} extension chains also checked"


@criterion(6, "loopless extension forcing a loop")
def test_criterion_6_ip():
    for r, n, h in ((4, 5, ["3", "4", "5"]), (5, 6, ["3", "4", "5", "6"])):
        c = build_n_ip(uniform(r, n), ["1", "2"], h)
        assert check_z_axioms(c.n.presentation) == []
        assert is_modular_pair(c.n, c.d1, c.d2)
        cert = verify_loop_argument(c)
        assert cert.holds and cert.replay()
        assert [s.meet for s in cert.steps] == [c.d1, c.d2, c.a_set, c.n.loops]


@criterion(7, "line families under the bundle condition")
def test_criterion_7_lset():
    pg = projective_geometry(4, 2)
    assert is_modular_matroid(pg) and bundle_condition_holds(pg)
    counts = {}
    for name, m in bundle_test_matroids().items():
        assert bundle_condition_holds(m)
        pairs = disjoint_coplanar_line_pairs(m)
        counts[name] = len(pairs)
        for l1, l2 in pairs:
            ls = l_construction(m, l1, l2)
            assert ls.ok, ls.to_json()
            assert m.loops not in ls.cut
    assert counts["PG(3,2)"] == 0
    return ", ".join(f"{k}: {v} pairs" for k, v in counts.items())


def _c8_matroids():
    out = dict(curated())
    rng = random.Random(SEED)
    while len(out) < len(curated()) + 30:
        n, t = oracles.random_table(rng, 7)
        if len(oracles.flats(t, n)) <= 20:
            out[f"random{len(out)}"] = labelled(n, t)
    return out


@criterion(8, "modular-cut machinery against brute force")
def test_criterion_8_modcuts():
    pairs = cuts_checked = 0
    for name, m in _c8_matroids().items():
        assert m.size <= 7
        t = table_of(m)
        cuts = oracles.modular_cuts(t, m.size)
        assert {c.members for c in modular_cuts(m)} == set(cuts), name
        flats = m.flat_masks()
        for seeds in [()] + [(f,) for f in flats] + list(combinations(flats, 2)):
            least = frozenset.intersection(*[c for c in cuts if all(s in c for s in seeds)])
            assert forced_closure(m, [m.elements(s) for s in seeds]).members == least, (name, seeds)
            pairs += 1
        for cut in modular_cuts(m):
            ext = extend(m, cut, "new")
            assert ext.deletion(["new"]) == m
            assert table_of(ext) == oracles.extension_table(t, m.size, cut.members)
            cuts_checked += 1
    return f"{pairs} seed sets, {cuts_checked} extensions"


@criterion(9, "oracle equivalence on 500 random presentations")
def test_criterion_9_random():
    rng = random.Random(SEED)
    for _ in range(500):
        labels, flats, t = oracles.random_presentation(rng, 7)
        n = len(labels)
        m = Matroid.from_labels(labels, flats)
        tm = table_of(m)
        assert oracles.is_rank_function(tm, n)
        full = (1 << n) - 1
        for x in range(1 << n):
            c = m.closure_mask(x)
            assert m.closure_mask(c) == c and m.rank_mask(c) == tm[x]
        x = rng.randrange(1 << n)
        keep = [i for i in range(n) if not x >> i & 1]
        res, con = m.restriction(m.elements(full & ~x)), m.contraction(m.elements(x))
        for y in range(1 << len(keep)):
            lifted = sum(1 << keep[j] for j in range(len(keep)) if y >> j & 1)
            assert res.rank_mask(y) == tm[lifted]
            assert con.rank_mask(y) == tm[lifted | x] - tm[x]
        # canonical, repeatable ordering of every enumeration
        twin = Matroid.from_labels(labels, list(reversed(flats)))
        assert twin.presentation == m.presentation
        assert m.flat_masks() == sorted(m.flat_masks()) == twin.flat_masks()
        assert [c.mask for c in m.circuits()] == sorted(c.mask for c in twin.circuits())
        assert cyclic_flats_from_oracle(m) == m.presentation
        if len(m.flat_masks()) <= 16:
            assert [c.members for c in modular_cuts(m)] == [c.members for c in modular_cuts(twin)]


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
