import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import random_matroid
from cyclicflats import (AmalgamProblem, BudgetExceeded, UsageError, build_m_p, build_n_ip, build_n_planes,
                         extend, free_extension, has_amalgam, modular_cuts, uniform, verify_loop_argument,
                         verify_nonsticky_planes)
from cyclicflats.modcuts import ForcingStep


def brute_amalgam_exists(n1, n2):
    """Search every matroid on the union for one restricting to both."""
    labels = list(n1.ground.labels) + [x for x in n2.ground.labels if x not in n1.ground]
    n = len(labels)
    pos = {x: i for i, x in enumerate(labels)}

    def fits(t, part):
        for y in range(1 << part.size):
            mask = sum(1 << pos[part.ground.labels[j]] for j in range(part.size) if y >> j & 1)
            if t[mask] != part.rank_mask(y):
                return False
        return True

    return any(fits(t, n1) and fits(t, n2) for t in oracles.all_matroid_tables(n))


def test_restriction_has_the_larger_matroid_as_amalgam():
    m = uniform(2, 4)
    r = m.restriction(["1", "2", "3"])
    found = has_amalgam(AmalgamProblem(m, r))
    assert found.same_as(m)


def test_two_free_points_on_u23():
    m = uniform(2, 3)
    p = AmalgamProblem(free_extension(m, "x"), free_extension(m, "y"))
    found = has_amalgam(p)
    assert found is not None and found.size == 5
    assert brute_amalgam_exists(p.n1, p.n2)


def test_mismatched_common_part_is_rejected():
    a = uniform(2, 3)
    b = uniform(1, 3)
    with pytest.raises(UsageError):
        AmalgamProblem(a, b)


def test_budget_is_enforced():
    m = uniform(2, 3)
    p = AmalgamProblem(free_extension(m, "x"), free_extension(free_extension(m, "y"), "z"))
    with pytest.raises(BudgetExceeded) as info:
        has_amalgam(p, budget=0)
    assert info.value.explored == 0


def test_rank3_planes_have_no_amalgam():
    m = uniform(3, 4)
    h, h2 = m.subset(["1", "2"]), m.subset(["3", "4"])
    mp, _ = build_m_p(m, h, h2)
    n = build_n_planes(m, h, h2).n
    assert has_amalgam(AmalgamProblem(n, mp)) is None


@settings(max_examples=25)
@given(st.integers(0, 2 ** 32))
def test_amalgam_search_agrees_with_brute_force(seed):
    rng = random.Random(seed)
    m, _ = random_matroid(seed, max_n=3)
    cuts = list(modular_cuts(m))
    n1 = extend(m, rng.choice(cuts), "x")
    n2 = extend(m, rng.choice(cuts), "y")
    found = has_amalgam(AmalgamProblem(n1, n2))
    assert (found is not None) == brute_amalgam_exists(n1, n2)


# -- certificates ------------------------------------------------------------

@pytest.fixture(scope="module")
def cert3():
    return verify_nonsticky_planes(uniform(3, 4), ["1", "2"], ["3", "4"])


def test_rank3_certificate(cert3):
    assert cert3.holds and cert3.replay()
    assert [s.meet.labels() for s in cert3.steps] == [["a1", "a2"], ["b1", "b2"], []]
    assert cert3.facts["amalgam_search"] == "run"
    js = cert3.to_json()
    assert js["kind"] == "nonsticky-planes-r3" and all(c["ok"] for c in js["checks"])


def test_tampered_certificate_does_not_replay(cert3):
    s = cert3.steps[0]
    bogus = ForcingStep(s.x, s.y, s.x)
    assert not replace(cert3, steps=[bogus] + cert3.steps[1:]).replay()
    assert not replace(cert3, steps=cert3.steps[2:]).replay()


def test_rank4_certificate():
    cert = verify_nonsticky_planes(uniform(4, 6), ["1", "2", "3"], ["4", "5", "6"], explore_width=2)
    assert cert.holds and cert.replay()
    assert cert.facts["r_N'(P) bound"] == 1
    assert cert.facts["inequality"] == "3+3 = 6 >= 5 + r(P), so r(P) <= 1"
    assert cert.facts["chains_checked"] > 0


def test_certificate_preconditions():
    with pytest.raises(UsageError):
        verify_nonsticky_planes(uniform(3, 4), ["1", "2"], ["2", "3"])
    with pytest.raises(UsageError):
        verify_nonsticky_planes(uniform(2, 4), ["1"], ["2"])


@pytest.mark.parametrize("r,n,h", [(4, 5, ["3", "4", "5"]), (5, 6, ["3", "4", "5", "6"])])
def test_loop_argument(r, n, h):
    c = build_n_ip(uniform(r, n), ["1", "2"], h)
    cert = verify_loop_argument(c)
    assert cert.holds and cert.replay()
    assert [s.meet for s in cert.steps] == [c.d1, c.d2, c.a_set, c.n.loops]
    assert len(cert.steps) == 4


def test_no_cut_through_line_and_h_prime_avoids_the_loops():
    c = build_n_ip(uniform(4, 5), ["1", "2"], ["3", "4", "5"])
    assert list(modular_cuts(c.n, [c.line, c.h_prime], [c.n.loops])) == []
