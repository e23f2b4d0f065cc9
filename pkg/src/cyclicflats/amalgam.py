"""Amalgam search and certificates that particular pairs of extensions have
no amalgam."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .constructions import IpConstruction, build_n_planes
from .kernel import ElementSet, Matroid, MatroidError, UsageError
from .modcuts import (ForcingStep, _flat_mask, _modular, build_m_p, extend, forced_closure,
                      modular_cuts)

DEFAULT_BUDGET = 10 ** 6


class BudgetExceeded(MatroidError):
    def __init__(self, explored: int):
        self.explored = explored
        super().__init__(f"search budget exhausted after {explored} nodes")


class CertificateFailure(MatroidError):
    """A certificate did not verify; the construction is broken on this input."""


@dataclass(frozen=True)
class AmalgamProblem:
    n1: Matroid
    n2: Matroid

    def __post_init__(self):
        a = self.n1.restriction(self.n1.subset(self.common))
        b = self.n2.restriction(self.n2.subset(self.common))
        if not a.same_as(b):
            raise UsageError("the two matroids differ on their common elements")

    @property
    def common(self) -> list[str]:
        other = set(self.n2.ground.labels)
        return [x for x in self.n1.ground.labels if x in other]


def _constraints(cur: Matroid, n2: Matroid, label: str):
    """Flats of ``cur`` a new element ``label`` must / must not span.

    S is the part of E(n2) already in ``cur``; for each flat F of n2|S the
    element spans F in n2 iff cl_cur(F) is in the cut.
    """
    s = [x for x in n2.ground.labels if x in cur.ground and x != label]
    local = n2.restriction(n2.subset(s + [label]))
    e = local.subset([label]).mask
    required, forbidden = [], []
    sub = local.restriction(local.subset(s))
    for f in sub.flat_masks():
        labels = sub.elements(f).labels()
        target = cur.closure(cur.subset(labels))
        spans = local.rank_mask(local.subset(labels).mask | e) == local.rank_mask(local.subset(labels).mask)
        (required if spans else forbidden).append(target)
    return required, forbidden


def has_amalgam(problem: AmalgamProblem, budget: int = DEFAULT_BUDGET) -> Matroid | None:
    """A matroid on E(n1) + E(n2) restricting to both, or None if none exists.

    Depth-first over chains of single-element extensions of n1 by the
    elements of E(n2) - E(n1) in n2's order.  Each step only tries modular
    cuts consistent with n2 on the elements placed so far, so every amalgam
    is reachable and the search is complete.  Raises BudgetExceeded after
    ``budget`` tried extensions.
    """
    n1, n2 = problem.n1, problem.n2
    new = [x for x in n2.ground.labels if x not in n1.ground]
    explored = 0

    def dfs(cur: Matroid, k: int) -> Matroid | None:
        nonlocal explored
        if k == len(new):
            return cur
        label = new[k]
        required, forbidden = _constraints(cur, n2, label)
        for cut in modular_cuts(cur, required, forbidden):
            explored += 1
            if explored > budget:
                raise BudgetExceeded(explored - 1)
            found = dfs(extend(cur, cut, label), k + 1)
            if found is not None:
                return found
        return None

    result = dfs(n1, 0)
    if result is not None:
        assert result.restriction(result.subset(n1.ground.labels)).same_as(n1)
        assert result.restriction(result.subset(n2.ground.labels)).same_as(n2)
    return result


@dataclass
class Certificate:
    """Replayable evidence: modular pairs of ``host`` forcing flats into
    every modular cut that contains ``seeds``."""

    kind: str
    holds: bool
    host: Matroid
    seeds: list[ElementSet]
    steps: list[ForcingStep]
    checks: list[dict] = field(default_factory=list)
    facts: dict[str, Any] = field(default_factory=dict)

    def add_check(self, name: str, expected, actual) -> bool:
        ok = expected == actual
        self.checks.append({"name": name, "expected": expected, "actual": actual, "ok": ok})
        return ok

    def replay(self) -> bool:
        """Re-verify each step: both flats are already forced, the pair is
        modular, and the meet is their intersection."""
        m = self.host
        gens = [_flat_mask(m, s) for s in self.seeds]
        for step in self.steps:
            x, y = _flat_mask(m, step.x), _flat_mask(m, step.y)
            for f in (x, y):
                if not any(f & g == g for g in gens):
                    return False
            if not _modular(m, x, y) or step.meet.mask != x & y:
                return False
            gens.append(x & y)
        return True

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "holds": self.holds,
            "seeds": [s.labels() for s in self.seeds],
            "steps": [s.to_json() for s in self.steps],
            "checks": self.checks,
            "facts": self.facts,
        }


def _step(n: Matroid, x: ElementSet, y: ElementSet) -> ForcingStep:
    return ForcingStep(x, y, x & y)


def verify_nonsticky_planes(m: Matroid, h, h2, *, amalgam_limit: int = 12,
                            explore_width: int = 6) -> Certificate:
    """Certify that N (from disjoint hyperplanes H, H') and M_P have no amalgam.

    Rank 3: the modular pairs (H1+A, H2+A), (H1+B, H2+B), (A, B) force
    cl(empty) into every cut containing H1 and H2, so a common point of both
    closures is a loop, while P is a non-loop of M_P.  Cross-checked with
    :func:`has_amalgam` when the union has at most ``amalgam_limit`` elements.

    Rank 4: the first two pairs put P inside cl(A) and cl(B); semimodularity
    of A+P, B+P then bounds r(P) by 2(r-1) - (r+1) = r-3 < r-2 = r_{M_P}(P).
    Admissible two-point extension chains of N (the first ``explore_width``
    modular cuts in canonical order at each step, the least one first) are
    built and checked against the bound.
    """
    r = m.rank
    if r not in (3, 4):
        raise UsageError("supported for rank 3 and 4 only")
    h = h if isinstance(h, ElementSet) else m.subset(h)
    h2 = h2 if isinstance(h2, ElementSet) else m.subset(h2)
    mp, p = build_m_p(m, h, h2)
    c = build_n_planes(m, h, h2)
    n = c.n
    h1, hh2 = c.in_n(c.h1), c.in_n(c.h2)
    a = n.closure(c.a_set)
    b = n.closure(c.b_set)
    steps = [_step(n, n.closure(h1 | c.a_set), n.closure(hh2 | c.a_set)),
             _step(n, n.closure(h1 | c.b_set), n.closure(hh2 | c.b_set))]
    cert = Certificate(f"nonsticky-planes-r{r}", False, n, [h1, hh2], steps)
    cert.facts.update({
        "rank": r,
        "P": p.labels(),
        "A": c.a_set.labels(),
        "B": c.b_set.labels(),
        "N_size": n.size,
        "M_P_size": mp.size,
    })
    ok = cert.add_check("|P|", r - 2, len(p))
    ok &= cert.add_check("r_M_P(P)", r - 2, mp.rank_of(p))
    ok &= cert.add_check("N.rank", r + 1, n.rank)
    ok &= cert.add_check("step meets are A and B", [a.labels(), b.labels()],
                         [s.meet.labels() for s in steps])
    loops = n.loops
    if r == 3:
        cert.steps.append(_step(n, a, b))
        ok &= cert.add_check("(A, B) forces cl(empty)", loops.labels(), cert.steps[-1].meet.labels())
        fc = forced_closure(n, [h1, hh2])
        ok &= cert.add_check("forced closure of {H1, H2} contains cl(empty)", True, loops in fc)
        ok &= cert.add_check("steps replay", True, cert.replay())
        if n.size + len(p) <= amalgam_limit:
            found = has_amalgam(AmalgamProblem(n, mp))
            ok &= cert.add_check("has_amalgam(N, M_P)", None, None if found is None else "amalgam")
            cert.facts["amalgam_search"] = "run"
        else:
            cert.facts["amalgam_search"] = "skipped: ground set too large"
    else:
        ra, rb, rab = n.rank_of(c.a_set), n.rank_of(c.b_set), n.rank_of(c.a_set | c.b_set)
        ok &= cert.add_check("r_N(A)", r - 1, ra)
        ok &= cert.add_check("r_N(B)", r - 1, rb)
        ok &= cert.add_check("r_N(A u B)", r + 1, rab)
        bound = ra + rb - rab
        cert.facts["inequality"] = f"{ra}+{rb} = {ra + rb} >= {rab} + r(P), so r(P) <= {bound}"
        cert.facts["r_N'(P) bound"] = bound
        ok &= cert.add_check("bound below r_M_P(P)", True, bound < mp.rank_of(p))
        ok &= cert.add_check("steps replay", True, cert.replay())
        explored, exhaustive, bad = _explore_planes_chains(n, c, r - 2, bound, explore_width)
        cert.facts["chains_checked"] = explored
        cert.facts["chains_exhaustive"] = exhaustive
        ok &= cert.add_check("explored chains violating the bound", [], bad)
    cert.holds = bool(ok)
    if not cert.holds:
        raise CertificateFailure(f"certificate failed: {[x for x in cert.checks if not x['ok']]}")
    return cert


def _explore_planes_chains(n: Matroid, c, count: int, bound: int, width: int):
    """Extension chains of N adding ``count`` points, each in cl(H1) and cl(H2).

    Returns (chains checked, whether that was all of them, violations).
    """
    h1l, h2l = c.h1.labels(), c.h2.labels()
    al, bl = c.a_set.labels(), c.b_set.labels()
    checked = 0
    exhaustive = True
    bad = []

    def dfs(cur: Matroid, k: int, placed: list[str]):
        nonlocal checked, exhaustive
        if k == count:
            checked += 1
            pm = cur.subset(placed)
            ca, cb = cur.closure(cur.subset(al)), cur.closure(cur.subset(bl))
            meet_a = cur.closure(cur.subset(h1l + al)) & cur.closure(cur.subset(h2l + al))
            if not (pm <= ca and pm <= cb and meet_a == ca and cur.rank_of(pm) <= bound):
                bad.append(placed)
            return
        label = f"q{k + 1}"
        req = [cur.closure(cur.subset(h1l)), cur.closure(cur.subset(h2l))]
        for i, cut in enumerate(modular_cuts(cur, req)):
            if i == width:
                exhaustive = False
                break
            dfs(extend(cur, cut, label), k + 1, placed + [label])

    dfs(n, 0, [])
    return checked, exhaustive, bad


def verify_loop_argument(c: IpConstruction) -> Certificate:
    """Certify that a point of N' in cl(l) and cl(H') is a loop.

    The forcing chain (D1+l, D1+H') -> D1, (D2+l, D2+H') -> D2,
    (D1, D2) -> A, (A, l) -> cl(empty) is replayed, and the forced closure of
    {l, H'} is checked to contain cl(empty).
    """
    n = c.n
    cl = n.closure
    steps = [
        _step(n, cl(c.d1 | c.line), cl(c.d1 | c.h_prime)),
        _step(n, cl(c.d2 | c.line), cl(c.d2 | c.h_prime)),
        _step(n, cl(c.d1), cl(c.d2)),
        _step(n, cl(c.a_set), c.line),
    ]
    cert = Certificate("loop-argument", False, n, [c.line, c.h_prime], steps)
    cert.facts.update({"rank": c.base.rank, "A": c.a_set.labels(), "D1": c.d1.labels(),
                       "D2": c.d2.labels(), "line": c.line.labels(), "H'": c.h_prime.labels()})
    ok = cert.add_check("N loopless", [], n.loops.labels())
    ok &= cert.add_check("step 1 forces D1", c.d1.labels(), steps[0].meet.labels())
    ok &= cert.add_check("step 2 forces D2", c.d2.labels(), steps[1].meet.labels())
    ok &= cert.add_check("step 3 forces A", c.a_set.labels(), steps[2].meet.labels())
    ok &= cert.add_check("step 4 forces cl(empty)", n.loops.labels(), steps[3].meet.labels())
    ok &= cert.add_check("steps replay", True, cert.replay())
    fc = forced_closure(n, [c.line, c.h_prime])
    ok &= cert.add_check("forced closure of {l, H'} contains cl(empty)", True, n.loops in fc)
    cert.holds = bool(ok)
    if not cert.holds:
        raise CertificateFailure(f"certificate failed: {[x for x in cert.checks if not x['ok']]}")
    return cert
