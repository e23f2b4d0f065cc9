"""Rank-4 line conditions and modular-cut witnesses for non-modular pairs.

The line family built by :func:`l_construction` turns two disjoint
coplanar lines into a modular cut that avoids their intersection.

Lines are all rank-2 flats.  Two lines are coplanar when their union has
rank at most 3; three lines are "not coplanar" when their union has rank 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .kernel import ElementSet, Matroid, UsageError
from .modcuts import ModularCut, _close, _flat_mask, _is_modular_cut_masks, _modular


@dataclass(frozen=True)
class LineQuadruple:
    lines: tuple[ElementSet, ElementSet, ElementSet, ElementSet]
    coplanar_pairs: frozenset[tuple[int, int]]

    @property
    def missing_pairs(self) -> list[tuple[int, int]]:
        return [p for p in combinations(range(4), 2) if p not in self.coplanar_pairs]

    @property
    def non_coplanar(self) -> list[tuple[ElementSet, ElementSet]]:
        return [(self.lines[i], self.lines[j]) for i, j in self.missing_pairs]

    def to_json(self) -> dict:
        return {
            "lines": [s.labels() for s in self.lines],
            "coplanar_pairs": sorted(list(p) for p in self.coplanar_pairs),
            "non_coplanar": [[a.labels(), b.labels()] for a, b in self.non_coplanar],
        }


def _need_rank4(m: Matroid):
    if m.rank != 4:
        raise UsageError(f"the bundle condition is about rank-4 matroids; this one has rank {m.rank}")


def bundle_counterexample(m: Matroid) -> LineQuadruple | None:
    """First quadruple of lines (canonical order), no three coplanar, with
    exactly five of its six pairs coplanar; None if there is none."""
    _need_rank4(m)
    lines = m.flats_of_rank_masks(2)
    r = m.rank_mask
    n = len(lines)
    cop = [[r(a | b) <= 3 for b in lines] for a in lines]
    for i in range(n):
        for j in range(i + 1, n):
            miss_ij = not cop[i][j]
            for k in range(j + 1, n):
                miss_k = miss_ij + (not cop[i][k]) + (not cop[j][k])
                if miss_k > 1:
                    continue
                if r(lines[i] | lines[j] | lines[k]) < 4:
                    continue
                for l in range(k + 1, n):
                    miss = miss_k + (not cop[i][l]) + (not cop[j][l]) + (not cop[k][l])
                    if miss != 1:
                        continue
                    q = (lines[i], lines[j], lines[k], lines[l])
                    if any(r(q[a] | q[b] | q[c]) < 4 for a, b, c in combinations(range(4), 3)):
                        continue
                    pairs = frozenset((a, b) for a, b in combinations(range(4), 2) if cop[(i, j, k, l)[a]][(i, j, k, l)[b]])
                    return LineQuadruple(tuple(m.elements(x) for x in q), pairs)
    return None


def bundle_condition_holds(m: Matroid) -> bool:
    return bundle_counterexample(m) is None


def non_modular_flat_pairs(m: Matroid) -> list[tuple[ElementSet, ElementSet]]:
    """Unordered pairs of flats that are not modular, canonical order.

    Pairs involving E and comparable pairs are always modular and skipped.
    """
    full = m.full().mask
    flats = [f for f in m.flat_masks() if f != full]
    out = []
    for i, x in enumerate(flats):
        for y in flats[i + 1:]:
            if x & y in (x, y):
                continue
            if not _modular(m, x, y):
                out.append((m.elements(x), m.elements(y)))
    return out


def intersection_property_witness(m: Matroid, x, y) -> ModularCut | None:
    """A modular cut containing x and y but not x & y, or None if none exists.

    Every modular cut containing x and y contains their forced closure, so
    the forced closure is a witness whenever any cut is.
    """
    xm, ym = _flat_mask(m, x), _flat_mask(m, y)
    if _modular(m, xm, ym):
        raise UsageError("the pair is modular")
    meet = xm & ym
    cut = _close(m, set(), [xm, ym], reject=lambda g: g == meet)
    if cut is None:
        return None
    assert xm in cut and ym in cut and meet not in cut
    assert _is_modular_cut_masks(m, cut), "forced closure is not a modular cut"
    return ModularCut(m, frozenset(cut))


@dataclass
class IntersectionReport:
    holds: bool
    pairs_checked: int
    failing: list[tuple[ElementSet, ElementSet]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "pairs_checked": self.pairs_checked,
            "failing": [[a.labels(), b.labels()] for a, b in self.failing],
        }


def intersection_property_holds(m: Matroid) -> IntersectionReport:
    pairs = non_modular_flat_pairs(m)
    failing = [(x, y) for x, y in pairs if intersection_property_witness(m, x, y) is None]
    return IntersectionReport(not failing, len(pairs), failing)


@dataclass
class LSet:
    p_plane: ElementSet
    l1: ElementSet
    l2: ElementSet
    lines_outside: list[ElementSet]
    lines_inside: list[ElementSet]
    all: list[ElementSet]
    checks: dict[str, bool]
    cut: ModularCut | None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "plane": self.p_plane.labels(),
            "l1": self.l1.labels(),
            "l2": self.l2.labels(),
            "lines_outside": [s.labels() for s in self.lines_outside],
            "lines_inside": [s.labels() for s in self.lines_inside],
            "checks": dict(self.checks),
            "failures": list(self.failures),
        }


def disjoint_coplanar_line_pairs(m: Matroid) -> list[tuple[ElementSet, ElementSet]]:
    _need_rank4(m)
    lines = m.flats_of_rank_masks(2)
    loops = m.loops.mask
    return [(m.elements(a), m.elements(b)) for a, b in combinations(lines, 2)
            if a & b == loops and m.rank_mask(a | b) == 3]


def l_construction(m: Matroid, l1, l2, *, check_bundle: bool = True) -> LSet:
    """Build the line family L for two disjoint coplanar lines and check it.

    L is {l1, l2}, plus the lines off the plane P = cl(l1 + l2) coplanar with
    both, plus the lines in P coplanar with one of those.  Checks: (a) lines
    off P pairwise coplanar; (b) lines in P coplanar with every line off P;
    (c) a line lying in two distinct planes with members of L is in L;
    members pairwise disjoint; the filter generated by L is a modular cut
    avoiding cl(l1 & l2).
    """
    _need_rank4(m)
    a, b = _flat_mask(m, l1), _flat_mask(m, l2)
    r = m.rank_mask
    loops = m.loops.mask
    if r(a) != 2 or r(b) != 2:
        raise UsageError("l1 and l2 must be lines")
    if a & b != loops:
        raise UsageError("l1 and l2 must be disjoint")
    if r(a | b) != 3:
        raise UsageError("l1 and l2 must be coplanar")
    if check_bundle:
        bad = bundle_counterexample(m)
        if bad is not None:
            raise UsageError(f"the bundle condition fails: {bad.to_json()['lines']}")
    plane = m.closure_mask(a | b)
    lines = m.flats_of_rank_masks(2)
    cop = lambda x, y: r(x | y) <= 3  # noqa: E731

    outside = [x for x in lines if x & ~plane and cop(x, a) and cop(x, b)]
    inside = [x for x in lines if not x & ~plane and any(cop(x, y) for y in outside)]
    family = sorted({a, b, *outside, *inside})
    fam = set(family)

    checks = {}
    failures = []
    checks["a_outside_pairwise_coplanar"] = all(cop(x, y) for x, y in combinations(outside, 2))
    checks["b_inside_coplanar_with_outside"] = all(cop(x, y) for x in inside for y in outside)

    def two_planes(x):
        planes = {m.closure_mask(x | y) for y in family if y != x and r(x | y) == 3}
        return len(planes) >= 2

    strays = [x for x in lines if x not in fam and two_planes(x)]
    checks["c_two_planes_closed"] = not strays
    failures += [f"line {m.elements(x)!r} lies in two planes with members of L" for x in strays]
    overlaps = [(x, y) for x, y in combinations(family, 2) if x & y != loops]
    checks["pairwise_disjoint"] = not overlaps
    failures += [f"{m.elements(x)!r} and {m.elements(y)!r} meet" for x, y in overlaps]

    filt = {f for f in m.flat_masks() if any(f & x == x for x in family)}
    checks["filter_is_modular_cut"] = _is_modular_cut_masks(m, filt)
    checks["filter_excludes_meet"] = m.closure_mask(a & b) not in filt
    cut = ModularCut(m, frozenset(filt)) if checks["filter_is_modular_cut"] else None

    es = m.elements
    return LSet(es(plane), es(a), es(b), [es(x) for x in outside], [es(x) for x in inside],
                [es(x) for x in family], checks, cut, failures)
