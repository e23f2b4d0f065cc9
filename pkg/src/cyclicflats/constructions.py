"""Named matroids and the extension constructions built on disjoint flats."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .axioms import check_z_axioms
from .kernel import (CyclicFlatPresentation, ElementSet, GroundSet, InvalidPresentation, Matroid,
                     UsageError)
from .linear import COUNTEREXAMPLE_GROUPS, column_matroid, counterexample_matrix
from .modcuts import fresh_label, make_cyclic, principal_extension

VAMOS_PAIRS = (("a", "a'"), ("b", "b'"), ("c", "c'"), ("d", "d'"))


def vamos() -> Matroid:
    """Rank 4 on {a,a',...,d,d'}; every {x,x',y,y'} but {a,a',d,d'} is a rank-3 cyclic flat."""
    labels = [x for pair in VAMOS_PAIRS for x in pair]
    flats = [((), 0), (labels, 4)]
    for (i, p), (j, q) in combinations(enumerate(VAMOS_PAIRS), 2):
        if (i, j) != (0, 3):
            flats.append((p + q, 3))
    return Matroid.from_labels(labels, flats)


def counterexample_rank5() -> Matroid:
    return column_matroid(counterexample_matrix())


def counterexample_groups(m: Matroid) -> dict[str, ElementSet]:
    return {name: m.subset(cols) for name, cols in COUNTEREXAMPLE_GROUPS.items()}


def _adjoin(base: Matroid, extra_labels: list[str], new_flats: list[tuple[ElementSet, int]]) -> Matroid:
    """Matroid on E(base) + extra_labels whose cyclic flats are those of base plus new_flats."""
    ground = GroundSet(base.ground.labels + tuple(extra_labels))
    entries = [(ground.subset(s.labels()), r) for s, r in base.presentation.flats]
    entries += [(ground.subset(s), r) for s, r in new_flats]
    pres = CyclicFlatPresentation(ground, tuple(entries))
    violations = check_z_axioms(pres)
    if violations:
        raise InvalidPresentation(violations)
    return Matroid(pres, validate=False)


def _labels(prefix: str, count: int, taken) -> list[str]:
    out, i = [], 1
    while len(out) < count:
        label = f"{prefix}{i}"
        if label not in taken:
            out.append(label)
        i += 1
    return out


@dataclass(frozen=True)
class PlanesConstruction:
    base: Matroid
    m_prime: Matroid
    h1: ElementSet
    h2: ElementSet
    a_set: ElementSet
    b_set: ElementSet
    n: Matroid

    def in_n(self, s: ElementSet) -> ElementSet:
        return self.n.subset(s.labels())


def _check_hyperplane(m: Matroid, h) -> ElementSet:
    h = h if isinstance(h, ElementSet) else m.subset(h)
    if not m.is_flat(h) or m.rank_of(h) != m.rank - 1:
        raise UsageError(f"{h!r} is not a hyperplane")
    return h


def build_n_planes(m: Matroid, h, h2) -> PlanesConstruction:
    """Extension N of M built from disjoint hyperplanes H, H'.

    H and H' are made cyclic (giving M', H1, H2); then fresh (r-1)-sets A and
    B are added with cyclic flats E(M')+A+B of rank r+1 and H1+A, H1+B,
    H2+A, H2+B of rank r.
    """
    r = m.rank
    if r < 3:
        raise UsageError("need rank at least 3")
    h, h2 = _check_hyperplane(m, h), _check_hyperplane(m, h2)
    if not h.isdisjoint(h2):
        raise UsageError("hyperplanes must be disjoint")
    mp, h1 = make_cyclic(m, h, fresh_label(m, "x"))
    mp, h2c = make_cyclic(mp, mp.subset(h2.labels()), fresh_label(mp, "x"))
    h1 = mp.subset(h1.labels())
    taken = set(mp.ground.labels)
    a = _labels("a", r - 1, taken)
    b = _labels("b", r - 1, taken)
    top = mp.ground.labels
    new = [(list(top) + a + b, r + 1)]
    for hh in (h1, h2c):
        for extra in (a, b):
            new.append((hh.labels() + extra, r))
    n = _adjoin(mp, a + b, new)
    return PlanesConstruction(m, mp, h1, h2c, n.subset(a), n.subset(b), n)


@dataclass(frozen=True)
class IpConstruction:
    base: Matroid
    m_prime: Matroid
    line: ElementSet
    h_prime: ElementSet
    a_set: ElementSet
    d1: ElementSet
    d2: ElementSet
    n: Matroid


def build_n_ip(m: Matroid, line, h) -> IpConstruction:
    """Loopless extension N of M from a line disjoint from a hyperplane.

    The line is made cyclic if needed; r-3 points A are added freely to H
    one at a time, H' = cl(H + A); D1, D2 are (r-1)-sets containing A.  N adds
    the cyclic flats E(M')+D1+D2 (rank r+1) and D1+H', D1+l, D2+H', D2+l
    (rank r).
    """
    r = m.rank
    if r < 4:
        raise UsageError("need rank at least 4")
    line = line if isinstance(line, ElementSet) else m.subset(line)
    if not m.is_flat(line) or m.rank_of(line) != 2:
        raise UsageError(f"{line!r} is not a line")
    h = _check_hyperplane(m, h)
    if not line.isdisjoint(h):
        raise UsageError("line and hyperplane must be disjoint")

    cur, lc = make_cyclic(m, line, fresh_label(m, "x"))
    a_labels = []
    for i in range(r - 3):
        hc = cur.closure(cur.subset(h.labels()))
        label = fresh_label(cur, "a")
        cur = principal_extension(cur, hc, label)
        a_labels.append(label)
    mp = cur
    lc = mp.subset(lc.labels())
    hp = mp.closure(mp.subset(h.labels() + a_labels))
    taken = set(mp.ground.labels)
    d1_new = _labels("d1_", 2, taken)
    d2_new = _labels("d2_", 2, taken)
    d1, d2 = a_labels + d1_new, a_labels + d2_new
    new = [(list(mp.ground.labels) + d1_new + d2_new, r + 1)]
    for d in (d1, d2):
        new.append((d + hp.labels(), r))
        new.append((d + lc.labels(), r))
    n = _adjoin(mp, d1_new + d2_new, new)
    return IpConstruction(m, mp, n.subset(lc.labels()), n.subset(hp.labels()), n.subset(a_labels),
                          n.subset(d1), n.subset(d2), n)
