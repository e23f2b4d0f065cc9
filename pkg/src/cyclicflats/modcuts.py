"""Modular pairs, modular cuts and single-element extensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .kernel import ElementSet, GroundSet, Matroid, MatroidError, UsageError


@dataclass(frozen=True)
class ForcingStep:
    """A modular pair (x, y) of cut members whose meet had to be added."""

    x: ElementSet
    y: ElementSet
    meet: ElementSet

    def to_json(self) -> dict:
        return {"x": self.x.labels(), "y": self.y.labels(), "meet": self.meet.labels()}


@dataclass(frozen=True)
class ModularCut:
    host: Matroid
    members: frozenset[int]
    trace: tuple[ForcingStep, ...] = field(default=(), compare=False, repr=False)

    def __contains__(self, f) -> bool:
        if isinstance(f, ElementSet):
            if f.universe != self.host.ground:
                raise UsageError("flat is over a different ground set")
            f = f.mask
        return f in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[ElementSet]:
        return (ElementSet(self.host.ground, f) for f in sorted(self.members))

    def minimal_members(self) -> list[ElementSet]:
        mins = [f for f in self.members if not any(g != f and g & f == g for g in self.members)]
        return [ElementSet(self.host.ground, f) for f in sorted(mins)]

    def to_json(self) -> dict:
        return {
            "members": [s.labels() for s in self],
            "minimal": [s.labels() for s in self.minimal_members()],
        }


def _flat_mask(m: Matroid, x) -> int:
    mask = x.mask if isinstance(x, ElementSet) else m.subset(x).mask
    if isinstance(x, ElementSet) and x.universe != m.ground:
        raise UsageError("element set is over a different ground set")
    if not m.is_flat_mask(mask):
        raise UsageError(f"{m.elements(mask)!r} is not a flat")
    return mask


def _modular(m: Matroid, x: int, y: int) -> bool:
    return m.rank_mask(x) + m.rank_mask(y) == m.rank_mask(x | y) + m.rank_mask(x & y)


def is_modular_pair(m: Matroid, x, y) -> bool:
    """r(x) + r(y) = r(cl(x | y)) + r(x & y), for flats x and y."""
    return _modular(m, _flat_mask(m, x), _flat_mask(m, y))


def is_modular_matroid(m: Matroid) -> bool:
    flats = m.flat_masks()
    return all(_modular(m, x, y) for i, x in enumerate(flats) for y in flats[i + 1:])


def is_modular_cut(m: Matroid, flats: Iterable) -> bool:
    members = {_flat_mask(m, f) for f in flats}
    return _is_modular_cut_masks(m, members)


def _is_modular_cut_masks(m: Matroid, members) -> bool:
    members = set(members)
    for f in members:
        if any(g not in members for g in m.upper_covers(f)):
            return False
    ordered = sorted(members)
    for i, x in enumerate(ordered):
        for y in ordered[i + 1:]:
            meet = x & y
            if meet not in members and _modular(m, x, y):
                return False
    return True


def _close(m: Matroid, base: set[int], seeds: Iterable[int], trace: list | None = None,
           reject: Callable[[int], bool] | None = None) -> set[int] | None:
    """Least modular cut containing ``base`` and ``seeds``.

    ``base`` must already be a modular cut; only pairs involving new members
    are examined.  Returns None as soon as a flat satisfying ``reject`` would
    enter the cut.
    """
    es = m.elements
    cut = set(base)
    done = sorted(base)
    queue: list[int] = []

    def add_up(f) -> bool:
        stack = [f]
        while stack:
            g = stack.pop()
            if g in cut:
                continue
            if reject is not None and reject(g):
                return False
            cut.add(g)
            queue.append(g)
            stack.extend(m.upper_covers(g))
        return True

    for s in seeds:
        if not add_up(s):
            return None
    while queue:
        g = queue.pop()
        for h in done:
            meet = g & h
            if meet in cut:
                continue
            if _modular(m, g, h):
                if trace is not None:
                    trace.append(ForcingStep(es(g), es(h), es(meet)))
                if not add_up(meet):
                    return None
        done.append(g)
    return cut


def forced_closure(m: Matroid, seeds: Iterable, *, trace: bool = False) -> ModularCut:
    """The least modular cut containing every flat in ``seeds``.

    Starts from the filter generated by the seeds and adds the meet of any
    modular pair of members (with its filter) until nothing changes.
    """
    masks = [_flat_mask(m, f) for f in seeds]
    steps: list[ForcingStep] | None = [] if trace else None
    cut = _close(m, set(), masks, steps)
    return ModularCut(m, frozenset(cut), tuple(steps or ()))


def principal_cut(m: Matroid, f) -> ModularCut:
    f = _flat_mask(m, f)
    return ModularCut(m, frozenset(g for g in m.flat_masks() if g & f == f))


def modular_cuts(m: Matroid, required: Iterable = (), forbidden: Iterable = ()) -> Iterator[ModularCut]:
    """Every modular cut containing ``required`` and avoiding ``forbidden``.

    Modular cuts are the closed sets of :func:`forced_closure`, so they are
    enumerated with close-by-one: each cut is produced once, in a fixed order.
    """
    flats = m.flat_masks()
    pos = {f: i for i, f in enumerate(flats)}
    req = [_flat_mask(m, f) for f in required]
    bad = {_flat_mask(m, f) for f in forbidden}
    start = _close(m, set(), req, reject=bad.__contains__)
    if start is None:
        return

    stack = [(start, 0)]
    while stack:
        cut, lo = stack.pop()
        yield ModularCut(m, frozenset(cut))
        children = []
        for i in range(lo, len(flats)):
            f = flats[i]
            if f in cut:
                continue
            # canonical iff nothing indexed before i is added
            grown = _close(m, cut, [f], reject=lambda g, i=i: g in bad or pos[g] < i)
            if grown is not None:
                children.append((grown, i + 1))
        stack.extend(reversed(children))


def extension_rank(m: Matroid, cut: ModularCut):
    """Rank function (on masks over E(m) + one new top bit) of the extension."""
    if cut.host is not m and cut.host != m:
        raise UsageError("modular cut belongs to a different matroid")
    e = 1 << m.size
    members = cut.members

    def rank(x: int) -> int:
        if not x & e:
            return m.rank_mask(x)
        y = x & ~e
        return m.rank_mask(y) + (0 if m.closure_mask(y) in members else 1)

    return rank


def extend(m: Matroid, cut: ModularCut, label: str) -> Matroid:
    """The single-element extension of ``m`` by ``label`` determined by ``cut``."""
    if label in m.ground:
        raise UsageError(f"label {label!r} is already in the ground set")
    ground = GroundSet(m.ground.labels + (label,))
    return Matroid.from_rank_function(ground, extension_rank(m, cut))


def principal_extension(m: Matroid, f, label: str) -> Matroid:
    """Add ``label`` freely to the flat ``f``."""
    return extend(m, principal_cut(m, f), label)


def free_extension(m: Matroid, label: str) -> Matroid:
    return principal_extension(m, m.full(), label)


def fresh_label(m: Matroid, stem: str, start: int = 1) -> str:
    i = start
    while f"{stem}{i}" in m.ground:
        i += 1
    return f"{stem}{i}"


def make_cyclic(m: Matroid, f, label: str | None = None) -> tuple[Matroid, ElementSet]:
    """Add a point freely to the flat ``f`` unless it is already cyclic.

    Returns the (possibly unchanged) matroid and the closure of ``f`` in it.
    """
    mask = _flat_mask(m, f)
    if m.is_cyclic(m.elements(mask)):
        return m, m.elements(mask)
    label = label or fresh_label(m, "x")
    ext = principal_extension(m, m.elements(mask), label)
    grown = ext.closure(ext.subset(m.elements(mask).labels()))
    if not ext.is_cyclic(grown):
        raise MatroidError(f"adding {label!r} freely did not make {grown!r} cyclic")
    return ext, grown


def build_m_p(m: Matroid, h, h2, stem: str = "p") -> tuple[Matroid, ElementSet]:
    """Iterate extensions placing r - 2 new points on both hyperplanes.

    At each step the cut is {cl(h), cl(h2), E}; it is checked to be a modular
    cut before extending.  Returns the extension and the set P of new points.
    """
    hm, h2m = _flat_mask(m, h), _flat_mask(m, h2)
    r = m.rank
    if r < 3:
        raise UsageError("need rank at least 3")
    if m.rank_mask(hm) != r - 1 or m.rank_mask(h2m) != r - 1:
        raise UsageError("both sets must be hyperplanes")
    if hm & h2m:
        raise UsageError("hyperplanes must be disjoint")
    hl, h2l = m.elements(hm).labels(), m.elements(h2m).labels()
    cur = m
    new = []
    for i in range(1, r - 1):
        a = cur.closure(cur.subset(hl))
        b = cur.closure(cur.subset(h2l))
        top = cur.full()
        if not is_modular_cut(cur, [a, b, top]):
            raise MatroidError(f"{{cl(H), cl(H'), E}} is not a modular cut at step {i}")
        label = fresh_label(cur, stem, i)
        cur = extend(cur, ModularCut(cur, frozenset({a.mask, b.mask, top.mask})), label)
        new.append(label)
    return cur, cur.subset(new)
