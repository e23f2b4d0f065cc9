"""Ground sets, element sets and matroids presented by their cyclic flats.

Element sets are bitmasks over the canonical indexing of a :class:`GroundSet`.
A :class:`Matroid` is built from a :class:`CyclicFlatPresentation`; its rank
oracle is

    r(X) = min over cyclic flats Z of  r(Z) + |X - Z|

and every other structure (closure, flats, circuits, minors) is derived from
that oracle and cached.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

MAX_ELEMENTS = 64


class MatroidError(Exception):
    """Base class for errors raised by this package."""


class UsageError(MatroidError, ValueError):
    """Operands are incompatible (wrong ground set, not a flat, ...)."""


class InvalidPresentation(MatroidError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(v.detail for v in self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            lines += f"; ... {more} more"
        super().__init__(f"presentation violates the cyclic-flat axioms: {lines}")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class GroundSet:
    """An ordered collection of distinct string labels."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            dup = sorted({x for x in labels if labels.count(x) > 1})
            raise UsageError(f"duplicate labels in ground set: {dup}")
        if len(labels) > MAX_ELEMENTS:
            raise UsageError(f"ground sets are limited to {MAX_ELEMENTS} elements")
        self.labels = labels
        self._index = {x: i for i, x in enumerate(labels)}

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)!r})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UsageError(f"{label!r} is not in the ground set") from None

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for x in labels:
            mask |= 1 << self.index(x)
        return mask

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def subset(self, labels: Iterable[str] = ()) -> ElementSet:
        if isinstance(labels, str):
            labels = [labels]
        return ElementSet(self, self.mask_of(labels))

    def full(self) -> ElementSet:
        return ElementSet(self, self.full_mask)

    def empty(self) -> ElementSet:
        return ElementSet(self, 0)


@dataclass(frozen=True)
class ElementSet:
    """A subset of a ground set, stored as a bitmask."""

    universe: GroundSet
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.universe):
            raise UsageError("mask has bits outside the ground set")

    def _check(self, other: ElementSet) -> int:
        if not isinstance(other, ElementSet):
            return NotImplemented
        if other.universe != self.universe:
            raise UsageError("element sets live over different ground sets")
        return other.mask

    def __or__(self, other):
        return ElementSet(self.universe, self.mask | self._check(other))

    def __and__(self, other):
        return ElementSet(self.universe, self.mask & self._check(other))

    def __sub__(self, other):
        return ElementSet(self.universe, self.mask & ~self._check(other))

    def __xor__(self, other):
        return ElementSet(self.universe, self.mask ^ self._check(other))

    def complement(self) -> ElementSet:
        return ElementSet(self.universe, self.universe.full_mask & ~self.mask)

    def __le__(self, other):
        return self.mask & ~self._check(other) == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self) -> Iterator[str]:
        return iter(self.universe.labels_of(self.mask))

    def __contains__(self, label) -> bool:
        return label in self.universe and self.mask >> self.universe.index(label) & 1 == 1

    def isdisjoint(self, other: ElementSet) -> bool:
        return self.mask & self._check(other) == 0

    def labels(self) -> list[str]:
        return self.universe.labels_of(self.mask)

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


def _as_mask(ground: GroundSet, x) -> int:
    if isinstance(x, ElementSet):
        if x.universe != ground:
            raise UsageError("element set is over a different ground set")
        return x.mask
    if isinstance(x, int):
        raise UsageError("pass an ElementSet or an iterable of labels, not an int")
    return ground.mask_of([x] if isinstance(x, str) else x)


@dataclass(frozen=True)
class CyclicFlatPresentation:
    """A ground set with a list of (cyclic flat, rank) entries.

    Entries are kept in canonical order (by bitmask value).  Nothing beyond
    non-negative integer ranks is checked here; see
    :func:`cyclicflats.axioms.check_z_axioms`.
    """

    ground: GroundSet
    flats: tuple[tuple[ElementSet, int], ...]

    def __post_init__(self):
        entries = []
        for s, r in self.flats:
            if not isinstance(s, ElementSet):
                s = self.ground.subset(s)
            elif s.universe != self.ground:
                raise UsageError("presentation entry over a different ground set")
            if isinstance(r, bool) or not isinstance(r, int):
                raise UsageError(f"rank of {s!r} must be an integer, got {r!r}")
            if r < 0:
                raise UsageError(f"negative rank {r} for {s!r}")
            entries.append((s, r))
        entries.sort(key=lambda e: (e[0].mask, e[1]))
        object.__setattr__(self, "flats", tuple(entries))

    @classmethod
    def from_labels(cls, labels: Iterable[str], flats: Iterable[tuple[Iterable[str], int]]):
        ground = labels if isinstance(labels, GroundSet) else GroundSet(labels)
        return cls(ground, tuple((ground.subset(s), r) for s, r in flats))

    @classmethod
    def from_masks(cls, ground: GroundSet, pairs: Iterable[tuple[int, int]]):
        return cls(ground, tuple((ElementSet(ground, z), r) for z, r in pairs))

    def masks(self) -> list[tuple[int, int]]:
        return [(s.mask, r) for s, r in self.flats]

    def rank_map(self) -> dict[int, int]:
        return {s.mask: r for s, r in self.flats}

    def __len__(self) -> int:
        return len(self.flats)

    def as_labels(self) -> frozenset:
        """Order-free view, for comparing presentations over permuted ground sets."""
        return frozenset((frozenset(s.labels()), r) for s, r in self.flats)


def presentation_from_rank(ground: GroundSet, rank: Callable[[int], int]) -> CyclicFlatPresentation:
    """Cyclic flats of the matroid with the given rank function on bitmasks."""
    full = ground.full_mask
    n = len(ground)

    def cl(x):
        r = rank(x)
        out = x
        for i in range(n):
            b = 1 << i
            if not x & b and rank(x | b) == r:
                out |= b
        return out

    level = {cl(0)}
    seen = set(level)
    cyclic = []
    while level:
        nxt = set()
        for f in level:
            r = rank(f)
            if all(rank(f & ~(1 << i)) == r for i in bits(f)):
                cyclic.append((f, r))
            rest = full & ~f
            while rest:
                low = rest & -rest
                rest ^= low
                g = cl(f | low)
                rest &= ~g
                if g not in seen:
                    seen.add(g)
                    nxt.add(g)
        level = nxt
    return CyclicFlatPresentation.from_masks(ground, cyclic)


class Matroid:
    """A matroid given by its lattice of cyclic flats and their ranks.

    Instances are immutable; derived data is computed on demand and cached
    under a lock, so concurrent readers observe the same values.
    """

    def __init__(self, presentation: CyclicFlatPresentation, *, validate: bool = True):
        if validate:
            from .axioms import check_z_axioms

            violations = check_z_axioms(presentation)
            if violations:
                raise InvalidPresentation(violations)
        self.presentation = presentation
        self.ground = presentation.ground
        self._n = len(self.ground)
        self._full = self.ground.full_mask
        self._zs = presentation.masks()
        self._lock = threading.Lock()
        self._rank_memo: dict[int, int] = {}
        self._cl_memo: dict[int, int] = {}
        self._derived: dict = {}
        self.rank = self.rank_mask(self._full)
        self.loops = ElementSet(self.ground, min(self._zs, key=lambda e: e[0].bit_count())[0])

    @classmethod
    def from_labels(cls, labels, flats, **kw) -> Matroid:
        return cls(CyclicFlatPresentation.from_labels(labels, flats), **kw)

    @classmethod
    def from_rank_function(cls, ground: GroundSet, rank: Callable[[int], int]) -> Matroid:
        return cls(presentation_from_rank(ground, rank), validate=False)

    def __repr__(self) -> str:
        return f"<Matroid rank {self.rank} on {self._n} elements, {len(self._zs)} cyclic flats>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Matroid) and self.presentation == other.presentation

    def __hash__(self) -> int:
        return hash(self.presentation)

    def same_as(self, other: Matroid) -> bool:
        """Equal as labelled matroids, ignoring the order of the ground set."""
        return (set(self.ground.labels) == set(other.ground.labels)
                and self.presentation.as_labels() == other.presentation.as_labels())

    @property
    def size(self) -> int:
        return self._n

    def subset(self, labels=()) -> ElementSet:
        return self.ground.subset(labels)

    def elements(self, mask: int) -> ElementSet:
        return ElementSet(self.ground, mask)

    def full(self) -> ElementSet:
        return self.ground.full()

    def _cached(self, key, compute):
        try:
            return self._derived[key]
        except KeyError:
            pass
        value = compute()
        with self._lock:
            return self._derived.setdefault(key, value)

    # -- bitmask layer ---------------------------------------------------

    def rank_mask(self, x: int) -> int:
        r = self._rank_memo.get(x)
        if r is None:
            r = min(rz + (x & ~z).bit_count() for z, rz in self._zs)
            self._rank_memo[x] = r
        return r

    def closure_mask(self, x: int) -> int:
        c = self._cl_memo.get(x)
        if c is None:
            r = self.rank_mask(x)
            c = x
            rest = self._full & ~x
            while rest:
                low = rest & -rest
                rest ^= low
                if self.rank_mask(x | low) == r:
                    c |= low
            self._cl_memo[x] = c
        return c

    def is_flat_mask(self, x: int) -> bool:
        return self.closure_mask(x) == x

    def _flat_data(self):
        def compute():
            ranks = {}
            covers = {}
            level = [self.closure_mask(0)]
            ranks[level[0]] = self.rank_mask(level[0])
            while level:
                nxt = []
                for f in level:
                    ups = []
                    rest = self._full & ~f
                    while rest:
                        low = rest & -rest
                        rest ^= low
                        g = self.closure_mask(f | low)
                        rest &= ~g
                        ups.append(g)
                        if g not in ranks:
                            ranks[g] = self.rank_mask(g)
                            nxt.append(g)
                    covers[f] = tuple(sorted(ups))
                level = nxt
            order = sorted(ranks)
            return ranks, covers, order

        return self._cached("flats", compute)

    def flat_ranks(self) -> dict[int, int]:
        """Every flat (as a mask) with its rank."""
        return self._flat_data()[0]

    def flat_masks(self) -> list[int]:
        """Every flat, in canonical (bitmask) order."""
        return self._flat_data()[2]

    def upper_covers(self, f: int) -> tuple[int, ...]:
        return self._flat_data()[1][f]

    def flats_of_rank_masks(self, k: int) -> list[int]:
        ranks = self.flat_ranks()
        return [f for f in self.flat_masks() if ranks[f] == k]

    # -- element-set layer -------------------------------------------------

    def _mask(self, x) -> int:
        return _as_mask(self.ground, x)

    def rank_of(self, x) -> int:
        return self.rank_mask(self._mask(x))

    def closure(self, x) -> ElementSet:
        return ElementSet(self.ground, self.closure_mask(self._mask(x)))

    def is_flat(self, x) -> bool:
        return self.is_flat_mask(self._mask(x))

    def is_independent(self, x) -> bool:
        m = self._mask(x)
        return self.rank_mask(m) == m.bit_count()

    def is_cyclic(self, x) -> bool:
        m = self._mask(x)
        r = self.rank_mask(m)
        return all(self.rank_mask(m & ~(1 << i)) == r for i in bits(m))

    def circuits(self) -> list[ElementSet]:
        def compute():
            found = []
            for size in range(1, self.rank + 2):
                for combo in combinations(range(self._n), size):
                    c = 0
                    for i in combo:
                        c |= 1 << i
                    if self.rank_mask(c) != size - 1:
                        continue
                    if all(self.rank_mask(c & ~(1 << i)) == size - 1 for i in combo):
                        found.append(c)
            return sorted(found)

        return [ElementSet(self.ground, c) for c in self._cached("circuits", compute)]

    def flats(self, k: int | None = None) -> list[ElementSet]:
        if k is None:
            return [ElementSet(self.ground, f) for f in self.flat_masks()]
        if not 0 <= k <= self.rank:
            raise UsageError(f"rank {k} is outside 0..{self.rank}")
        return [ElementSet(self.ground, f) for f in self.flats_of_rank_masks(k)]

    def hyperplanes(self) -> list[ElementSet]:
        return self.flats(self.rank - 1) if self.rank >= 1 else []

    def lines(self) -> list[ElementSet]:
        return self.flats(2) if self.rank >= 2 else []

    def planes(self) -> list[ElementSet]:
        return self.flats(3) if self.rank >= 3 else []

    def cyclic_flats(self) -> CyclicFlatPresentation:
        """Recompute the cyclic flats from the rank oracle."""
        ranks = self.flat_ranks()
        found = [(f, ranks[f]) for f in self.flat_masks() if self.is_cyclic(ElementSet(self.ground, f))]
        return CyclicFlatPresentation.from_masks(self.ground, found)

    # -- minors ------------------------------------------------------------

    def _relabel_rank(self, keep: int):
        idx = list(bits(keep))

        def lift(y: int) -> int:
            out = 0
            for j, i in enumerate(idx):
                if y >> j & 1:
                    out |= 1 << i
            return out

        return idx, lift

    def restriction(self, x) -> Matroid:
        keep = self._mask(x)
        idx, lift = self._relabel_rank(keep)
        ground = GroundSet(self.ground.labels[i] for i in idx)
        return Matroid.from_rank_function(ground, lambda y: self.rank_mask(lift(y)))

    def deletion(self, x) -> Matroid:
        return self.restriction(self.elements(self._full & ~self._mask(x)))

    def contraction(self, x) -> Matroid:
        cmask = self._mask(x)
        keep = self._full & ~cmask
        idx, lift = self._relabel_rank(keep)
        ground = GroundSet(self.ground.labels[i] for i in idx)
        base = self.rank_mask(cmask)
        return Matroid.from_rank_function(ground, lambda y: self.rank_mask(lift(y) | cmask) - base)


# Module-level spellings of the matroid queries.

def rank_of(m: Matroid, x) -> int:
    return m.rank_of(x)


def closure(m: Matroid, x) -> ElementSet:
    return m.closure(x)


def is_independent(m: Matroid, x) -> bool:
    return m.is_independent(x)


def is_cyclic(m: Matroid, x) -> bool:
    return m.is_cyclic(x)


def circuits(m: Matroid) -> list[ElementSet]:
    return m.circuits()


def flats_of_rank(m: Matroid, k: int) -> list[ElementSet]:
    return m.flats(k)


def hyperplanes(m: Matroid) -> list[ElementSet]:
    return m.hyperplanes()


def lines(m: Matroid) -> list[ElementSet]:
    return m.lines()


def planes(m: Matroid) -> list[ElementSet]:
    return m.planes()


def cyclic_flats_from_oracle(m: Matroid) -> CyclicFlatPresentation:
    return m.cyclic_flats()


def restriction(m: Matroid, x) -> Matroid:
    return m.restriction(x)


def contraction(m: Matroid, x) -> Matroid:
    return m.contraction(x)


def deletion(m: Matroid, x) -> Matroid:
    return m.deletion(x)


def uniform(r: int, n: int, labels: Sequence[str] | None = None) -> Matroid:
    """U_{r,n}, labelled "1".."n" unless labels are given."""
    if not 0 <= r <= n:
        raise UsageError(f"U_{{{r},{n}}} needs 0 <= r <= n")
    ground = GroundSet(labels if labels is not None else [str(i + 1) for i in range(n)])
    if len(ground) != n:
        raise UsageError("label count does not match n")
    flats = [(0, 0)]
    if 0 < r < n:
        flats.append((ground.full_mask, r))
    elif r == 0 and n > 0:
        flats = [(ground.full_mask, 0)]
    return Matroid(CyclicFlatPresentation.from_masks(ground, flats))


def free_matroid(labels: Sequence[str]) -> Matroid:
    labels = list(labels)
    return uniform(len(labels), len(labels), labels)
