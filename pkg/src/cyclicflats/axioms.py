"""Validation of cyclic-flat presentations and lattice operations on them.

A family of sets Z with ranks r is the lattice of cyclic flats of a matroid
iff

  Z0  Z is a lattice under inclusion,
  Z1  the least member has rank 0,
  Z2  0 < r(Y) - r(X) < |Y - X| whenever X < Y in Z,
  Z3  r(X) + r(Y) >= r(X v Y) + r(X ^ Y) + |(X & Y) - (X ^ Y)| for
      incomparable X, Y in Z.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import CyclicFlatPresentation, ElementSet, UsageError

AXIOMS = ("Duplicate", "Z0", "Z1", "Z2", "Z3")


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witness: tuple[ElementSet, ...]
    detail: str

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "witness": [s.labels() for s in self.witness],
            "detail": self.detail,
        }


def _upper_bounds(sets, x):
    return [z for z in sets if z & x == x]


def _least(candidates):
    """The unique inclusion-least member of ``candidates``, or None."""
    if not candidates:
        return None
    best = min(candidates, key=int.bit_count)
    return best if all(best & c == best for c in candidates) else None


def _greatest(candidates):
    if not candidates:
        return None
    best = max(candidates, key=int.bit_count)
    return best if all(c & best == c for c in candidates) else None


def _join(sets, x, y):
    return _least(_upper_bounds(sets, x | y))


def _meet(sets, x, y):
    inter = x & y
    return _greatest([z for z in sets if z & inter == z])


def check_z_axioms(p: CyclicFlatPresentation) -> list[AxiomViolation]:
    """Every violation of the axioms by ``p``; an empty list means valid.

    Violations come out grouped by axiom and, within an axiom, in canonical
    order of their witnesses.
    """
    g = p.ground
    es = lambda m: ElementSet(g, m)  # noqa: E731
    out: list[AxiomViolation] = []

    ranks: dict[int, int] = {}
    for s, r in p.flats:
        if r < 0:
            raise UsageError(f"negative rank {r} for {s!r}")
        if s.mask in ranks:
            out.append(AxiomViolation("Duplicate", (s,), f"{s!r} is listed more than once"))
        else:
            ranks[s.mask] = r
    sets = sorted(ranks)

    if not sets:
        out.append(AxiomViolation("Z0", (), "the family is empty, so it has no least member"))
        return out

    # Z0: a finite family is a lattice iff every pair has a join and a meet.
    bottom = _least(sets)
    if bottom is None:
        minimal = [z for z in sets if not any(w != z and w & z == w for w in sets)]
        out.append(AxiomViolation(
            "Z0", tuple(es(z) for z in minimal),
            f"no least member: minimal members are {[es(z) for z in minimal]}"))
    lattice_ok = bottom is not None
    for i, x in enumerate(sets):
        for y in sets[i + 1:]:
            if x & y in (x, y):
                continue
            ups = _upper_bounds(sets, x | y)
            if _least(ups) is None:
                lattice_ok = False
                if ups:
                    msg = f"{es(x)!r} and {es(y)!r} have no least upper bound (minimal upper bounds {_minimal(ups, es)})"
                else:
                    msg = f"{es(x)!r} and {es(y)!r} have no upper bound"
                out.append(AxiomViolation("Z0", (es(x), es(y)), msg))
            elif bottom is not None and _meet(sets, x, y) is None:
                lattice_ok = False
                out.append(AxiomViolation(
                    "Z0", (es(x), es(y)), f"{es(x)!r} and {es(y)!r} have no greatest lower bound"))

    if bottom is not None and ranks[bottom] != 0:
        out.append(AxiomViolation(
            "Z1", (es(bottom),), f"least member {es(bottom)!r} has rank {ranks[bottom]}, expected 0"))

    for x in sets:
        for y in sets:
            if x == y or x & y != x:
                continue
            d = ranks[y] - ranks[x]
            size = (y & ~x).bit_count()
            if not 0 < d < size:
                out.append(AxiomViolation(
                    "Z2", (es(x), es(y)),
                    f"X={es(x)!r} < Y={es(y)!r}: r(Y)-r(X) = {ranks[y]}-{ranks[x]} = {d},"
                    f" need 0 < {d} < |Y-X| = {size}"))

    if lattice_ok:
        for i, x in enumerate(sets):
            for y in sets[i + 1:]:
                if x & y in (x, y):
                    continue
                j = _join(sets, x, y)
                m = _meet(sets, x, y)
                lhs = ranks[x] + ranks[y]
                extra = (x & y & ~m).bit_count()
                rhs = ranks[j] + ranks[m] + extra
                if lhs < rhs:
                    out.append(AxiomViolation(
                        "Z3", (es(x), es(y)),
                        f"X={es(x)!r}, Y={es(y)!r}: r(X)+r(Y) = {lhs} < r(X v Y)+r(X ^ Y)+|(X&Y)-(X ^ Y)|"
                        f" = {ranks[j]}+{ranks[m]}+{extra} = {rhs}"))
    return out


def _minimal(sets, es):
    return [es(z) for z in sets if not any(w != z and w & z == w for w in sets)]


def is_valid(p: CyclicFlatPresentation) -> bool:
    return not check_z_axioms(p)


def _members(p: CyclicFlatPresentation, *xs: ElementSet) -> list[int]:
    ranks = p.rank_map()
    out = []
    for x in xs:
        if x.universe != p.ground:
            raise UsageError("element set is over a different ground set")
        if x.mask not in ranks:
            raise UsageError(f"{x!r} is not a member of the presentation")
        out.append(x.mask)
    return out


def lattice_join(p: CyclicFlatPresentation, x: ElementSet, y: ElementSet) -> ElementSet:
    """Least member of the presentation containing both ``x`` and ``y``."""
    a, b = _members(p, x, y)
    j = _join(sorted(p.rank_map()), a, b)
    if j is None:
        raise UsageError(f"{x!r} and {y!r} have no join; the family is not a lattice")
    return ElementSet(p.ground, j)


def lattice_meet(p: CyclicFlatPresentation, x: ElementSet, y: ElementSet) -> ElementSet:
    """Greatest member of the presentation contained in ``x & y``."""
    a, b = _members(p, x, y)
    m = _meet(sorted(p.rank_map()), a, b)
    if m is None:
        raise UsageError(f"{x!r} and {y!r} have no meet; the family is not a lattice")
    return ElementSet(p.ground, m)
