"""Column matroids of exact matrices over Q or GF(p)."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .kernel import GroundSet, Matroid, UsageError, bits


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


def parse_field(tag: str) -> int:
    """0 for "Q", p for "GF(p)"."""
    tag = tag.strip()
    if tag in ("Q", "QQ"):
        return 0
    match = re.fullmatch(r"GF\((\d+)\)", tag)
    if not match:
        raise UsageError(f"unknown field {tag!r}; use 'Q' or 'GF(p)'")
    p = int(match.group(1))
    if not _is_prime(p):
        raise UsageError(f"GF({p}): {p} is not prime")
    return p


def field_tag(p: int) -> str:
    return "Q" if p == 0 else f"GF({p})"


@dataclass(frozen=True)
class ExactMatrix:
    """Columns of exact scalars: Fractions over Q (p == 0) or residues mod p."""

    columns: tuple[tuple, ...]
    labels: tuple[str, ...]
    p: int = 0
    groups: Mapping[str, tuple[str, ...]] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise UsageError(f"{self.p} is not prime")
        if len(self.labels) != len(self.columns):
            raise UsageError("one label per column is required")
        if len(set(self.labels)) != len(self.labels):
            raise UsageError("column labels must be distinct")
        heights = {len(c) for c in self.columns}
        if len(heights) > 1:
            raise UsageError("columns have different lengths")
        cols = tuple(tuple(self._coerce(x) for x in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "labels", tuple(self.labels))
        for name, members in self.groups.items():
            missing = set(members) - set(self.labels)
            if missing:
                raise UsageError(f"group {name!r} names unknown columns {sorted(missing)}")

    def _coerce(self, x):
        if isinstance(x, float):
            raise UsageError("floating-point entries are not allowed")
        if isinstance(x, str):
            x = Fraction(x.strip())
        x = Fraction(x)
        if not self.p:
            return x
        den = x.denominator % self.p
        if den == 0:
            raise UsageError(f"{x} has no value mod {self.p}")
        return x.numerator * pow(den, -1, self.p) % self.p

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], labels: Sequence[str], p: int = 0, groups=None):
        cols = tuple(zip(*rows)) if rows else ()
        return cls(cols, tuple(labels), p, dict(groups or {}))

    @property
    def field(self) -> str:
        return field_tag(self.p)

    @property
    def nrows(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def column(self, label: str) -> tuple:
        return self.columns[self.labels.index(label)]

    def rows(self) -> list[list]:
        return [list(r) for r in zip(*self.columns)]


def rank_of_vectors(vectors: Sequence[Sequence], p: int = 0) -> int:
    """Rank by Gaussian elimination with exact pivots."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank]
        if p:
            inv = pow(pv[col], -1, p)
            for i in range(rank + 1, len(rows)):
                f = rows[i][col]
                if f:
                    f = f * inv % p
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pv)]
        else:
            for i in range(rank + 1, len(rows)):
                f = rows[i][col]
                if f:
                    f = f / pv[col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], pv)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def bareiss_rank(vectors: Sequence[Sequence]) -> int:
    """Fraction-free rank over Q; integer inputs stay integers throughout."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    den = math.lcm(*(Fraction(x).denominator for v in rows for x in v))
    rows = [[int(Fraction(x) * den) for x in v] for v in rows]
    width = len(rows[0])
    rank, prev = 0, 1
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank]
        for i in range(rank + 1, len(rows)):
            rows[i] = [(pv[col] * a - rows[i][col] * b) // prev for a, b in zip(rows[i], pv)]
        prev = pv[col]
        rank += 1
        if rank == len(rows):
            break
    return rank


def column_matroid(a: ExactMatrix) -> Matroid:
    ground = GroundSet(a.labels)
    cols = a.columns
    memo: dict[int, int] = {}

    def rank(x: int) -> int:
        r = memo.get(x)
        if r is None:
            r = memo[x] = rank_of_vectors([cols[i] for i in bits(x)], a.p)
        return r

    return Matroid.from_rank_function(ground, rank)


COUNTEREXAMPLE_GROUPS = {
    "D1": ("d1_1", "d1_2", "d1_3"),
    "D2": ("d2_1", "d2_2", "d2_3"),
    "D3": ("d3_1", "d3_2", "d3_3"),
    "l4": ("l4_1", "l4_2"),
}


def counterexample_matrix() -> ExactMatrix:
    """The 5 x 11 rational matrix with column groups D1, D2, D3 (planes) and l4 (a line)."""
    rows = [
        [0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
        [1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1],
        [2, 3, 4, 0, 0, 0, 1, 1, 1, 1, 1],
        [0, 0, 0, 1, 1, 1, 2, 3, 4, 1, 1],
        [0, 0, 0, 2, 3, 4, 0, 0, 0, 1, 1],
    ]
    labels = [x for g in COUNTEREXAMPLE_GROUPS.values() for x in g]
    return ExactMatrix.from_rows(rows, labels, 0, COUNTEREXAMPLE_GROUPS)


def projective_geometry(r: int, p: int) -> Matroid:
    """PG(r-1, p): one normalised representative of each nonzero vector of GF(p)^r."""
    if r < 1:
        raise UsageError("r must be at least 1")
    if not _is_prime(p):
        raise UsageError(f"{p} is not prime")
    count = (p ** r - 1) // (p - 1)
    if count > 64:
        raise UsageError(f"PG({r - 1},{p}) has {count} points; the limit is 64")
    vecs = []
    for v in product(range(p), repeat=r):
        lead = next((x for x in v if x), 0)
        if lead == 1:
            vecs.append(v)
    labels = ["".join(map(str, v)) for v in vecs]
    return column_matroid(ExactMatrix(tuple(vecs), tuple(labels), p))


def verify_counterexample():
    """Check the flat structure of the rank-5 counterexample matroid.

    Returns a :class:`~cyclicflats.report.Report` with one entry per check.
    """
    from .properties import intersection_property_holds
    from .report import Report

    a = counterexample_matrix()
    m = column_matroid(a)
    g = {name: m.subset(cols) for name, cols in a.groups.items()}
    d1, d2, d3, l4 = g["D1"], g["D2"], g["D3"], g["l4"]
    rep = Report("verify-counterexample")

    def where(pred) -> list[str]:
        return [x for x, col in zip(a.labels, a.columns) if pred(col)]

    rep.add("(1) ranks r(E), r(D1), r(D2), r(D3), r(l4)", [5, 3, 3, 3, 2],
            [m.rank] + [m.rank_of(s) for s in (d1, d2, d3, l4)])

    described = {
        "cl(D1 u l4)": (d1 | l4, where(lambda c: c[3] == c[4])),
        "cl(D2 u l4)": (d2 | l4, where(lambda c: c[1] == c[2])),
        "cl(D3 u l4)": (d3 | l4, where(lambda c: c[1] == c[4])),
        "cl(D1 u D3)": (d1 | d3, where(lambda c: c[4] == 0)),
        "cl(D2 u D3)": (d2 | d3, where(lambda c: c[1] == 0)),
    }
    closures = {}
    for key, item in (("(2)", "cl(D1 u l4)"), ("(3)", "cl(D2 u l4)"), ("(3)", "cl(D3 u l4)"),
                      ("(5)", "cl(D1 u D3)"), ("(5)", "cl(D2 u D3)")):
        union, cols = described[item]
        flat = m.closure(union)
        closures[item] = flat
        rep.add(f"{key} {item} equals the described columns", sorted(cols), sorted(flat.labels()))
        rep.add(f"{key} rank of {item}", 4, m.rank_of(flat))
    rep.add("(4) D1 u D2 spans", 5, m.rank_of(d1 | d2))
    distinct = {f.mask for f in closures.values()}
    rep.add("(6) five distinct hyperplanes", 5, len(distinct))
    ip = intersection_property_holds(m)
    rep.add("(7) intersection property holds", True, ip.holds)
    rep.witnesses["hyperplanes"] = {k: v.labels() for k, v in closures.items()}
    rep.witnesses["non_modular_pairs_checked"] = ip.pairs_checked
    return rep
