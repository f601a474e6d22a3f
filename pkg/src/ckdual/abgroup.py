"""Finitely generated abelian groups with distinguished elements.

Groups are kept in invariant-factor form ``Z^r (+) Z/d1 (+) ... (+) Z/dk`` with
``d1 | d2 | ... | dk`` and every ``di >= 2``; two groups are isomorphic exactly
when these canonical forms agree. Elements always live in canonical
coordinates, so equality of elements is plain tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, inf, prod
from typing import Sequence

from ckdual.intlinalg import IntMatrix, snf

__all__ = [
    "FgAbGroup",
    "GroupElement",
    "PresentedGroup",
    "CoordinateMap",
    "OwnershipError",
    "OracleLimitError",
    "canonicalize",
    "element_order",
    "quotient_by",
    "pointed_iso",
    "aut_orbit_oracle",
    "free_part",
    "torsion_part",
    "rank",
    "is_isomorphic",
    "direct_sum",
    "cyclic",
    "TRIVIAL",
    "Z",
]


class OwnershipError(ValueError):
    """An element was used with a group that does not own it."""


class OracleLimitError(ValueError):
    """The brute-force orbit oracle was asked about an infinite or too-large group."""


@dataclass(frozen=True)
class FgAbGroup:
    free_rank: int = 0
    torsion_factors: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion_factors)
        object.__setattr__(self, "torsion_factors", t)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in t:
            if d < 2:
                raise ValueError(f"torsion factors must be >= 2, got {t}")
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError(f"torsion factors must form a divisibility chain, got {t}")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> float | int:
        return prod(self.torsion_factors) if self.is_finite else inf

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 when torsion-free)."""
        return self.torsion_factors[-1] if self.torsion_factors else 1

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.free_rank, (0,) * len(self.torsion_factors))

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> "GroupElement":
        free = tuple(free) or (0,) * self.free_rank
        torsion = tuple(torsion) or (0,) * len(self.torsion_factors)
        return GroupElement(self, free, torsion)

    def generator(self, i: int) -> "GroupElement":
        """The ``i``-th canonical generator: torsion summands first, then free ones."""
        k = len(self.torsion_factors)
        coords = [0] * (k + self.free_rank)
        coords[i] = 1
        return GroupElement(self, tuple(coords[k:]), tuple(coords[:k]))

    def elements(self):
        """Iterate over all elements of a finite group."""
        if not self.is_finite:
            raise OracleLimitError("cannot enumerate an infinite group")
        from itertools import product

        for t in product(*(range(d) for d in self.torsion_factors)):
            yield GroupElement(self, (), t)

    def presentation(self) -> "PresentedGroup":
        """Diagonal presentation; canonicalizing it returns ``self``."""
        diag = list(self.torsion_factors) + [0] * self.free_rank or [1]
        n = len(diag)
        rel = IntMatrix.from_rows([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
        return PresentedGroup(n, rel)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion_factors)
        return " (+) ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion_factors)}

    @classmethod
    def from_dict(cls, data: dict) -> "FgAbGroup":
        return cls(int(data.get("rank", 0)), tuple(int(d) for d in data.get("torsion", [])))


TRIVIAL = FgAbGroup()
Z = FgAbGroup(1)


def cyclic(n: int) -> FgAbGroup:
    """``Z/n``; ``n = 0`` gives ``Z`` and ``n = 1`` the trivial group."""
    if n == 0:
        return Z
    if n == 1:
        return TRIVIAL
    return FgAbGroup(0, (abs(n),))


@dataclass(frozen=True)
class GroupElement:
    owner: FgAbGroup
    free_coords: tuple[int, ...]
    torsion_coords: tuple[int, ...]

    def __post_init__(self):
        free = tuple(int(x) for x in self.free_coords)
        tors = tuple(int(x) for x in self.torsion_coords)
        if len(free) != self.owner.free_rank or len(tors) != len(self.owner.torsion_factors):
            raise ValueError("coordinate lengths do not match the owning group")
        tors = tuple(x % d for x, d in zip(tors, self.owner.torsion_factors))
        object.__setattr__(self, "free_coords", free)
        object.__setattr__(self, "torsion_coords", tors)

    def _check(self, other: "GroupElement"):
        if other.owner != self.owner:
            raise OwnershipError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.owner,
            tuple(a + b for a, b in zip(self.free_coords, other.free_coords)),
            tuple(a + b for a, b in zip(self.torsion_coords, other.torsion_coords)),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.owner, tuple(-a for a in self.free_coords), tuple(-a for a in self.torsion_coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupElement":
        return GroupElement(
            self.owner, tuple(k * a for a in self.free_coords), tuple(k * a for a in self.torsion_coords)
        )

    @property
    def is_zero(self) -> bool:
        return not any(self.free_coords) and not any(self.torsion_coords)

    def lift(self) -> tuple[int, ...]:
        """Coordinates in the canonical presentation ``Z^(k+r)`` (torsion first)."""
        return self.torsion_coords + self.free_coords

    def __str__(self) -> str:
        return f"({', '.join(map(str, self.lift()))})" if self.lift() else "0"

    def to_dict(self) -> dict:
        return {"free": list(self.free_coords), "torsion": list(self.torsion_coords)}


@dataclass(frozen=True)
class CoordinateMap:
    """Homomorphism ``Z^n -> G`` induced by a presentation ``Z^n / R``.

    ``U`` is the left transform of the Smith form of ``R``; row ``i`` of
    ``U x`` is the coordinate along the ``i``-th diagonal summand.
    """

    group: FgAbGroup
    U: IntMatrix
    torsion_rows: tuple[int, ...]
    free_rows: tuple[int, ...]

    def __call__(self, vector: Sequence[int]) -> GroupElement:
        y = self.U.apply(tuple(vector))
        return GroupElement(self.group, tuple(y[i] for i in self.free_rows), tuple(y[i] for i in self.torsion_rows))


@dataclass(frozen=True)
class PresentedGroup:
    """``Z^ambient_rank / (column span of relations)``."""

    ambient_rank: int
    relations: IntMatrix
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.relations.rows != self.ambient_rank:
            raise ValueError("relation matrix must have ambient_rank rows")

    def canonicalize(self) -> tuple[FgAbGroup, CoordinateMap]:
        if "canon" not in self._cache:
            self._cache["canon"] = canonicalize(self)
        return self._cache["canon"]

    @property
    def group(self) -> FgAbGroup:
        return self.canonicalize()[0]

    def element(self, vector: Sequence[int]) -> GroupElement:
        return self.canonicalize()[1](vector)


def canonicalize(P: PresentedGroup) -> tuple[FgAbGroup, CoordinateMap]:
    """Canonical form of a presented group and the coordinate map onto it."""
    res = snf(P.relations)
    n = P.ambient_rank
    diag = list(res.factors) + [0] * (n - len(res.factors))
    diag = diag[:n]
    torsion_rows = tuple(i for i, d in enumerate(diag) if d >= 2)
    free_rows = tuple(i for i, d in enumerate(diag) if d == 0)
    G = FgAbGroup(len(free_rows), tuple(diag[i] for i in torsion_rows))
    return G, CoordinateMap(G, res.U, torsion_rows, free_rows)


def element_order(g: GroupElement) -> float | int:
    """Least ``k > 0`` with ``k g = 0``; ``math.inf`` for non-torsion elements."""
    if any(g.free_coords):
        return inf
    order = 1
    for c, d in zip(g.torsion_coords, g.owner.torsion_factors):
        o = d // gcd(c, d)
        order = order * o // gcd(order, o)
    return order


def quotient_by(g: GroupElement) -> FgAbGroup:
    """Canonical form of ``owner / <g>``."""
    G = g.owner
    base = G.presentation()
    n = base.ambient_rank
    lifted = list(g.lift()) + [0] * (n - len(g.lift()))
    cols = [base.relations.column(j) for j in range(base.relations.cols)] + [tuple(lifted)]
    return PresentedGroup(n, IntMatrix.from_columns(n, cols)).group


def free_part(G: FgAbGroup) -> FgAbGroup:
    return FgAbGroup(G.free_rank)


def torsion_part(G: FgAbGroup) -> FgAbGroup:
    return FgAbGroup(0, G.torsion_factors)


def rank(G: FgAbGroup) -> int:
    return G.free_rank


def is_isomorphic(G: FgAbGroup, H: FgAbGroup) -> bool:
    return G == H


def direct_sum(*groups: FgAbGroup) -> FgAbGroup:
    """Direct sum, re-canonicalized (so ``Z/2 (+) Z/3`` becomes ``Z/6``)."""
    diag = [d for G in groups for d in G.torsion_factors] + [0] * sum(G.free_rank for G in groups)
    if not diag:
        return TRIVIAL
    n = len(diag)
    rel = IntMatrix.from_rows([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    return PresentedGroup(n, rel).group


def pointed_iso(G: FgAbGroup, g: GroupElement, H: FgAbGroup, h: GroupElement) -> bool:
    """Decide ``(G, g) ~ (H, h)`` from groups, quotients and element orders.

    Any automorphism may be composed in, in particular ``x -> -x``, so a
    pointed class and its negative are never distinguished.
    """
    if g.owner != G or h.owner != H:
        raise OwnershipError("pointed element is not owned by the given group")
    return G == H and element_order(g) == element_order(h) and quotient_by(g) == quotient_by(h)


def aut_orbit_oracle(G: FgAbGroup, g: GroupElement, h: GroupElement, max_order: int = 256) -> bool:
    """Exhaustively search for an automorphism of a finite ``G`` taking ``g`` to ``h``.

    A homomorphism is fixed by the images ``x_j`` of the cyclic generators,
    subject to ``d_j x_j = 0``; it is bijective iff each new image has order
    ``d_j`` and meets the subgroup spanned by the earlier images trivially.
    Generators in the support of ``g`` are assigned first. Whether a partial
    assignment can be completed depends only on how far it got, the subgroup
    spanned so far and the partial image of ``g``, so the search is memoized
    on that triple; every homomorphism is still covered.
    """
    if g.owner != G or h.owner != G:
        raise OwnershipError("elements are not owned by the given group")
    if not G.is_finite:
        raise OracleLimitError("orbit oracle needs a finite group")
    if G.order > max_order:
        raise OracleLimitError(f"group order {G.order} exceeds oracle limit {max_order}")
    d = G.torsion_factors
    k = len(d)
    if k == 0:
        return True
    elems = [e.torsion_coords for e in G.elements()]
    index = {x: i for i, x in enumerate(elems)}
    add = [[index[tuple((a + b) % m for a, b, m in zip(x, y, d))] for y in elems] for x in elems]
    zero = index[(0,) * k]

    def multiples(i, n):
        out, cur = [], zero
        for _ in range(n):
            out.append(cur)
            cur = add[cur][i]
        return out

    cands = {}
    for m in set(d):
        cands[m] = []
        for i in range(len(elems)):
            mult = multiples(i, m + 1)
            # full order m: m*x = 0 and c*x != 0 for 0 < c < m
            if mult[m] == zero and zero not in mult[1:m]:
                cands[m].append((i, mult[:m]))
    support = [j for j in range(k) if g.torsion_coords[j]]
    order = support + [j for j in range(k) if not g.torsion_coords[j]]
    target = index[h.torsion_coords]
    memo: dict = {}

    def search(pos, span, acc):
        key = (pos, span, acc)
        if key in memo:
            return memo[key]
        if pos == len(support) and acc != target:
            result = False
        elif pos == k:
            result = True
        else:
            j = order[pos]
            members = [i for i in range(len(elems)) if span >> i & 1]
            result = False
            for _, mult in cands[d[j]]:
                if any(span >> m & 1 for m in mult[1:]):
                    continue
                new_span = 0
                for s in members:
                    row = add[s]
                    for m in mult:
                        new_span |= 1 << row[m]
                new_acc = acc
                if pos < len(support):
                    new_acc = add[acc][mult[g.torsion_coords[j] % d[j]]]
                if search(pos + 1, new_span, new_acc):
                    result = True
                    break
        memo[key] = result
        return result

    return search(0, 1 << zero, zero)


def _order_of(x, d) -> int:
    order = 1
    for c, m in zip(x, d):
        o = m // gcd(c, m)
        order = order * o // gcd(order, o)
    return order
