"""Exact arithmetic for finitely generated abelian groups.

Groups are kept in invariant-factor form: a free rank plus a divisibility
chain of torsion orders (each dividing the next).  The form is unique, so
group equality is a plain field comparison and normalization is idempotent.

Elements are integer coordinate vectors over the chosen generators, with
torsion coordinates always stored reduced into ``[0, d_i)``.  Homomorphisms
are integer matrices on those generators, checked for well-definedness at
construction time.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

__all__ = [
    "FgAbelianGroup",
    "GroupElement",
    "GroupHom",
    "GroupError",
    "TRIVIAL",
    "Z",
    "parse_group",
]

from .trilogic import Tri


class GroupError(ValueError):
    """Structurally invalid group, element, or homomorphism."""


def _factorint(n: int) -> dict[int, int]:
    """Prime factorization by trial division (orders here are tiny)."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _invariant_factors(orders) -> tuple[int, tuple[int, ...]]:
    """Turn a list of cyclic orders (0 = infinite cyclic) into (rank, chain).

    The chain is ascending and each entry divides the next, e.g.
    [4, 6] -> [2, 12] and [2, 3] -> [6].
    """
    rank = 0
    by_prime: dict[int, list[int]] = {}
    for d in orders:
        d = abs(int(d))
        if d == 0:
            rank += 1
            continue
        if d == 1:
            continue
        for p, e in _factorint(d).items():
            by_prime.setdefault(p, []).append(e)
    if not by_prime:
        return rank, ()
    width = max(len(es) for es in by_prime.values())
    chain = []
    for j in range(width):
        d = 1
        for p, es in by_prime.items():
            es_sorted = sorted(es, reverse=True)
            if j < len(es_sorted):
                d *= p ** es_sorted[j]
        chain.append(d)
    # built largest-first; the stored chain ascends
    return rank, tuple(reversed(chain))


@dataclass(frozen=True)
class FgAbelianGroup:
    """A finitely generated abelian group Z^rank + Z/d1 + ... in invariant factors."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise GroupError(f"negative free rank {self.rank}")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        for d in self.torsion:
            if d < 2:
                raise GroupError(f"torsion order {d} < 2 (drop trivial factors)")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise GroupError(f"torsion chain {self.torsion} violates divisibility")

    @classmethod
    def from_cyclic_orders(cls, *orders: int) -> "FgAbelianGroup":
        """Build from arbitrary cyclic factors, normalizing (0 = Z)."""
        rank, chain = _invariant_factors(orders)
        return cls(rank, chain)

    @property
    def dimension(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int | float:
        if self.rank > 0:
            return math.inf
        return math.prod(self.torsion) if self.torsion else 1

    def exponent(self) -> int | float:
        """Least n >= 1 killing every element (inf when there is free rank)."""
        if self.rank > 0:
            return math.inf
        return self.torsion[-1] if self.torsion else 1

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.dimension)

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def generator(self, index: int) -> "GroupElement":
        coords = [0] * self.dimension
        coords[index] = 1
        return GroupElement(self, tuple(coords))

    def elements(self):
        """Iterate all elements; only legal for finite groups."""
        if self.rank > 0:
            raise GroupError("cannot enumerate a group with free rank")
        for coords in itertools.product(*(range(d) for d in self.torsion)):
            yield GroupElement(self, coords)

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


TRIVIAL = FgAbelianGroup()
Z = FgAbelianGroup(rank=1)

_GROUP_TOKEN = re.compile(r"^(?:Z(?:\^(\d+))?|Z/(\d+)|0)$")


def parse_group(text: str) -> FgAbelianGroup:
    """Parse the literal grammar ``Z^r + Z/d1 + Z/d2 ...`` (``0`` is trivial)."""
    text = text.strip()
    if not text:
        raise GroupError("empty group literal")
    rank = 0
    orders: list[int] = []
    for raw in text.split("+"):
        token = raw.strip()
        match = _GROUP_TOKEN.match(token)
        if not match:
            raise GroupError(f"bad group literal token {token!r}")
        if token == "0":
            continue
        if match.group(2) is not None:
            d = int(match.group(2))
            if d < 2:
                raise GroupError(f"torsion order {d} < 2 in literal {text!r}")
            orders.append(d)
        else:
            rank += int(match.group(1) or 1)
    normalized_rank, chain = _invariant_factors(orders)
    return FgAbelianGroup(rank + normalized_rank, chain)


@dataclass(frozen=True)
class GroupElement:
    """Coordinates over the parent's generators, torsion reduced into [0, d)."""

    parent: FgAbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.parent.dimension:
            raise GroupError(
                f"element of length {len(coords)} in group of shape {self.parent}"
            )
        reduced = list(coords[: self.parent.rank])
        for c, d in zip(coords[self.parent.rank :], self.parent.torsion):
            reduced.append(c % d)
        object.__setattr__(self, "coords", tuple(reduced))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if other.parent != self.parent:
            raise GroupError("cannot add elements of different groups")
        return GroupElement(
            self.parent, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.parent, tuple(-c for c in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, n: int) -> "GroupElement":
        return GroupElement(self.parent, tuple(n * c for c in self.coords))

    def order(self) -> int | float:
        """Least n >= 1 with n*e = 0; inf when a free coordinate is nonzero."""
        if any(c != 0 for c in self.coords[: self.parent.rank]):
            return math.inf
        n = 1
        for c, d in zip(self.coords[self.parent.rank :], self.parent.torsion):
            if c:
                k = d // gcd(c, d)
                n = n * k // gcd(n, k)
        return n

    def __str__(self) -> str:
        return f"({', '.join(str(c) for c in self.coords)}) in {self.parent}"


def order_of_element(e: GroupElement) -> int | float:
    return e.order()


@dataclass(frozen=True)
class GroupHom:
    """Integer matrix on generators; rows indexed by target coordinates."""

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        if len(rows) != self.target.dimension or any(
            len(row) != self.source.dimension for row in rows
        ):
            raise GroupError(
                f"matrix shape {len(rows)}x{len(rows[0]) if rows else 0} does not map "
                f"{self.source} into {self.target}"
            )
        # well-definedness: d_i times the i-th torsion generator must die
        for j, d in enumerate(self.source.torsion):
            col = self.source.rank + j
            image = GroupElement(
                self.target, tuple(d * row[col] for row in rows)
            )
            if not image.is_zero:
                raise GroupError(
                    f"ill-defined hom: order-{d} generator {col} maps to "
                    f"an element not killed by {d}"
                )

    @classmethod
    def zero(cls, source: FgAbelianGroup, target: FgAbelianGroup) -> "GroupHom":
        return cls(
            source,
            target,
            tuple((0,) * source.dimension for _ in range(target.dimension)),
        )

    @classmethod
    def identity(cls, group: FgAbelianGroup) -> "GroupHom":
        n = group.dimension
        return cls(
            group, group, tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        )

    def apply(self, e: GroupElement) -> GroupElement:
        if e.parent != self.source:
            raise GroupError("element does not live in the hom's source")
        return GroupElement(
            self.target,
            tuple(sum(r * c for r, c in zip(row, e.coords)) for row in self.matrix),
        )

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first."""
        if first.target != self.source:
            raise GroupError("composition shape mismatch")
        rows = []
        for row in self.matrix:
            rows.append(
                tuple(
                    sum(row[k] * first.matrix[k][j] for k in range(len(first.matrix)))
                    for j in range(first.source.dimension)
                )
            )
        return GroupHom(first.source, self.target, tuple(rows))

    def _free_columns_independent(self) -> bool:
        """Rational rank of the free-coordinate block of the free columns."""
        r = self.source.rank
        if r == 0:
            return True
        # rows restricted to target free coordinates, columns to source free gens
        mat = [
            [Fraction(self.matrix[i][j]) for j in range(r)]
            for i in range(self.target.rank)
        ]
        rank = 0
        for col in range(r):
            pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
            if pivot is None:
                return False
            mat[rank], mat[pivot] = mat[pivot], mat[rank]
            inv = mat[rank][col]
            for i in range(len(mat)):
                if i != rank and mat[i][col] != 0:
                    factor = mat[i][col] / inv
                    mat[i] = [a - factor * b for a, b in zip(mat[i], mat[rank])]
            rank += 1
        return rank == r

    def is_injective(self) -> Tri:
        """Trivial-kernel test.

        Finite sources are settled by enumeration.  With free rank, a source
        free generator hitting a finite target (or a rational dependency
        between the free columns) yields a nonzero kernel element; otherwise
        injectivity reduces to the torsion subgroup, which is enumerated.
        """
        if self.source.is_finite:
            zero = self.target.zero()
            for e in self.source.elements():
                if not e.is_zero and self.apply(e) == zero:
                    return Tri.NO
            return Tri.YES
        if self.target.is_finite:
            # some nonzero multiple of a free generator must die
            return Tri.NO
        if not self._free_columns_independent():
            # an integer combination of free generators lands in torsion,
            # so a further multiple of it dies
            return Tri.NO
        torsion_source = FgAbelianGroup(0, self.source.torsion)
        rows = tuple(row[self.source.rank :] for row in self.matrix)
        torsion_part = GroupHom(torsion_source, self.target, rows)
        zero = self.target.zero()
        for e in torsion_source.elements():
            if not e.is_zero and torsion_part.apply(e) == zero:
                return Tri.NO
        return Tri.YES


def apply_hom(h: GroupHom, e: GroupElement) -> GroupElement:
    return h.apply(e)


def is_injective(h: GroupHom) -> Tri:
    return h.is_injective()
