"""Target-manifold descriptors and the derived properties the rules consume.

A descriptor records only what the rules look at: dimension, cardinality of
the fundamental group, orientability, compactness, the Euler characteristic,
and a few structural flags.  Named families populate every core field; user
``generic`` descriptors may leave fields unknown and the rules then abstain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from .trilogic import Tri

__all__ = [
    "ManifoldDescriptor",
    "DescriptorError",
    "sphere",
    "real_projective",
    "grassmann",
    "oriented_grassmann",
    "stiefel",
    "product",
    "surface",
    "generic",
    "euler_char_grassmann",
    "w1_not_injective",
    "punctured_inclusion_onto",
]

INF = math.inf


class DescriptorError(ValueError):
    """Out-of-range construction parameters or contradictory generic data."""


@dataclass(frozen=True)
class ManifoldDescriptor:
    kind: str
    dim: int
    label: str
    pi1_order: int | float | None  # None = unknown, math.inf = infinite
    orientable: Tri
    closed: Tri
    compact: Tri
    euler_char: int | None
    fibration_with_section: Tri = Tri.UNKNOWN
    free_finite_action: Tri = Tri.UNKNOWN
    punctured_onto: tuple[tuple[int, bool], ...] = ()
    params: tuple[int, ...] = ()
    factors: tuple["ManifoldDescriptor", ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise DescriptorError(f"dimension {self.dim} < 1")
        if self.pi1_order is not None and self.pi1_order != INF:
            if int(self.pi1_order) < 1:
                raise DescriptorError(f"pi1 cardinality {self.pi1_order} < 1")
        if self.orientable is Tri.NO and self.pi1_order == 1:
            raise DescriptorError("a simply connected manifold is orientable")
        if self.euler_char not in (None, 0):
            if self.closed is Tri.NO or self.compact is Tri.NO:
                raise DescriptorError(
                    "nonzero Euler characteristic is only used for closed targets"
                )

    @property
    def pi1_known_finite(self) -> bool:
        return self.pi1_order is not None and self.pi1_order != INF

    def punctured_flag(self, m: int) -> Tri:
        for mm, value in self.punctured_onto:
            if mm == m:
                return Tri.of(value)
        return Tri.UNKNOWN

    def __str__(self) -> str:
        return self.label


def _closed(**kwargs) -> dict:
    kwargs.setdefault("closed", Tri.YES)
    kwargs.setdefault("compact", Tri.YES)
    return kwargs


def sphere(n: int) -> ManifoldDescriptor:
    """S^n.  n = 1 is allowed only as a product factor."""
    if n < 1:
        raise DescriptorError("sphere needs n >= 1")
    return ManifoldDescriptor(
        kind="sphere",
        dim=n,
        label=f"S^{n}",
        pi1_order=1 if n >= 2 else INF,
        orientable=Tri.YES,
        euler_char=1 + (-1) ** n,
        fibration_with_section=Tri.NO if n >= 2 else Tri.UNKNOWN,
        free_finite_action=Tri.YES,  # antipodal involution
        params=(n,),
        **_closed(),
    )


def real_projective(n: int) -> ManifoldDescriptor:
    if n < 2:
        raise DescriptorError("real projective space needs n >= 2")
    return ManifoldDescriptor(
        kind="real_projective",
        dim=n,
        label=f"RP({n})",
        pi1_order=2,
        orientable=Tri.of(n % 2 == 1),
        euler_char=1 if n % 2 == 0 else 0,
        fibration_with_section=Tri.NO,
        params=(n,),
        **_closed(),
    )


def euler_char_grassmann(r: int, k: int) -> int:
    """Euler characteristic of the Grassmannian of k-planes in R^r."""
    if not 0 < k < r:
        raise DescriptorError("grassmannian needs 0 < k < r")
    if r % 2 == 0 and k % 2 == 1:
        return 0
    return comb(r // 2, k // 2)


def grassmann(r: int, k: int) -> ManifoldDescriptor:
    if not 0 < k < r:
        raise DescriptorError("grassmannian needs 0 < k < r")
    dim = k * (r - k)
    return ManifoldDescriptor(
        kind="grassmann",
        dim=dim,
        label=f"G({r},{k})",
        pi1_order=2 if r > 2 else INF,
        orientable=Tri.of(r % 2 == 0),
        euler_char=euler_char_grassmann(r, k),
        fibration_with_section=Tri.UNKNOWN,
        params=(r, k),
        **_closed(),
    )


def oriented_grassmann(r: int, k: int) -> ManifoldDescriptor:
    """Double cover of the Grassmannian; simply connected for r > 2."""
    if not 0 < k < r:
        raise DescriptorError("grassmannian needs 0 < k < r")
    dim = k * (r - k)
    return ManifoldDescriptor(
        kind="oriented_grassmann",
        dim=dim,
        label=f"G~({r},{k})",
        pi1_order=1 if r > 2 else INF,
        orientable=Tri.YES,
        euler_char=2 * euler_char_grassmann(r, k),  # covering multiplicativity
        fibration_with_section=Tri.UNKNOWN,
        params=(r, k),
        **_closed(),
    )


def stiefel(r: int, k: int) -> ManifoldDescriptor:
    """V_{r,k}, orthonormal k-frames in R^r (V_{n+1,2} is the unit tangent
    bundle of S^n)."""
    if not 0 < k < r:
        raise DescriptorError("stiefel manifold needs 0 < k < r")
    dim = k * r - k * (k + 1) // 2
    if r - k >= 2:
        pi1 = 1
    else:  # V_{r,r-1} = SO(r), r >= 3
        pi1 = 2 if r >= 3 else INF
    if k == 1:
        euler = 1 + (-1) ** (r - 1)
    else:
        euler = 0  # sphere-fibration chain hits consecutive parities
    return ManifoldDescriptor(
        kind="stiefel",
        dim=dim,
        label=f"V({r},{k})",
        pi1_order=pi1,
        orientable=Tri.YES,
        euler_char=euler,
        # complex structure on R^r gives the 2-frame fibration a section
        fibration_with_section=Tri.YES if (k == 2 and r % 2 == 0) else Tri.UNKNOWN,
        params=(r, k),
        **_closed(),
    )


def surface(genus: int, orientable: bool) -> ManifoldDescriptor:
    if genus < 0 or (not orientable and genus < 1):
        raise DescriptorError("surface genus out of range")
    if orientable:
        euler = 2 - 2 * genus
        pi1 = 1 if genus == 0 else INF
        label = f"surface(genus={genus})"
    else:
        euler = 2 - genus
        pi1 = 2 if genus == 1 else INF
        label = f"surface(genus={genus}, nonorientable)"
    return ManifoldDescriptor(
        kind="surface",
        dim=2,
        label=label,
        pi1_order=pi1,
        orientable=Tri.of(orientable),
        euler_char=euler,
        params=(genus,),
        **_closed(),
    )


def _tri_product(values) -> Tri:
    out = Tri.YES
    for v in values:
        if v is Tri.NO:
            return Tri.NO
        if v is Tri.UNKNOWN:
            out = Tri.UNKNOWN
    return out


def product(factors) -> ManifoldDescriptor:
    factors = tuple(factors)
    if len(factors) < 2:
        raise DescriptorError("a product needs at least two factors")
    if any(f.dim < 1 for f in factors):
        raise DescriptorError("product factors need dimension >= 1")
    euler: int | None = 1
    for f in factors:
        euler = None if (euler is None or f.euler_char is None) else euler * f.euler_char
    pi1: int | float | None = 1
    for f in factors:
        if f.pi1_order is None:
            pi1 = None
            break
        pi1 = pi1 * f.pi1_order if pi1 != INF else INF
    positive_dim = sum(1 for f in factors if f.dim >= 1)
    return ManifoldDescriptor(
        kind="product",
        dim=sum(f.dim for f in factors),
        label=" x ".join(f.label for f in factors),
        pi1_order=pi1,
        orientable=_tri_product(f.orientable for f in factors),
        closed=_tri_product(f.closed for f in factors),
        compact=_tri_product(f.compact for f in factors),
        euler_char=euler,
        fibration_with_section=Tri.of(positive_dim >= 2),
        factors=factors,
    )


def generic(
    dim: int,
    pi1: int | float | None = None,
    orientable: bool | None = None,
    closed: bool | None = None,
    compact: bool | None = None,
    euler: int | None = None,
    fibration_with_section: bool | None = None,
    free_finite_action: bool | None = None,
    punctured_onto: dict[int, bool] | None = None,
    label: str | None = None,
) -> ManifoldDescriptor:
    """User-supplied target; omitted fields stay unknown."""
    closed_t = Tri.of(closed)
    compact_t = Tri.of(compact)
    orientable_t = Tri.of(orientable)
    if closed_t is Tri.YES and compact_t is Tri.UNKNOWN:
        compact_t = Tri.YES
    if euler not in (None, 0):
        if closed_t is Tri.NO or compact_t is Tri.NO:
            raise DescriptorError(
                "nonzero Euler characteristic contradicts a noncompact target"
            )
        closed_t = compact_t = Tri.YES
    if euler is None and dim % 2 == 1 and closed_t is Tri.YES:
        euler = 0  # odd-dimensional closed manifolds
    if pi1 == 1 and orientable_t is Tri.UNKNOWN:
        orientable_t = Tri.YES
    return ManifoldDescriptor(
        kind="generic",
        dim=dim,
        label=label or f"generic(dim={dim})",
        pi1_order=pi1,
        orientable=orientable_t,
        closed=closed_t,
        compact=compact_t,
        euler_char=euler,
        fibration_with_section=Tri.of(fibration_with_section),
        free_finite_action=Tri.of(free_finite_action),
        punctured_onto=tuple(sorted((punctured_onto or {}).items())),
    )


def w1_not_injective(desc: ManifoldDescriptor) -> Tri:
    """Whether the orientation character pi_1(N) -> Z/2 has nontrivial kernel.

    Yes as soon as pi_1 has more than two elements, or has at least two and N
    is orientable (the character is then zero on all of them).
    """
    k = desc.pi1_order
    if k is not None and k > 2:
        return Tri.YES
    if k is not None and k >= 2 and desc.orientable is Tri.YES:
        return Tri.YES
    if k == 1:
        return Tri.NO
    if k == 2 and desc.orientable is Tri.NO:
        return Tri.NO
    return Tri.UNKNOWN


def punctured_inclusion_onto(desc: ManifoldDescriptor, m: int) -> Tri:
    """Whether pi_m of the once-punctured target surjects onto pi_m(N)."""
    if m < 1:
        raise DescriptorError("punctured_inclusion_onto needs m >= 1")
    if m < desc.dim:
        return Tri.YES  # transversality to the removed point
    if desc.compact is Tri.NO:
        return Tri.YES
    if desc.pi1_order == INF:
        return Tri.YES
    if desc.fibration_with_section is Tri.YES:
        return Tri.YES
    if desc.kind == "grassmann":
        r, k = desc.params
        if k == 2 and r > 2 and r % 2 == 0:
            # 2-planes through a fixed vector and complex lines miss a point
            return Tri.YES
    return desc.punctured_flag(m)
