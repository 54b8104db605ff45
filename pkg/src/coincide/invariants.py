"""Concrete evaluation of the coincidence obstructions.

Everything here returns a status (zero / nonzero / unknown) together with the
table facts that justify it, so the engine can lay the computation into a
proof trace.  Statuses follow three layers of invariants attached to a pair
of maps S^m -> N:

* the sharp obstruction, equivalent for self pairs to the suspended boundary
  class E(d[f]) in pi_m(S^n);
* its framed-bordism stabilization; and
* the fully collapsed stable value in the stem pi^S_{m-n}.

Only the cases the tables make computable are decided; everything else stays
unknown.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .abelian import Z, GroupElement
from .manifolds import INF, ManifoldDescriptor, punctured_inclusion_onto, w1_not_injective
from .tables import HomotopyTables
from .trilogic import Tri

__all__ = [
    "MapClass",
    "MapClassError",
    "InconsistentDataError",
    "Status",
    "ObstructionValue",
    "ZERO_CLASS",
    "OPAQUE_CLASS",
    "subtract_classes",
    "boundary_status",
    "suspended_boundary_status",
    "sharp_self_status",
    "stable_self_status",
    "stable_pair_status",
    "degree_root_status",
    "collapse_pushforward_trivial",
    "nielsen_root_values",
    "nielsen_number_special",
    "ker_id_plus_inv_trivial",
    "screen_failure_reason",
]


class MapClassError(ValueError):
    """Representation incompatible with the query dimensions."""


class InconsistentDataError(ValueError):
    """User-supplied class data violating an identity between the invariants."""


class Status(enum.Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    UNKNOWN = "unknown"

    @property
    def known(self) -> bool:
        return self is not Status.UNKNOWN


@dataclass(frozen=True)
class MapClass:
    """A homotopy class of maps S^m -> N, as far as the user pins it down.

    rep is one of zero | degree | hopf | boundary | collapse | opaque.
    ``degree`` needs m = n (for spheres the mapping degree, for projective
    targets the degree of a lift), ``hopf`` needs m = 2n - 1, ``boundary``
    and ``collapse`` carry coordinates of d[f] resp. coll_*[f].  An optional
    secondary representation can be attached for cross-checking.
    """

    rep: str = "opaque"
    d: int | None = None
    h: int | None = None
    coords: tuple[int, ...] | None = None
    j_boundary_zero: Tri = Tri.UNKNOWN
    also: "MapClass | None" = None

    def __post_init__(self):
        if self.rep not in ("zero", "degree", "hopf", "boundary", "collapse", "opaque"):
            raise MapClassError(f"unknown representation {self.rep!r}")
        if self.rep == "degree" and self.d is None:
            raise MapClassError("degree representation needs d")
        if self.rep == "hopf" and self.h is None:
            raise MapClassError("hopf representation needs h")
        if self.rep in ("boundary", "collapse") and self.coords is None:
            raise MapClassError(f"{self.rep} representation needs coords")

    def validate_for(self, m: int, n: int):
        if self.rep == "degree" and m != n:
            raise MapClassError("degree classes only describe maps with m = dim N")
        if self.rep == "hopf" and m != 2 * n - 1:
            raise MapClassError("hopf classes only describe maps with m = 2 dim N - 1")
        if self.also is not None:
            self.also.validate_for(m, n)

    @property
    def is_zero(self) -> bool:
        if self.rep == "zero":
            return True
        if self.rep == "degree":
            return self.d == 0
        if self.rep == "hopf":
            return False  # h pins the class only partially
        if self.rep in ("boundary", "collapse"):
            return False  # zero coords only force the named invariant to vanish
        return False

    def describe(self) -> str:
        if self.rep == "degree":
            return f"degree({self.d})"
        if self.rep == "hopf":
            return f"hopf({self.h})"
        if self.rep in ("boundary", "collapse"):
            return f"{self.rep}{list(self.coords)}"
        return self.rep


ZERO_CLASS = MapClass(rep="zero")
OPAQUE_CLASS = MapClass(rep="opaque")


def subtract_classes(f1: MapClass, f2: MapClass) -> MapClass | None:
    """f1 - f2 for matching representations; None when incomparable."""
    if f1.rep == "zero" and f2.rep == "zero":
        return ZERO_CLASS
    if f2.rep == "zero":
        return f1
    if f1.rep == "zero":
        if f2.rep == "degree":
            return MapClass(rep="degree", d=-f2.d)
        if f2.rep == "hopf":
            return MapClass(rep="hopf", h=-f2.h)
        if f2.rep in ("boundary", "collapse"):
            return MapClass(rep=f2.rep, coords=tuple(-c for c in f2.coords))
        return None
    if f1.rep != f2.rep:
        return None
    if f1.rep == "degree":
        return MapClass(rep="degree", d=f1.d - f2.d)
    if f1.rep == "hopf":
        return MapClass(rep="hopf", h=f1.h - f2.h)
    if f1.rep in ("boundary", "collapse"):
        if len(f1.coords) != len(f2.coords):
            return None
        return MapClass(
            rep=f1.rep, coords=tuple(a - b for a, b in zip(f1.coords, f2.coords))
        )
    return None


@dataclass(frozen=True)
class ObstructionValue:
    status: Status
    premises: tuple[str, ...] = ()
    witness: GroupElement | None = None
    carrier: str = ""
    order_info: int | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.witness is not None:
            witness_zero = self.witness.is_zero
            if self.status is Status.ZERO and not witness_zero:
                raise InconsistentDataError("zero status with nonzero witness")
            if self.status is Status.NONZERO and witness_zero:
                raise InconsistentDataError("nonzero status with zero witness")


def _unknown(*premises: str) -> ObstructionValue:
    return ObstructionValue(Status.UNKNOWN, premises=tuple(premises))


def _cite_pi(tables: HomotopyTables, m: int, n: int) -> str:
    group = tables.pi_sphere(m, n)
    src = tables.pi_sphere_citation(m, n)
    return f"pi_{m}(S^{n}) = {group}" + (f" ({src})" if src else "")


def _cite_stem(tables: HomotopyTables, k: int) -> str:
    stem = tables.pi_stable(k)
    return f"pi^S_{k} = {stem} (Toda 1962)" if k >= 0 else f"pi^S_{k} = 0"


# ---------------------------------------------------------------------------
# sharp layer: d[f] and E(d[f])
# ---------------------------------------------------------------------------


def boundary_status(
    tables: HomotopyTables,
    desc: ManifoldDescriptor,
    m: int,
    f: MapClass | None,
) -> ObstructionValue:
    """Status of the boundary class d[f] in pi_{m-1}(S^{n-1}).

    ``f = None`` asks for the universally quantified answer.
    """
    n = desc.dim
    if n % 2 == 1:
        return ObstructionValue(
            Status.ZERO,
            premises=(
                f"dim {desc} = {n} is odd: the unit tangent bundle has a section "
                "over every compactum, so every boundary class vanishes",
            ),
        )
    source = tables.pi_sphere(m - 1, n - 1)
    if source is not None and source.is_trivial:
        return ObstructionValue(
            Status.ZERO, premises=(_cite_pi(tables, m - 1, n - 1),)
        )
    if f is None or f.rep == "opaque":
        return _unknown()
    if f.rep == "zero":
        return ObstructionValue(
            Status.ZERO, premises=("the class of a constant map has zero boundary",)
        )
    if f.rep == "boundary":
        if source is not None:
            if len(f.coords) != source.dimension:
                raise MapClassError(
                    f"boundary coordinates {list(f.coords)} do not match "
                    f"pi_{m - 1}(S^{n - 1}) = {source}"
                )
            element = source.element(f.coords)
            return ObstructionValue(
                Status.ZERO if element.is_zero else Status.NONZERO,
                premises=(
                    _cite_pi(tables, m - 1, n - 1),
                    f"d[f] = {element}",
                ),
                witness=element,
                carrier=f"pi_{m - 1}(S^{n - 1})",
            )
        if all(c == 0 for c in f.coords):
            return ObstructionValue(Status.ZERO, premises=("d[f] given as zero",))
        return _unknown(f"pi_{m - 1}(S^{n - 1}) outside table coverage")
    if f.rep == "degree" and desc.kind in ("sphere", "real_projective") and m == n:
        value = (1 + (-1) ** n) * f.d
        witness = Z.element((value,))
        return ObstructionValue(
            Status.ZERO if value == 0 else Status.NONZERO,
            premises=(
                f"boundary of a degree-{f.d} class = (1 + (-1)^{n}) * {f.d} = {value} "
                f"in pi_{n - 1}(S^{n - 1}) = Z",
            ),
            witness=witness,
            carrier=f"pi_{n - 1}(S^{n - 1})",
        )
    if (
        f.rep == "hopf"
        and (m, n) == (11, 6)
        and desc.kind in ("sphere", "real_projective")
    ):
        # half the Hopf invariant identifies pi_11(S^6) with Z and the exact
        # sequence of the unit tangent bundle (pi_10(V_{7,2}) = 0) makes the
        # boundary map onto Z/2; the class with lifted Hopf invariant h has
        # boundary h/2 mod 2, nonzero exactly when h is not divisible by 4.
        premises = (
            _cite_pi(tables, 11, 6),
            _cite_pi(tables, 10, 5),
            f"pi_10(V(7,2)) = {tables.pi_stiefel(10, 7, 2)} (Paechter 1956): "
            "the boundary map out of pi_11(S^6) is onto",
            f"lifted Hopf invariant {f.h}: boundary vanishes iff 4 divides {f.h}",
        )
        zero = f.h % 4 == 0
        return ObstructionValue(
            Status.ZERO if zero else Status.NONZERO, premises=premises
        )
    return _unknown()


def suspended_boundary_status(
    tables: HomotopyTables,
    desc: ManifoldDescriptor,
    m: int,
    f: MapClass | None,
) -> ObstructionValue:
    """Status of E(d[f]) in pi_m(S^n); for self pairs this is the sharp
    obstruction up to sign."""
    n = desc.dim
    bstat = boundary_status(tables, desc, m, f)
    if (
        desc.kind in ("sphere", "real_projective")
        and m == n
        and f is not None
        and f.rep == "degree"
    ):
        # the suspension is a degree iso here, so the value itself is exact
        value = (1 + (-1) ** n) * f.d
        return ObstructionValue(
            Status.ZERO if value == 0 else Status.NONZERO,
            premises=bstat.premises
            + (f"suspended boundary class = {value} in pi_{n}(S^{n}) = Z",),
            witness=Z.element((value,)),
            carrier=f"pi_{n}(S^{n})",
        )
    if bstat.status is Status.ZERO:
        return ObstructionValue(
            Status.ZERO,
            premises=bstat.premises + ("suspension of a zero boundary is zero",),
        )
    if tables.suspension_E_trivial(m, n) is Tri.YES:
        premises = [
            _cite_pi(tables, m - 1, n - 1),
            _cite_pi(tables, m, n),
            f"the suspension pi_{m - 1}(S^{n - 1}) -> pi_{m}(S^{n}) is the zero map",
        ]
        return ObstructionValue(Status.ZERO, premises=tuple(premises))
    if bstat.status is Status.UNKNOWN:
        return ObstructionValue(Status.UNKNOWN, premises=bstat.premises)
    einj = tables.suspension_E_injective(m, n)
    if einj is Tri.YES:
        return ObstructionValue(
            Status.NONZERO,
            premises=bstat.premises
            + (f"the suspension into pi_{m}(S^{n}) is injective",),
        )
    return ObstructionValue(Status.UNKNOWN, premises=bstat.premises)


def screen_failure_reason(
    tables: HomotopyTables, desc: ManifoldDescriptor, m: int
) -> str | None:
    """Necessary conditions for a nonvanishing sharp self obstruction when
    pi_1(N) != 0; returns the first failing one, or None."""
    k = desc.pi1_order
    if k is None or k < 2:
        return None
    n = desc.dim
    shape_ok = (n % 2 == 0 and m >= n >= 4) or (
        m == 2 and n == 2 and desc.euler_char == 1
    )
    if not shape_ok:
        return (
            f"(m, n) = ({m}, {n}) is outside the only shapes admitting a "
            "nonvanishing self obstruction (n even with m >= n >= 4, or the "
            "projective plane with m = 2)"
        )
    if desc.orientable is Tri.YES:
        return "the target is orientable"
    if k != 2:
        return f"pi_1 has {k} elements, not 2"
    if desc.euler_char == 0:
        return "the Euler characteristic vanishes"
    if desc.closed is Tri.NO:
        return "the target is not closed"
    if punctured_inclusion_onto(desc, m) is Tri.YES:
        return "classes of maps can be pushed off a point"
    if desc.free_finite_action is Tri.YES:
        return "the target carries a free action of a nontrivial finite group"
    return None


def sharp_self_status(
    tables: HomotopyTables,
    desc: ManifoldDescriptor,
    m: int,
    f: MapClass | None,
) -> ObstructionValue:
    """Status of the sharp self obstruction of (f, f)."""
    if w1_not_injective(desc) is Tri.YES:
        return ObstructionValue(
            Status.ZERO,
            premises=(
                f"{desc}: some nontrivial deck class preserves orientation "
                "(pi_1 -> Z/2 is not injective), so every self pair has "
                "vanishing sharp obstruction",
            ),
        )
    reason = screen_failure_reason(tables, desc, m)
    if reason is not None:
        return ObstructionValue(Status.ZERO, premises=(reason,))
    if (
        f is not None
        and desc.pi1_order is not None
        and desc.pi1_order >= 2
        and f.j_boundary_zero is Tri.YES
    ):
        return ObstructionValue(
            Status.ZERO,
            premises=(
                "the boundary class dies in the punctured target "
                "(f is not coincidence producing)",
            ),
        )
    return suspended_boundary_status(tables, desc, m, f)


# ---------------------------------------------------------------------------
# stable layer
# ---------------------------------------------------------------------------


def _einf_of_collapse(
    tables: HomotopyTables, desc: ManifoldDescriptor, m: int, coords
) -> tuple[Status, tuple[str, ...]]:
    """Status of the stable suspension of coll_*[f] in pi^S_{m-n}."""
    n = desc.dim
    group = tables.pi_sphere(m, n)
    stem = tables.pi_stable(m - n)
    if group is not None:
        if len(coords) != group.dimension:
            raise MapClassError(
                f"collapse coordinates {list(coords)} do not match pi_{m}(S^{n}) = {group}"
            )
        element = group.element(coords)
        if element.is_zero:
            return Status.ZERO, (f"coll_*[f] = 0 in {_cite_pi(tables, m, n)}",)
        if stem is not None and stem.is_trivial:
            return Status.ZERO, (_cite_stem(tables, m - n),)
        if tables.suspension_Einf_injective(m + 1, n + 1) is Tri.YES:
            return Status.NONZERO, (
                _cite_pi(tables, m, n),
                f"coll_*[f] = {element} and the stable suspension out of "
                f"pi_{m}(S^{n}) is injective",
            )
        return Status.UNKNOWN, (_cite_pi(tables, m, n),)
    if all(c == 0 for c in coords):
        return Status.ZERO, ("coll_*[f] given as zero",)
    return Status.UNKNOWN, ()


def _annihilator_note(desc: ManifoldDescriptor) -> tuple[int | None, str | None]:
    chi = desc.euler_char
    if desc.orientable is Tri.YES and chi is not None and chi != 0:
        return chi, f"annihilated by chi({desc}) = {chi}"
    if desc.orientable is Tri.NO and chi is not None and chi != 1:
        return chi - 1, f"annihilated by chi({desc}) - 1 = {chi - 1}"
    return None, None


def stable_self_status(
    tables: HomotopyTables,
    desc: ManifoldDescriptor,
    m: int,
    f: MapClass | None,
) -> ObstructionValue:
    """Status of the fully collapsed stable self value in pi^S_{m-n}."""
    n = desc.dim
    k = desc.pi1_order
    chi = desc.euler_char
    stem = tables.pi_stable(m - n)

    collapse = None
    for candidate in (f, f.also if f is not None else None):
        if candidate is not None and candidate.rep == "collapse":
            collapse = candidate
    if collapse is not None:
        status, premises = _einf_of_collapse(tables, desc, m, collapse.coords)
        if status is Status.NONZERO and desc.orientable is Tri.NO:
            raise InconsistentDataError(
                "violated identity: on a nonorientable target the stable "
                "suspension of coll_*[f] must vanish, but the supplied collapse "
                "class has nonzero stable suspension"
            )
        if status is Status.NONZERO and desc.orientable is Tri.YES and chi in (1, -1):
            raise InconsistentDataError(
                "violated identity: chi(N) * (stable suspension of coll_*[f]) = 0 "
                f"with chi = {chi} forces it to vanish"
            )

    zero_routes: list[tuple[str, ...]] = []
    nonzero_routes: list[tuple[str, ...]] = []
    if stem is not None and stem.is_trivial:
        zero_routes.append((_cite_stem(tables, m - n),))
    if chi == 0:
        zero_routes.append(
            (
                f"chi({desc}) = 0 and the stable self value is chi(N) times a "
                "root value",
            )
        )
    if k is not None and k >= 2 and tables.stem_is_2_torsion(m - n) is Tri.YES:
        zero_routes.append(
            (
                f"pi_1({desc}) is nontrivial, so the stable self value is twice "
                f"another class, and 2 * pi^S_{m - n} = 0",
            )
        )
    if desc.orientable is Tri.NO and chi == 2:
        zero_routes.append(
            (
                "nonorientable target with chi = 2: multiplication by "
                "chi - 1 = 1 annihilates every stable value",
            )
        )
    if desc.orientable is Tri.YES and k is not None and k >= 2 and chi in (1, -1):
        zero_routes.append(
            (f"orientable, pi_1 nontrivial, chi = {chi}: chi annihilates",)
        )
    # the boundary route: the stable self value is the stable suspension of d[f]
    bstat = boundary_status(tables, desc, m, f)
    if bstat.status is Status.ZERO:
        zero_routes.append(
            bstat.premises
            + ("the stable self value is the stable suspension of the boundary",)
        )
    elif bstat.status is Status.NONZERO:
        if tables.suspension_Einf_injective(m, n) is Tri.YES:
            nonzero_routes.append(
                bstat.premises
                + (
                    f"the stable suspension pi_{m - 1}(S^{n - 1}) -> pi^S_{m - n} "
                    "is injective",
                )
            )
        elif tables.suspension_Einf_trivial(m, n) is Tri.YES:
            zero_routes.append(
                bstat.premises
                + (f"the stable suspension into pi^S_{m - n} is the zero map",)
            )
    if zero_routes and nonzero_routes:
        raise InconsistentDataError(
            "violated identity for the stable self value: it vanishes because "
            + " / ".join(zero_routes[0])
            + ", yet the supplied class data makes it nonzero because "
            + " / ".join(nonzero_routes[0])
        )
    if zero_routes:
        return ObstructionValue(Status.ZERO, premises=zero_routes[0])
    if nonzero_routes:
        return ObstructionValue(Status.NONZERO, premises=nonzero_routes[0])
    order_info, note = _annihilator_note(desc)
    return ObstructionValue(
        Status.UNKNOWN,
        order_info=order_info,
        notes=(note,) if note else (),
    )


def degree_root_status(
    tables: HomotopyTables,
    desc: ManifoldDescriptor,
    m: int,
    g: MapClass | None,
) -> ObstructionValue:
    """Status of the sharp root obstruction of (g, constant)."""
    n = desc.dim
    if g is not None and g.is_zero:
        return ObstructionValue(
            Status.ZERO,
            premises=("the root obstruction is a homomorphism, so it kills 0",),
        )
    if m < n:
        return ObstructionValue(
            Status.ZERO, premises=(f"m = {m} < {n} = dim N: every pair is loose",)
        )
    if punctured_inclusion_onto(desc, m) is Tri.YES:
        return ObstructionValue(
            Status.ZERO,
            premises=(
                "the root obstruction vanishes on classes supported away from "
                "a point, which is all of pi_m here",
            ),
        )
    if g is None or g.rep == "opaque":
        return _unknown()
    if g.rep == "degree" and m == n:
        if desc.kind == "sphere":
            return ObstructionValue(
                Status.ZERO if g.d == 0 else Status.NONZERO,
                premises=(
                    f"on S^{n} a degree-{g.d} map hits a point with multiplicity "
                    f"{g.d}; the root pair is essential iff the degree is nonzero",
                ),
            )
        if desc.kind == "real_projective" and n % 2 == 0:
            if g.d == 0:
                return ObstructionValue(
                    Status.ZERO, premises=("zero lift degree: the class is zero",)
                )
            if abs(g.d) == 1:
                return ObstructionValue(
                    Status.NONZERO,
                    premises=(
                        "the covering-projection class hits a point in two "
                        "essential Nielsen classes",
                    ),
                )
    return _unknown()


def _add_status(a: Status, b: Status) -> Status:
    if a is Status.ZERO and b is Status.ZERO:
        return Status.ZERO
    if {a, b} == {Status.ZERO, Status.NONZERO}:
        return Status.NONZERO
    return Status.UNKNOWN  # two nonzero summands may cancel


def pair_sharp_status(
    tables: HomotopyTables,
    desc: ManifoldDescriptor,
    m: int,
    f1: MapClass,
    f2: MapClass,
) -> ObstructionValue:
    """Sharp obstruction of a pair via the root-plus-self decomposition."""
    best = _unknown()
    for left, right in ((f1, f2), (f2, f1)):
        g = subtract_classes(left, right)
        if g is None:
            continue
        root = degree_root_status(tables, desc, m, g)
        self_part = sharp_self_status(tables, desc, m, right)
        combined = _add_status(root.status, self_part.status)
        if combined.known:
            premises = (
                (
                    f"pair obstruction = root obstruction of {g.describe()} "
                    f"plus self obstruction of {right.describe()}",
                )
                + root.premises
                + self_part.premises
            )
            return ObstructionValue(combined, premises=premises)
    return best


def stable_pair_status(
    tables: HomotopyTables,
    desc: ManifoldDescriptor,
    m: int,
    f1: MapClass | None,
    f2: MapClass | None,
) -> ObstructionValue:
    """Status of the stable value of a (root or general) pair in pi^S_{m-n}."""
    n = desc.dim
    k = desc.pi1_order
    chi = desc.euler_char
    stem = tables.pi_stable(m - n)
    if stem is not None and stem.is_trivial:
        return ObstructionValue(Status.ZERO, premises=(_cite_stem(tables, m - n),))
    if f1 is not None and f2 is not None and f1.is_zero and f2.is_zero:
        return ObstructionValue(
            Status.ZERO, premises=("both classes are zero and the value is additive",)
        )
    if desc.orientable is Tri.NO:
        if k is not None and k > 2:
            return ObstructionValue(
                Status.ZERO,
                premises=(
                    f"nonorientable with pi_1 of {k} > 2 elements: both kinds of "
                    "deck classes occur, forcing every stable value to vanish",
                ),
            )
        if chi in (0, 2):
            return ObstructionValue(
                Status.ZERO,
                premises=(
                    f"nonorientable, chi = {chi}: multiplication by "
                    f"chi - 1 = {chi - 1} annihilates every stable pair value",
                ),
            )
        if tables.stem_is_2_torsion(m - n) is Tri.YES:
            return ObstructionValue(
                Status.ZERO,
                premises=(
                    "nonorientable target: stable pair values are even multiples, "
                    f"and 2 * pi^S_{m - n} = 0",
                ),
            )
    if desc.orientable is Tri.YES and k is not None and k >= 2:
        if chi in (1, -1):
            return ObstructionValue(
                Status.ZERO,
                premises=(f"orientable with pi_1 nontrivial and chi = {chi}",),
            )
        if chi is not None and chi != 0 and stem is not None:
            exponent = stem.exponent()
            if exponent != INF and gcd(abs(chi), int(exponent)) == 1:
                return ObstructionValue(
                    Status.ZERO,
                    premises=(
                        f"chi = {chi} annihilates, and gcd(chi, exponent "
                        f"{exponent} of pi^S_{m - n}) = 1",
                    ),
                )
        if k != INF and stem is not None:
            exponent = stem.exponent()
            if exponent != INF and int(k) % int(exponent) == 0:
                return ObstructionValue(
                    Status.ZERO,
                    premises=(
                        f"stable pair values are multiples of k = {k}, a multiple "
                        f"of the exponent {exponent} of pi^S_{m - n}",
                    ),
                )
    order_info, note = _annihilator_note(desc)
    return ObstructionValue(
        Status.UNKNOWN, order_info=order_info, notes=(note,) if note else ()
    )


def collapse_pushforward_trivial(
    tables: HomotopyTables, desc: ManifoldDescriptor, m: int
) -> Tri:
    """Whether coll_*: pi_m(N) -> pi_m(S^n) is the zero map."""
    n = desc.dim
    if m < n:
        return Tri.YES  # trivial target group
    if (
        desc.orientable is Tri.NO
        and desc.pi1_order is not None
        and desc.pi1_order >= 2
        and tables.suspension_Einf_injective(m + 1, n + 1) is Tri.YES
    ):
        # the stable suspension of every coll_*[f] dies, and nothing is lost
        # on the way to the stable range
        return Tri.YES
    return Tri.UNKNOWN


# ---------------------------------------------------------------------------
# Nielsen helpers
# ---------------------------------------------------------------------------


def nielsen_root_values(desc: ManifoldDescriptor) -> frozenset[int]:
    """Possible Nielsen counts of a root pair: all classes vanish together."""
    k = desc.pi1_order
    if k is None:
        raise ValueError("root Nielsen values need pi_1 cardinality")
    if k == INF:
        return frozenset({0})
    return frozenset({0, int(k)})


def nielsen_number_special(
    desc: ManifoldDescriptor, m: int, f1: MapClass, f2: MapClass
) -> int | None:
    """The three pinned pairs on an even projective space with m = n:
    constants 0, twice the covering class 1, covering class against a
    constant 2."""
    if desc.kind != "real_projective" or desc.dim % 2 != 0 or m != desc.dim:
        return None

    def is_cover(f: MapClass) -> bool:
        return f.rep == "degree" and f.d == 1

    if f1.is_zero and f2.is_zero:
        return 0
    if is_cover(f1) and is_cover(f2):
        return 1
    if (is_cover(f1) and f2.is_zero) or (f1.is_zero and is_cover(f2)):
        return 2
    return None


def ker_id_plus_inv_trivial(desc: ManifoldDescriptor, m: int) -> Tri:
    """Whether id + inv is injective on the carrier of the pair obstruction.

    On an orientable target with pi_1 = Z/2 and m = n the carrier is Z + Z
    and the involution acts as (-1)^n, so the kernel is trivial exactly for
    even n.
    """
    if (
        m == desc.dim
        and desc.orientable is Tri.YES
        and desc.pi1_order == 2
    ):
        return Tri.of(desc.dim % 2 == 0)
    return Tri.UNKNOWN
