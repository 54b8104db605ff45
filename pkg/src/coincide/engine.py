"""Tri-valued forward chaining over the coincidence rule catalog.

A query names a target manifold, the sphere dimension m, a pair shape
(self / root / general) and a quantifier.  The engine runs a fixed catalog of
monotone rules to a fixpoint over seven statements:

  S1  boundary class vanishes          (d[f] = 0)
  S2  loose by small deformation
  S3  loose
  S4  sharp obstruction vanishes
  S5  suspended boundary vanishes      (E d[f] = 0)
  S6  stabilized obstruction vanishes
  S7  stable-stem obstruction vanishes

Statements only ever move from unknown to yes/no.  A yes/no clash is never
papered over: it aborts with a report naming both derivations, since it can
only come from a bug or from contradictory user-supplied class data.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from . import invariants as inv
from .invariants import (
    InconsistentDataError,
    MapClass,
    MapClassError,
    ObstructionValue,
    Status,
    ZERO_CLASS,
)
from .manifolds import INF, ManifoldDescriptor, grassmann, punctured_inclusion_onto, w1_not_injective
from .tables import HomotopyTables, load_default_tables
from .trilogic import Tri

__all__ = [
    "PairQuery",
    "Verdict",
    "TraceStep",
    "QueryError",
    "EngineInconsistencyError",
    "QueryFailure",
    "STATEMENTS",
    "RULES",
    "evaluate",
    "evaluate_batch",
]

STATEMENTS = {
    "S1": "boundary class vanishes",
    "S2": "loose by small deformation",
    "S3": "loose",
    "S4": "sharp obstruction vanishes",
    "S5": "suspended boundary vanishes",
    "S6": "stabilized obstruction vanishes",
    "S7": "stable-stem obstruction vanishes",
}

KINDS = ("self", "root", "general")
QUANTIFIERS = ("given", "forall", "exists")


class QueryError(ValueError):
    """Query violates the engine's preconditions."""


class EngineInconsistencyError(RuntimeError):
    """Two rules decided the same statement both ways.

    Always either an engine bug or contradictory user class data; the message
    carries both derivations.
    """


@dataclass(frozen=True)
class RuleInfo:
    cite: str
    law: str


# the rule catalog; ids name what each rule does, cites point at the kind of
# argument backing it (table citations travel in the premises)
RULES: dict[str, RuleInfo] = {
    "always-loose": RuleInfo(
        cite="general position / covering space arguments",
        law="every pair of maps from S^m is loose when m < dim N, N is "
        "noncompact, pi_1(N) is infinite, or N fibres with a section over a "
        "positive-dimensional base",
    ),
    "punctured-inclusion-loose": RuleInfo(
        cite="hemisphere separation",
        law="if every class of maps S^m -> N can be represented off a point, "
        "every pair of maps is loose",
    ),
    "small-deformation": RuleInfo(
        cite="vector-field / index-map argument",
        law="every self pair is loose by small deformation when N is "
        "noncompact, chi(N) = 0, or pi_{m-1}(S^{n-1}) = 0",
    ),
    "surfaces-small-deformation": RuleInfo(
        cite="surface targets",
        law="on a surface every self pair is loose by small deformation, "
        "except maps S^2 -> S^2 and S^2 -> RP(2)",
    ),
    "status-chain": RuleInfo(
        cite="status ladder for self pairs",
        law="boundary vanishing = small deformation => loose => sharp "
        "obstruction vanishes = suspended boundary vanishes => stabilized => "
        "stable stem; looseness upgrades on projective spaces, sharp "
        "vanishing upgrades to looseness on spheres",
    ),
    "suspension-injective-equivalence": RuleInfo(
        cite="Freudenthal suspension",
        law="when the suspension out of pi_{m-1}(S^{n-1}) is injective, the "
        "whole sharp ladder collapses to equivalences",
    ),
    "stable-suspension-injective": RuleInfo(
        cite="Freudenthal suspension (stable)",
        law="when the stable suspension is injective (in particular for "
        "m <= n + 3) the stable-stem value already decides the sharp ladder",
    ),
    "stable-determination": RuleInfo(
        cite="framed bordism stabilization",
        law="for a self pair the stabilized obstruction is determined by its "
        "fully collapsed stable value",
    ),
    "boundary-status": RuleInfo(
        cite="unit tangent bundle exact sequence",
        law="the boundary class of [f] is computed or bounded from the "
        "homotopy tables",
    ),
    "suspended-boundary-status": RuleInfo(
        cite="unit tangent bundle exact sequence + suspension tables",
        law="the sharp self obstruction equals the suspended boundary class "
        "up to sign",
    ),
    "hopf-mod-4": RuleInfo(
        cite="Hopf invariant criterion at (m, n) = (11, 6)",
        law="for maps S^11 -> RP(6) (or lifts to S^6) the pair is loose "
        "(resp. loose by small deformation) precisely when the lifted Hopf "
        "invariant is divisible by 4",
    ),
    "degree-parity": RuleInfo(
        cite="self-intersection of the diagonal",
        law="for m = n the suspended boundary of a degree-d class is "
        "(1 + (-1)^n) d, so on even spheres a self pair is essential iff "
        "d != 0",
    ),
    "w1-kernel-vanishing": RuleInfo(
        cite="Nielsen decomposition of the self coincidence set",
        law="if some nontrivial deck transformation preserves orientation "
        "(pi_1 -> Z/2 not injective), the sharp self obstruction vanishes "
        "for every map",
    ),
    "w1-kernel-small-deformation": RuleInfo(
        cite="Nielsen decomposition + suspension range",
        law="under the same hypothesis every self pair is loose by small "
        "deformation once m < 2n - 2 or m <= n + 3",
    ),
    "even-involution-loose": RuleInfo(
        cite="involution on the pair obstruction carrier",
        law="on an orientable target with pi_1 = Z/2 and m = n even, the "
        "carrier involution is +id, id + inv is injective, and every pair "
        "of maps is loose",
    ),
    "not-coincidence-producing": RuleInfo(
        cite="configuration space comparison",
        law="if the boundary class dies in the punctured target (j_* d[f] = 0) "
        "and pi_1(N) != 0, the sharp self obstruction vanishes",
    ),
    "necessary-conditions-screen": RuleInfo(
        cite="aggregate of the vanishing results",
        law="a nonvanishing sharp self obstruction with pi_1(N) != 0 forces: "
        "n even and m >= n >= 4 (or the projective plane with m = 2), N "
        "closed nonorientable with pi_1 = Z/2 and chi != 0, classes not "
        "representable off a point, and no free finite smooth action",
    ),
    "pair-reduction": RuleInfo(
        cite="additivity of the obstruction",
        law="the pair obstruction decomposes as the root obstruction of "
        "f1 - f2 plus the self obstruction of f2",
    ),
    "root-exactness": RuleInfo(
        cite="punctured-target exact sequence",
        law="for root pairs into spheres, projective spaces, surfaces, or in "
        "the stable range, the sharp obstruction is the complete looseness "
        "obstruction",
    ),
    "stable-self-status": RuleInfo(
        cite="Euler characteristic and collapse identities",
        law="the stable self value equals chi(N) times the root value and the "
        "stable suspension of the boundary, up to sign",
    ),
    "stable-pair-status": RuleInfo(
        cite="Nielsen component comparison in the root case",
        law="stable pair values are annihilated by chi(N) (orientable) or "
        "chi(N) - 1 (nonorientable); they vanish outright for nonorientable "
        "targets with pi_1 > 2 or 2-torsion stems",
    ),
    "collapse-triviality": RuleInfo(
        cite="Freudenthal suspension",
        law="on a nonorientable, non-simply-connected target the stable "
        "suspension of every collapse pushforward dies; if the stable "
        "suspension out of pi_m(S^n) is injective, the collapse pushforward "
        "itself is the zero map",
    ),
    "nielsen-norm": RuleInfo(
        cite="norm property of Nielsen numbers",
        law="the sharp (resp. stabilized) Nielsen number is zero exactly when "
        "the sharp (resp. stabilized) obstruction vanishes",
    ),
    "nielsen-clamp": RuleInfo(
        cite="Nielsen value restriction",
        law="Nielsen numbers of pairs of maps from spheres only take the "
        "values 0, #pi_1(N), and (for closed nonorientable even-dimensional "
        "targets with pi_1 = Z/2 and chi != 0) 1; a nonvanishing self pair "
        "has exactly one essential class",
    ),
    "root-components-equal": RuleInfo(
        cite="parallel Nielsen classes in the root case",
        law="all Nielsen classes of a root pair are essential or inessential "
        "simultaneously, so root Nielsen numbers lie in {0, #pi_1(N)}",
    ),
    "projective-even-nielsen": RuleInfo(
        cite="even projective spaces, m = n",
        law="on RP(n) with n even and m = n the pairs (constant, constant), "
        "(cover, cover), (cover, constant) have Nielsen numbers 0, 1, 2",
    ),
    "covering-transfer": RuleInfo(
        cite="compatibility with covering projections",
        law="boundary vanishing, small deformations, and obstruction "
        "vanishing (but not looseness) transfer between a manifold and its "
        "orientation double cover",
    ),
    "exists-nonvanishing-sharp": RuleInfo(
        cite="order count in the unit tangent bundle sequence",
        law="when pi_m(S^n) is strictly larger than pi_m(ST(S^n)), some class "
        "has nonzero boundary; if the suspension is injective its sharp self "
        "obstruction is nonzero",
    ),
    "exists-nonvanishing-stable": RuleInfo(
        cite="stable value of lifted classes on even projective spaces",
        law="on RP(n), n in {4, 8, 12, 14, 16, 20}, m = 2n - 1, the stable "
        "self value is twice the stable suspension of the lift, which hits "
        "elements of order > 2 in the stem",
    ),
    "coincidence-count-bound": RuleInfo(
        cite="lower bound by essential Nielsen classes",
        law="every pair homotopic to the given one has at least "
        "(sharp Nielsen number) coincidence path components",
    ),
}


@dataclass(frozen=True)
class TraceStep:
    rule: str
    cite: str
    law: str
    premises: tuple[str, ...]
    conclusion: str


@dataclass(frozen=True)
class PairQuery:
    manifold: ManifoldDescriptor
    m: int
    kind: str  # self | root | general
    f1: MapClass | None = None
    f2: MapClass | None = None
    quantifier: str = "given"


NielsenValue = None | int | frozenset


@dataclass
class Verdict:
    subject: str
    statements: dict[str, Tri]
    nielsen_sharp: NielsenValue
    nielsen_stable: NielsenValue
    exists_witness: dict[str, Tri] | None
    notes: tuple[str, ...]
    trace: tuple[TraceStep, ...]

    def statement(self, key: str) -> Tri:
        return self.statements[key]


@dataclass(frozen=True)
class QueryFailure:
    """Per-query error record produced by batch evaluation."""

    kind: str  # "invalid-query" | "inconsistency"
    message: str


def _default_tables() -> HomotopyTables:
    global _DEFAULT_TABLES
    if _DEFAULT_TABLES is None:
        _DEFAULT_TABLES = load_default_tables()
    return _DEFAULT_TABLES


_DEFAULT_TABLES: HomotopyTables | None = None


# ---------------------------------------------------------------------------
# engine core
# ---------------------------------------------------------------------------


class _Engine:
    def __init__(self, query: PairQuery, tables: HomotopyTables):
        self.query = query
        self.tables = tables
        self.desc = query.manifold
        self.m = query.m
        self.n = query.manifold.dim
        self.st: dict[str, Tri] = {key: Tri.UNKNOWN for key in STATEMENTS}
        self.nielsen: dict[str, NielsenValue] = {"sharp": None, "stable": None}
        self.exists_witness: dict[str, Tri] | None = None
        self.trace: list[TraceStep] = []
        self.notes: list[str] = []
        self.decided_by: dict[str, TraceStep] = {}
        self.transfer_verdict: "Verdict | None" = None
        self.changed = False

    # -- conclusions ---------------------------------------------------------

    def _step(self, rule: str, premises, conclusion: str) -> TraceStep:
        info = RULES[rule]
        return TraceStep(rule, info.cite, info.law, tuple(premises), conclusion)

    def conclude(self, stmt: str, value: Tri, rule: str, premises=()):
        if value is Tri.UNKNOWN:
            return
        current = self.st[stmt]
        if current is value:
            return
        step = self._step(rule, premises, f"{stmt} = {value.value}")
        if current.known:
            old = self.decided_by[stmt]
            raise EngineInconsistencyError(
                f"statement {stmt} ({STATEMENTS[stmt]}) decided both ways:\n"
                f"  {old.conclusion} by [{old.rule}] from {list(old.premises)}\n"
                f"  {step.conclusion} by [{step.rule}] from {list(step.premises)}"
            )
        self.st[stmt] = value
        self.decided_by[stmt] = step
        self.trace.append(step)
        self.changed = True

    def _merge_nielsen(self, which: str, value, rule: str, premises=()):
        current = self.nielsen[which]
        if isinstance(value, frozenset) and len(value) == 1:
            value = next(iter(value))
        if isinstance(value, int):
            if isinstance(current, int):
                if current != value:
                    raise EngineInconsistencyError(
                        f"nielsen_{which} decided as both {current} and {value} "
                        f"(latter by [{rule}])"
                    )
                return
            if isinstance(current, frozenset) and value not in current:
                raise EngineInconsistencyError(
                    f"nielsen_{which} = {value} by [{rule}] outside the "
                    f"established value set {sorted(current)}"
                )
            new = value
        else:
            value = frozenset(value)
            if isinstance(current, int):
                if current not in value:
                    raise EngineInconsistencyError(
                        f"nielsen_{which} already {current}, but [{rule}] "
                        f"restricts it to {sorted(value)}"
                    )
                return
            new = value if current is None else current & value
            if not new:
                raise EngineInconsistencyError(
                    f"nielsen_{which} value sets became disjoint via [{rule}]"
                )
            if len(new) == 1:
                new = next(iter(new))
            if new == current:
                return
        self.nielsen[which] = new
        rendered = (
            f"nielsen_{which} = {new}"
            if isinstance(new, int)
            else f"nielsen_{which} in {sorted(new)}"
        )
        self.trace.append(self._step(rule, premises, rendered))
        self.changed = True

    def note(self, text: str, rule: str, premises=()):
        if text in self.notes:
            return
        self.notes.append(text)
        self.trace.append(self._step(rule, premises, f"note: {text}"))
        self.changed = True

    def conclude_witness(self, stmt: str, value: Tri, rule: str, premises=()):
        if value is Tri.UNKNOWN:
            return
        if self.exists_witness is None:
            self.exists_witness = {key: Tri.UNKNOWN for key in STATEMENTS}
        current = self.exists_witness[stmt]
        if current is value:
            return
        if current.known:
            raise EngineInconsistencyError(
                f"existence witness statement {stmt} decided both ways "
                f"(latest by [{rule}])"
            )
        universal = self.st[stmt]
        if universal.known and universal is not value:
            raise EngineInconsistencyError(
                f"existence witness claims {stmt} = {value.value} but the "
                f"universal verdict already settled {stmt} = {universal.value}"
            )
        self.exists_witness[stmt] = value
        self.trace.append(
            self._step(rule, premises, f"exists witness: {stmt} = {value.value}")
        )
        self.changed = True

    # -- helpers --------------------------------------------------------------

    @property
    def f1(self) -> MapClass | None:
        return self.query.f1

    @property
    def f2(self) -> MapClass | None:
        return self.query.f2

    @property
    def given(self) -> bool:
        return self.query.quantifier == "given"

    def self_class(self) -> MapClass | None:
        """The class whose self pair is being judged, when concrete."""
        if self.query.kind != "self":
            return None
        return self.f1 if self.given else None

    def apply_obstruction(self, stmt: str, value: ObstructionValue, rule: str):
        if value.status is Status.ZERO:
            self.conclude(stmt, Tri.YES, rule, value.premises)
        elif value.status is Status.NONZERO:
            self.conclude(stmt, Tri.NO, rule, value.premises)
        for text in value.notes:
            self.note(text, rule, value.premises)

    # -- statement closure -----------------------------------------------------

    def _edges(self):
        edges: list[tuple[str, str, str, tuple[str, ...]]] = []
        kind = self.query.kind
        if kind == "self":
            chain = [
                ("S1", "S2"),
                ("S2", "S1"),
                ("S2", "S3"),
                ("S3", "S4"),
                ("S4", "S5"),
                ("S5", "S4"),
                ("S4", "S6"),
                ("S6", "S7"),
            ]
            edges.extend((a, b, "status-chain", ()) for a, b in chain)
            edges.append(
                ("S7", "S6", "stable-determination",
                 ("the stabilized self obstruction is determined by the stable "
                  "stem value",))
            )
            if self.desc.kind == "real_projective":
                edges.append(
                    ("S3", "S2", "status-chain",
                     ("on projective spaces loose pairs are loose by small "
                      "deformation",))
                )
            if self.desc.kind == "sphere":
                edges.append(
                    ("S4", "S3", "status-chain",
                     ("on spheres a vanishing sharp obstruction already makes "
                      "the self pair loose",))
                )
            if self.tables.suspension_E_injective(self.m, self.n) is Tri.YES:
                edges.append(
                    ("S5", "S1", "suspension-injective-equivalence",
                     (f"the suspension pi_{self.m - 1}(S^{self.n - 1}) -> "
                      f"pi_{self.m}(S^{self.n}) is injective",))
                )
            if (
                self.tables.suspension_Einf_injective(self.m, self.n) is Tri.YES
                or self.m <= self.n + 3
            ):
                edges.append(
                    ("S7", "S4", "stable-suspension-injective",
                     ("the stable suspension out of "
                      f"pi_{self.m - 1}(S^{self.n - 1}) is injective here",))
                )
        else:
            edges.extend(
                (a, b, "status-chain", ())
                for a, b in (("S3", "S4"), ("S4", "S6"), ("S6", "S7"))
            )
            if kind == "root" and self._root_exactness_applies():
                edges.append(
                    ("S4", "S3", "root-exactness",
                     (self._root_exactness_reason(),))
                )
        return edges

    def _root_exactness_applies(self) -> bool:
        return (
            self.m <= 2 * self.n - 3
            or self.n <= 2
            or self.desc.kind in ("sphere", "real_projective")
        )

    def _root_exactness_reason(self) -> str:
        if self.desc.kind in ("sphere", "real_projective"):
            return f"{self.desc} is a sphere or projective space"
        if self.n <= 2:
            return "dim N <= 2"
        return f"stable range m = {self.m} <= 2n - 3 = {2 * self.n - 3}"

    def _propagate(self, statements: dict[str, Tri], on_conclude):
        for a, b, rule, premises in self._edges():
            if statements[a] is Tri.YES and statements[b] is not Tri.YES:
                on_conclude(b, Tri.YES, rule, premises + (f"{a} = yes",))
            if statements[b] is Tri.NO and statements[a] is not Tri.NO:
                on_conclude(a, Tri.NO, rule, premises + (f"{b} = no",))


# ---------------------------------------------------------------------------
# rules
# ---------------------------------------------------------------------------


def _rule_always_loose(eng: _Engine):
    desc, m = eng.desc, eng.m
    reasons = []
    if m < desc.dim:
        reasons.append(f"m = {m} < {desc.dim} = dim N")
    if desc.compact is Tri.NO:
        reasons.append(f"{desc} is not compact")
    if desc.pi1_order == INF:
        reasons.append(f"pi_1({desc}) is infinite")
    if desc.fibration_with_section is Tri.YES:
        reasons.append(
            f"{desc} fibres with a section over a positive-dimensional base"
        )
    if reasons:
        eng.conclude("S3", Tri.YES, "always-loose", (reasons[0],))


def _rule_punctured_inclusion(eng: _Engine):
    if punctured_inclusion_onto(eng.desc, eng.m) is Tri.YES:
        eng.conclude(
            "S3",
            Tri.YES,
            "punctured-inclusion-loose",
            (
                f"every class of maps S^{eng.m} -> {eng.desc} is representable "
                "off a point",
            ),
        )


def _rule_small_deformation(eng: _Engine):
    if eng.query.kind != "self":
        return
    desc, m = eng.desc, eng.m
    if desc.compact is Tri.NO:
        eng.conclude(
            "S2", Tri.YES, "small-deformation", (f"{desc} is not compact",)
        )
        return
    if desc.euler_char == 0:
        eng.conclude(
            "S2", Tri.YES, "small-deformation", (f"chi({desc}) = 0",)
        )
        return
    source = eng.tables.pi_sphere(m - 1, desc.dim - 1)
    if source is not None and source.is_trivial:
        eng.conclude(
            "S2",
            Tri.YES,
            "small-deformation",
            (f"pi_{m - 1}(S^{desc.dim - 1}) = 0",),
        )


def _rule_surfaces(eng: _Engine):
    if eng.query.kind != "self" or eng.desc.dim != 2:
        return
    chi = eng.desc.euler_char
    if eng.m != 2:
        eng.conclude(
            "S2",
            Tri.YES,
            "surfaces-small-deformation",
            (f"surface target with m = {eng.m} != 2",),
        )
    elif chi is not None and chi not in (1, 2):
        eng.conclude(
            "S2",
            Tri.YES,
            "surfaces-small-deformation",
            (f"surface target with chi = {chi}, so not S^2 or RP(2)",),
        )


def _rule_boundary_status(eng: _Engine):
    if eng.query.kind != "self":
        return
    value = inv.boundary_status(eng.tables, eng.desc, eng.m, eng.self_class())
    eng.apply_obstruction("S1", value, "boundary-status")


def _rule_suspended_boundary(eng: _Engine):
    if eng.query.kind != "self":
        return
    f = eng.self_class()
    value = inv.suspended_boundary_status(eng.tables, eng.desc, eng.m, f)
    rule = "suspended-boundary-status"
    if f is not None and f.rep == "degree" and eng.m == eng.n:
        rule = "degree-parity"
        if value.witness is not None:
            sign = "+" if eng.n % 2 == 0 else "-"
            eng.note(
                f"suspended boundary value (1 {sign} 1) * {f.d} = "
                f"{value.witness.coords[0]} in pi_{eng.n}(S^{eng.n}) = Z",
                rule,
                value.premises,
            )
    eng.apply_obstruction("S5", value, rule)


def _rule_hopf_mod_4(eng: _Engine):
    if (
        eng.query.kind != "self"
        or not eng.given
        or (eng.m, eng.n) != (11, 6)
        or eng.desc.kind not in ("sphere", "real_projective")
    ):
        return
    f = eng.self_class()
    if f is None or f.rep != "hopf":
        return
    tables = eng.tables
    premises = (
        f"pi_11(S^6) = {tables.pi_sphere(11, 6)} (Toda 1962), detected by half "
        "the Hopf invariant",
        f"pi_10(S^5) = {tables.pi_sphere(10, 5)} (Toda 1962)",
        f"pi_10(V(7,2)) = {tables.pi_stiefel(10, 7, 2)} (Paechter 1956), so the "
        "boundary map is onto",
        f"lifted Hopf invariant {f.h}: smallness criterion is 4 | {f.h}",
    )
    loose = Tri.of(f.h % 4 == 0)
    eng.conclude("S2", loose, "hopf-mod-4", premises)
    if eng.desc.kind == "real_projective":
        eng.conclude("S3", loose, "hopf-mod-4", premises)


def _rule_w1_vanishing(eng: _Engine):
    if eng.query.kind != "self":
        return
    if w1_not_injective(eng.desc) is not Tri.YES:
        return
    desc = eng.desc
    if desc.orientable is Tri.YES and desc.pi1_order is not None and desc.pi1_order >= 2:
        reason = (
            f"{desc} is orientable with nontrivial pi_1: every deck class "
            "preserves orientation"
        )
    else:
        reason = (
            f"pi_1({desc}) has more than two elements, so some nontrivial "
            "deck class preserves orientation"
        )
    eng.conclude("S4", Tri.YES, "w1-kernel-vanishing", (reason,))
    m, n = eng.m, eng.n
    if m < 2 * n - 2 or m <= n + 3:
        eng.conclude(
            "S2",
            Tri.YES,
            "w1-kernel-small-deformation",
            (reason, f"m = {m} is inside the range (m < 2n - 2 or m <= n + 3)"),
        )


def _rule_not_coincidence_producing(eng: _Engine):
    if eng.query.kind != "self" or not eng.given:
        return
    f = eng.self_class()
    if (
        f is not None
        and f.j_boundary_zero is Tri.YES
        and eng.desc.pi1_order is not None
        and eng.desc.pi1_order >= 2
    ):
        eng.conclude(
            "S4",
            Tri.YES,
            "not-coincidence-producing",
            (
                "user data: the boundary class dies in the punctured target",
                f"pi_1({eng.desc}) is nontrivial",
            ),
        )


def _rule_screen(eng: _Engine):
    if eng.query.kind != "self":
        return
    reason = inv.screen_failure_reason(eng.tables, eng.desc, eng.m)
    if reason is not None:
        eng.conclude(
            "S4",
            Tri.YES,
            "necessary-conditions-screen",
            (f"pi_1({eng.desc}) is nontrivial", reason),
        )


def _rule_even_involution(eng: _Engine):
    if inv.ker_id_plus_inv_trivial(eng.desc, eng.m) is Tri.YES:
        eng.conclude(
            "S3",
            Tri.YES,
            "even-involution-loose",
            (
                f"{eng.desc} orientable with pi_1 = Z/2, m = n = {eng.n} even: "
                "id + inv is injective on the carrier Z + Z",
            ),
        )


def _rule_pair_reduction(eng: _Engine):
    if eng.query.kind not in ("root", "general") or not eng.given:
        return
    f1 = eng.f1
    f2 = eng.f2 if eng.query.kind == "general" else ZERO_CLASS
    if f1 is None or f2 is None:
        return
    value = inv.pair_sharp_status(eng.tables, eng.desc, eng.m, f1, f2)
    eng.apply_obstruction("S4", value, "pair-reduction")


def _rule_stable_self(eng: _Engine):
    if eng.query.kind != "self":
        return
    value = inv.stable_self_status(eng.tables, eng.desc, eng.m, eng.self_class())
    eng.apply_obstruction("S7", value, "stable-self-status")


def _rule_stable_pair(eng: _Engine):
    if eng.query.kind not in ("root", "general"):
        return
    f1 = eng.f1 if eng.given else None
    f2 = (eng.f2 if eng.query.kind == "general" else ZERO_CLASS) if eng.given else None
    value = inv.stable_pair_status(eng.tables, eng.desc, eng.m, f1, f2)
    eng.apply_obstruction("S7", value, "stable-pair-status")


def _rule_collapse_note(eng: _Engine):
    if inv.collapse_pushforward_trivial(eng.tables, eng.desc, eng.m) is Tri.YES:
        if eng.m < eng.n:
            premise = f"pi_{eng.m}(S^{eng.n}) is trivial (m < n)"
        else:
            premise = (
                f"{eng.desc} is nonorientable with nontrivial pi_1 and the "
                f"stable suspension out of pi_{eng.m}(S^{eng.n}) is injective"
            )
        eng.note(
            f"the collapse pushforward pi_{eng.m}({eng.desc}) -> "
            f"pi_{eng.m}(S^{eng.n}) is the zero map",
            "collapse-triviality",
            (premise,),
        )


def _rule_covering_transfer(eng: _Engine):
    if eng.desc.kind != "oriented_grassmann" or eng.query.kind != "self":
        return
    if eng.transfer_verdict is None:
        r, k = eng.desc.params
        base = grassmann(r, k)
        sub = PairQuery(
            manifold=base,
            m=eng.m,
            kind=eng.query.kind,
            f1=eng.f1,
            f2=eng.f2,
            quantifier=eng.query.quantifier,
        )
        eng.transfer_verdict = evaluate(sub, eng.tables)
    verdict = eng.transfer_verdict
    base = grassmann(*eng.desc.params)
    for stmt in ("S1", "S2", "S4", "S5"):
        value = verdict.statements[stmt]
        if value.known:
            eng.conclude(
                stmt,
                value,
                "covering-transfer",
                (
                    f"{eng.desc} is the orientation double cover of {base}; "
                    f"the corresponding query there settles {stmt} = {value.value}",
                ),
            )


def _rule_root_components(eng: _Engine):
    if eng.query.kind != "root":
        return
    k = eng.desc.pi1_order
    if k is None or k == INF:
        return
    values = inv.nielsen_root_values(eng.desc)
    premises = (
        f"pi_1({eng.desc}) has {int(k)} elements; root Nielsen classes are "
        "all essential or all inessential",
    )
    eng._merge_nielsen("sharp", values, "root-components-equal", premises)
    eng._merge_nielsen("stable", values, "root-components-equal", premises)


def _rule_projective_nielsen(eng: _Engine):
    if not eng.given:
        return
    f1 = eng.f1
    f2 = eng.f2 if eng.query.kind != "root" else ZERO_CLASS
    if eng.query.kind == "self":
        f2 = f1
    if f1 is None or f2 is None:
        return
    value = inv.nielsen_number_special(eng.desc, eng.m, f1, f2)
    if value is None:
        return
    premises = (
        f"{eng.desc} with m = n = {eng.m} even: the pinned pairs "
        "(constant, constant), (cover, cover), (cover, constant) have "
        "Nielsen numbers 0, 1, 2",
        f"pair shape: ({f1.describe()}, {f2.describe()})",
    )
    eng._merge_nielsen("sharp", value, "projective-even-nielsen", premises)
    eng._merge_nielsen("stable", value, "projective-even-nielsen", premises)


def _rule_nielsen_norm(eng: _Engine):
    pairs = (("sharp", "S4"), ("stable", "S6"))
    for which, stmt in pairs:
        value = eng.st[stmt]
        current = eng.nielsen[which]
        if value is Tri.YES:
            eng._merge_nielsen(
                which, 0, "nielsen-norm", (f"{stmt} = yes",)
            )
        if isinstance(current, int):
            if current == 0:
                eng.conclude(
                    stmt, Tri.YES, "nielsen-norm", (f"nielsen_{which} = 0",)
                )
            else:
                eng.conclude(
                    stmt,
                    Tri.NO,
                    "nielsen-norm",
                    (f"nielsen_{which} = {current} > 0",),
                )


def _rule_nielsen_clamp(eng: _Engine):
    desc = eng.desc
    k = desc.pi1_order
    for which, stmt in (("sharp", "S4"), ("stable", "S6")):
        if eng.st[stmt] is not Tri.NO:
            continue
        if eng.query.kind == "self":
            eng._merge_nielsen(
                which,
                1,
                "nielsen-clamp",
                (
                    f"{stmt} = no for a self pair: only the trivial Nielsen "
                    "class can be essential",
                ),
            )
        elif eng.query.kind == "root":
            current = eng.nielsen[which]
            if isinstance(current, frozenset) and 0 in current:
                eng._merge_nielsen(
                    which,
                    current - {0},
                    "nielsen-clamp",
                    (f"{stmt} = no rules out the value 0",),
                )
        else:  # general
            if (
                w1_not_injective(desc) is Tri.YES
                and k is not None
                and k != INF
            ):
                eng._merge_nielsen(
                    which,
                    int(k),
                    "nielsen-clamp",
                    (
                        f"{stmt} = no and the self contribution vanishes "
                        "identically, so the pair behaves like a root pair",
                    ),
                )


def _rule_exists_sharp(eng: _Engine):
    if (
        eng.query.quantifier != "exists"
        or eng.query.kind != "self"
        or eng.desc.kind not in ("sphere", "real_projective")
    ):
        return
    tables, m, n = eng.tables, eng.m, eng.n
    tangent = tables.pi_stiefel(m, n + 1, 2)
    target = tables.pi_sphere(m, n)
    if tangent is None or target is None:
        return
    if not (tangent.is_finite and target.is_finite):
        return
    if target.order() <= tangent.order():
        return
    if tables.suspension_E_injective(m, n) is not Tri.YES:
        return
    premises = (
        f"|pi_{m}(ST(S^{n}))| = |pi_{m}(V({n + 1},2))| = {tangent.order()} "
        "(Paechter 1956)",
        f"|pi_{m}(S^{n})| = {target.order()} (Toda 1962): exactness forces a "
        "class with nonzero boundary",
        f"pi_{m - 1}(S^{n - 1}) = {tables.pi_sphere(m - 1, n - 1)} (Toda 1962)",
        f"the suspension into pi_{m}(S^{n}) is injective "
        "(exact-sequence order count)",
    )
    if eng.desc.kind == "real_projective":
        premises = premises + (
            "the construction lifts: boundary and obstruction data transfer "
            "along the double cover S^n -> RP(n)",
        )
    eng.conclude_witness("S5", Tri.NO, "exists-nonvanishing-sharp", premises)


def _rule_exists_stable(eng: _Engine):
    if (
        eng.query.quantifier != "exists"
        or eng.query.kind != "self"
        or eng.desc.kind != "real_projective"
    ):
        return
    n = eng.n
    if n not in (4, 8, 12, 14, 16, 20) or eng.m != 2 * n - 1:
        return
    if eng.tables.stem_is_2_torsion(n - 1) is not Tri.NO:
        return
    stem = eng.tables.pi_stable(n - 1)
    eng.conclude_witness(
        "S7",
        Tri.NO,
        "exists-nonvanishing-stable",
        (
            f"pi^S_{n - 1} = {stem} (Toda 1962) contains elements of order > 2",
            "the stable self value on an even projective space is twice the "
            "stable suspension of the lift, which sweeps the whole stem here",
        ),
    )


_RULE_FUNCTIONS = (
    _rule_boundary_status,
    _rule_suspended_boundary,
    _rule_hopf_mod_4,
    _rule_always_loose,
    _rule_punctured_inclusion,
    _rule_small_deformation,
    _rule_surfaces,
    _rule_w1_vanishing,
    _rule_not_coincidence_producing,
    _rule_screen,
    _rule_even_involution,
    _rule_covering_transfer,
    _rule_pair_reduction,
    _rule_stable_self,
    _rule_stable_pair,
    _rule_collapse_note,
    _rule_root_components,
    _rule_projective_nielsen,
    _rule_nielsen_norm,
    _rule_nielsen_clamp,
    _rule_exists_sharp,
    _rule_exists_stable,
)


# ---------------------------------------------------------------------------
# validation and evaluation
# ---------------------------------------------------------------------------


def _validate(query: PairQuery) -> PairQuery:
    if query.m < 2:
        raise QueryError(
            f"m = {query.m}: maps are taken from spheres of dimension m >= 2 "
            "(the engine assumes m, n >= 2; lower cases are classical)"
        )
    if query.manifold.dim < 2:
        raise QueryError(
            f"dim N = {query.manifold.dim}: targets need dimension n >= 2 "
            "(the engine assumes m, n >= 2); 1-dimensional descriptors may "
            "only appear as product factors"
        )
    if query.kind not in KINDS:
        raise QueryError(f"unknown pair kind {query.kind!r}")
    if query.quantifier not in QUANTIFIERS:
        raise QueryError(f"unknown quantifier {query.quantifier!r}")
    f1, f2 = query.f1, query.f2
    if query.quantifier == "given":
        if f1 is None:
            raise QueryError("a 'given' query needs a concrete class f1")
        if query.kind == "general" and f2 is None:
            raise QueryError("a 'given' general query needs both f1 and f2")
        if query.kind == "self" and f2 is not None and f2 != f1:
            raise QueryError("a self query pairs f1 with itself; drop f2")
        if query.kind == "root":
            if f2 is not None and f2.rep != "zero":
                raise QueryError("a root query fixes f2 = constant; drop f2")
            f2 = ZERO_CLASS
        if query.kind == "self":
            f2 = f1
    else:
        for name, f in (("f1", f1), ("f2", f2)):
            if f is not None and f.rep != "opaque":
                raise QueryError(
                    f"{name}: quantified queries take no concrete classes "
                    "(use 'given')"
                )
        f1 = f2 = None
    try:
        if f1 is not None:
            f1.validate_for(query.m, query.manifold.dim)
        if f2 is not None:
            f2.validate_for(query.m, query.manifold.dim)
    except MapClassError as exc:
        raise QueryError(str(exc)) from exc
    return replace(query, f1=f1, f2=f2)


def _subject(query: PairQuery) -> str:
    kind_text = {
        "self": "self pair",
        "root": "root pair",
        "general": "pair",
    }[query.kind]
    classes = ""
    if query.quantifier == "given":
        if query.kind == "self":
            classes = f" of {query.f1.describe()}"
        elif query.kind == "root":
            classes = f" of ({query.f1.describe()}, constant)"
        else:
            classes = f" of ({query.f1.describe()}, {query.f2.describe()})"
    quant = {"given": "", "forall": " [for all classes]", "exists": " [existence]"}[
        query.quantifier
    ]
    return (
        f"{kind_text}{classes} for maps S^{query.m} -> {query.manifold.label}"
        f"{quant}"
    )


def evaluate(query: PairQuery, tables: HomotopyTables | None = None) -> Verdict:
    """Run the rule catalog to a monotone fixpoint and close the verdict."""
    tables = tables or _default_tables()
    query = _validate(query)
    eng = _Engine(query, tables)
    try:
        for _ in range(64):
            eng.changed = False
            for rule_fn in _RULE_FUNCTIONS:
                rule_fn(eng)
            eng._propagate(eng.st, eng.conclude)
            if not eng.changed:
                break
        else:  # pragma: no cover - the catalog is finite and monotone
            raise EngineInconsistencyError("fixpoint iteration did not stabilize")
        _finalize(eng)
    except MapClassError as exc:
        raise QueryError(str(exc)) from exc
    except InconsistentDataError as exc:
        raise EngineInconsistencyError(str(exc)) from exc
    return Verdict(
        subject=_subject(query),
        statements=dict(eng.st),
        nielsen_sharp=eng.nielsen["sharp"],
        nielsen_stable=eng.nielsen["stable"],
        exists_witness=dict(eng.exists_witness) if eng.exists_witness else None,
        notes=tuple(eng.notes),
        trace=tuple(eng.trace),
    )


def _finalize(eng: _Engine):
    # close the existence witness under the statement ladder and inherit the
    # universally quantified conclusions
    if eng.exists_witness is not None:
        for stmt, value in eng.st.items():
            if value.known and not eng.exists_witness[stmt].known:
                eng.exists_witness[stmt] = value
        for _ in range(16):
            changed = [False]

            def wconclude(stmt, value, rule, premises):
                current = eng.exists_witness[stmt]
                if current is value:
                    return
                if current.known:
                    raise EngineInconsistencyError(
                        f"existence witness statement {stmt} decided both ways "
                        f"during closure (by [{rule}])"
                    )
                universal = eng.st[stmt]
                if universal.known and universal is not value:
                    raise EngineInconsistencyError(
                        f"existence witness closure derives {stmt} = "
                        f"{value.value} against the universal {universal.value}"
                    )
                eng.exists_witness[stmt] = value
                eng.trace.append(
                    eng._step(
                        rule, premises, f"exists witness: {stmt} = {value.value}"
                    )
                )
                changed[0] = True

            eng._propagate(eng.exists_witness, wconclude)
            if not changed[0]:
                break
    value = eng.nielsen["sharp"]
    if isinstance(value, int) and value > 0:
        eng.note(
            f"any pair of representatives has at least {value} coincidence "
            "path component(s)",
            "coincidence-count-bound",
            (f"nielsen_sharp = {value}",),
        )
    if eng.query.kind == "root" and isinstance(eng.nielsen["sharp"], frozenset):
        eng.note(
            "root Nielsen numbers take a single value from "
            f"{sorted(eng.nielsen['sharp'])} (all classes together)",
            "root-components-equal",
            (),
        )


def evaluate_batch(
    queries, tables: HomotopyTables | None = None, parallel: bool = False
):
    """Order-preserving, error-collecting evaluation of many queries."""
    tables = tables or _default_tables()

    def run(query: PairQuery):
        try:
            return evaluate(query, tables)
        except QueryError as exc:
            return QueryFailure("invalid-query", str(exc))
        except EngineInconsistencyError as exc:
            return QueryFailure("inconsistency", str(exc))

    queries = list(queries)
    if parallel and len(queries) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor() as pool:
            return list(pool.map(run, queries))
    return [run(q) for q in queries]
