"""Overlaps, critical pairs and confluence verdicts."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .errors import InputError
from .rewriting import (
    DEFAULT_REACH_FUEL,
    TRS,
    Joinability,
    RewriteRule,
    contract,
    joinable_terms,
)
from .substitution import FreshNames, Substitution, apply, is_variant, rename_apart, unify
from .terms import (
    DEFAULT_LIMITS,
    App,
    Limits,
    Position,
    Term,
    Var,
    format_position,
    function_positions,
    is_linear,
    subterm_at,
    var_names,
)


@dataclass(frozen=True)
class Overlap:
    outer_rule: int
    inner_rule: int
    position: Position
    mgu: Substitution
    inner_variant: RewriteRule  # inner rule renamed apart from the outer one


@dataclass(frozen=True)
class CriticalPair:
    left: Term
    right: Term
    peak: Term
    origin: Overlap

    @property
    def trivial(self) -> bool:
        return self.left == self.right


def _rule_variant(r1: RewriteRule, r2: RewriteRule) -> bool:
    return is_variant(App("rule", [r1.lhs, r1.rhs]), App("rule", [r2.lhs, r2.rhs]))


def overlaps(trs: TRS) -> list[Overlap]:
    """All overlaps ordered by (outer rule, inner rule, position length-lex).

    The root overlap of a rule with a renamed variant of itself is excluded.
    """
    out = []
    for i, outer in enumerate(trs.rules):
        outer_vars = var_names(outer.lhs) | var_names(outer.rhs)
        for j, inner in enumerate(trs.rules):
            variant = rename_apart(inner, outer_vars, FreshNames())
            for p in function_positions(outer.lhs):
                if not p and (i == j or _rule_variant(outer, inner)):
                    continue
                mgu = unify(subterm_at(outer.lhs, p), variant.lhs)
                if mgu is not None:
                    out.append(Overlap(i, j, p, mgu, variant))
    return out


def critical_pair(trs: TRS, ov: Overlap) -> CriticalPair:
    outer = trs.rules[ov.outer_rule]
    peak = apply(ov.mgu, outer.lhs)
    left = contract(peak, (), outer)
    right = contract(peak, ov.position, ov.inner_variant)
    # both succeed because mgu unifies the overlapping subterms
    assert left is not None and right is not None
    return CriticalPair(left[0], right[0], peak, ov)


def critical_pairs(trs: TRS, dedupe_symmetric: bool = False) -> list[CriticalPair]:
    cps = [critical_pair(trs, ov) for ov in overlaps(trs)]
    if not dedupe_symmetric:
        return cps
    seen: set = set()
    kept = []
    for cp in cps:
        key = frozenset([(cp.left, cp.right), (cp.right, cp.left)])
        if key not in seen:
            seen.add(key)
            kept.append(cp)
    return kept


def is_left_linear(trs: TRS) -> bool:
    return all(is_linear(r.lhs) for r in trs.rules)


def is_orthogonal(trs: TRS) -> bool:
    return is_left_linear(trs) and not overlaps(trs)


def freeze(terms: list[Term], avoid: set[str]) -> tuple[list[Term], dict[str, str]]:
    """Replace variables by fresh constants not in ``avoid``.

    Returns the frozen terms and the constant-to-variable map for thawing.
    """
    names = set()
    for t in terms:
        names |= var_names(t)
    fresh = FreshNames()
    taken = set(avoid) | names
    sub, back = {}, {}
    for x in sorted(names):
        c = fresh.fresh(f"c_{x}", taken)
        taken.add(c)
        sub[x] = App(c, ())
        back[c] = x
    return [apply(sub, t) for t in terms], back


def thaw(t: Term, back: dict[str, str]) -> Term:
    if isinstance(t, Var):
        return t
    if not t.args and t.fun in back:
        return Var(back[t.fun])
    return App(t.fun, [thaw(a, back) for a in t.args])


@dataclass(frozen=True)
class CPResult:
    pair: CriticalPair
    joinability: Joinability


def check_cp(trs: TRS, cp: CriticalPair, fuel: int, limits: Limits = DEFAULT_LIMITS) -> CPResult:
    if cp.trivial:
        return CPResult(cp, Joinability("yes", cp.left, 0, 0))
    (left, right), back = freeze([cp.left, cp.right], set(trs.signature))
    j = joinable_terms(trs, left, right, fuel, limits)
    if j.witness is not None:
        j = Joinability(j.status, thaw(j.witness, back), j.steps_left, j.steps_right)
    return CPResult(cp, j)


def check_cps(
    trs: TRS,
    fuel: int = DEFAULT_REACH_FUEL,
    limits: Limits = DEFAULT_LIMITS,
    dedupe_symmetric: bool = False,
    workers: int = 1,
) -> list[CPResult]:
    cps = critical_pairs(trs, dedupe_symmetric)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda cp: check_cp(trs, cp, fuel, limits), cps))
    return [check_cp(trs, cp, fuel, limits) for cp in cps]


@dataclass(frozen=True)
class LocalVerdict:
    status: str  # "locally-confluent" | "not-locally-confluent" | "unknown"
    results: tuple[CPResult, ...]
    counterexample: Optional[CPResult] = None

    @property
    def undecided(self) -> list[CPResult]:
        return [r for r in self.results if r.joinability.status == "unknown"]


def local_confluence_verdict(trs: TRS, fuel: int = DEFAULT_REACH_FUEL, limits: Limits = DEFAULT_LIMITS, **kw) -> LocalVerdict:
    if fuel < 1:
        raise InputError("fuel must be >= 1")
    results = tuple(check_cps(trs, fuel, limits, **kw))
    for r in results:
        if r.joinability.status == "no":
            return LocalVerdict("not-locally-confluent", results, r)
    if all(r.joinability.status == "yes" for r in results):
        return LocalVerdict("locally-confluent", results)
    return LocalVerdict("unknown", results)


ORTHOGONALITY = "orthogonality"
NEWMAN_CP = "newman+cp"
NON_JOINABLE_CP = "non-joinable-cp"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConfluenceVerdict:
    status: str  # "confluent" | "not-confluent" | "unknown"
    criterion: str
    reason: str
    local: Optional[LocalVerdict] = None


def confluence_verdict(
    trs: TRS,
    fuel: int = DEFAULT_REACH_FUEL,
    assume_terminating: bool = False,
    limits: Limits = DEFAULT_LIMITS,
    **kw,
) -> ConfluenceVerdict:
    if is_orthogonal(trs):
        return ConfluenceVerdict("confluent", ORTHOGONALITY, "left-linear with no overlaps (orthogonal)")
    local = local_confluence_verdict(trs, fuel, limits, **kw)
    if assume_terminating and local.status == "locally-confluent":
        return ConfluenceVerdict(
            "confluent",
            NEWMAN_CP,
            "all critical pairs joinable and termination asserted by the user "
            "(Critical Pair Lemma + Newman's Lemma)",
            local,
        )
    if local.status == "not-locally-confluent":
        cp = local.counterexample.pair
        return ConfluenceVerdict(
            "not-confluent",
            NON_JOINABLE_CP,
            f"critical pair ({cp.left}, {cp.right}) from peak {cp.peak} is not joinable",
            local,
        )
    if local.status == "locally-confluent":
        reason = "all critical pairs joinable but termination not asserted and system not orthogonal"
    else:
        pending = ", ".join(f"({r.pair.left}, {r.pair.right})" for r in local.undecided)
        reason = f"joinability undecided within fuel {fuel} for critical pairs {pending}"
    return ConfluenceVerdict("unknown", UNKNOWN, reason, local)


def overlap_to_json(ov: Overlap) -> dict:
    return {
        "outer_rule": ov.outer_rule,
        "inner_rule": ov.inner_rule,
        "position": format_position(ov.position),
        "mgu": ov.mgu.to_json(),
    }
