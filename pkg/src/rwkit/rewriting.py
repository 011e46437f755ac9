"""Rewrite rules, term rewriting systems and the one-step reduction relation."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import InputError
from .substitution import Substitution, apply, match
from .terms import (
    DEFAULT_LIMITS,
    Limits,
    Position,
    Signature,
    Term,
    Var,
    check_well_formed,
    format_position,
    is_position_of,
    poskey,
    replace_at,
    subterm_at,
    subterms,
    symbols_of,
    var_names,
    vars_of,
)

DEFAULT_REACH_FUEL = 10_000
DEFAULT_NORMALIZE_FUEL = 1_000


@dataclass(frozen=True)
class RewriteRule:
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if isinstance(self.lhs, Var):
            raise InputError(f"left-hand side of {self} is a variable")
        extra = var_names(self.rhs) - var_names(self.lhs)
        if extra:
            raise InputError(
                f"right-hand side variables {sorted(extra)} of {self} do not occur in the left-hand side"
            )

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class TRS:
    signature: Signature
    variables: frozenset[str]
    rules: tuple[RewriteRule, ...]

    def __post_init__(self):
        object.__setattr__(self, "signature", dict(self.signature))
        object.__setattr__(self, "variables", frozenset(self.variables))
        object.__setattr__(self, "rules", tuple(self.rules))
        clash = self.variables & set(self.signature)
        if clash:
            raise InputError(f"names declared both as variables and symbols: {sorted(clash)}")
        for rule in self.rules:
            check_well_formed(rule.lhs, self.signature)
            check_well_formed(rule.rhs, self.signature)

    def __hash__(self):
        return hash((tuple(sorted(self.signature.items())), self.variables, self.rules))

    @classmethod
    def from_rules(cls, rules: Iterable[RewriteRule | tuple[Term, Term]], variables: Iterable[str] = ()) -> TRS:
        """Build a TRS inferring the signature from the rules; duplicates are dropped."""
        out: list[RewriteRule] = []
        sig: dict[str, int] = {}
        names = set(variables)
        for r in rules:
            rule = r if isinstance(r, RewriteRule) else RewriteRule(*r)
            if rule in out:
                continue
            out.append(rule)
            for t in (rule.lhs, rule.rhs):
                for f, n in symbols_of(t).items():
                    if sig.setdefault(f, n) != n:
                        raise InputError(f"symbol {f!r} used with arities {sig[f]} and {n}")
                names |= var_names(t)
        return cls(sig, frozenset(names), tuple(out))

    def rule(self, i: int) -> RewriteRule:
        if not 0 <= i < len(self.rules):
            raise InputError(f"rule index {i} out of range 0..{len(self.rules) - 1}")
        return self.rules[i]


@dataclass(frozen=True)
class Redex:
    position: Position
    rule_index: int
    matcher: Substitution

    def to_json(self) -> dict:
        return {
            "position": format_position(self.position),
            "rule_index": self.rule_index,
            "matcher": self.matcher.to_json(),
        }


def contract(s: Term, p: Position, rule: RewriteRule) -> Optional[tuple[Term, Substitution]]:
    """Rewrite ``s`` at ``p`` with ``rule``; None when the lhs does not match there."""
    sigma = match(rule.lhs, subterm_at(s, p))
    if sigma is None:
        return None
    return replace_at(s, apply(sigma, rule.rhs), p), sigma


def step_at(trs: TRS, s: Term, p: Position, i: int) -> Optional[Term]:
    if not is_position_of(s, p):
        raise InputError(f"{format_position(p)} is not a position of {s}")
    res = contract(s, p, trs.rule(i))
    return None if res is None else res[0]


def redexes(trs: TRS, s: Term) -> list[Redex]:
    out = []
    for p, sub in subterms(s):
        if isinstance(sub, Var):
            continue
        for i, rule in enumerate(trs.rules):
            if rule.lhs.fun != sub.fun:
                continue
            sigma = match(rule.lhs, sub)
            if sigma is not None:
                out.append(Redex(p, i, sigma))
    return out


def one_step_reducts(trs: TRS, s: Term) -> list[tuple[Term, Redex]]:
    """Every one-step reduct of ``s``, ordered by (position length-lex, rule index)."""
    return [
        (replace_at(s, apply(r.matcher, trs.rules[r.rule_index].rhs), r.position), r)
        for r in redexes(trs, s)
    ]


def is_normal_form(trs: TRS, s: Term) -> bool:
    return not redexes(trs, s)


@dataclass(frozen=True)
class Reach:
    """Outcome of a bounded breadth-first reachability search.

    ``terms`` is in discovery order and ``depth`` maps each term to the
    length of a shortest reduction from the start term.
    """

    complete: bool
    terms: tuple[Term, ...]
    depth: dict = field(compare=False, repr=False)

    def __contains__(self, t: Term) -> bool:
        return t in self.depth


def reachable_set(trs: TRS, s: Term, fuel: int = DEFAULT_REACH_FUEL, limits: Limits = DEFAULT_LIMITS) -> Reach:
    """Breadth-first closure of ``{s}`` under one-step reduction.

    ``fuel`` bounds the number of node expansions.  Terms that trip the size
    guard are recorded but never expanded, which makes the result truncated.
    """
    if fuel < 1:
        raise InputError("fuel must be >= 1")
    depth = {s: 0}
    order = [s]
    queue = deque([s])
    expansions = 0
    truncated = False
    while queue:
        if expansions >= fuel:
            truncated = True
            break
        u = queue.popleft()
        if limits.exceeded_by(u):
            truncated = True
            continue
        expansions += 1
        for v, _ in one_step_reducts(trs, u):
            if v not in depth:
                depth[v] = depth[u] + 1
                order.append(v)
                queue.append(v)
    return Reach(not truncated, tuple(order), depth)


@dataclass(frozen=True)
class Joinability:
    status: str  # "yes" | "no" | "unknown"
    witness: Optional[Term] = None
    steps_left: Optional[int] = None
    steps_right: Optional[int] = None

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["steps_left"] = self.steps_left
            out["steps_right"] = self.steps_right
        return out


def joinable_terms(
    trs: TRS, u: Term, v: Term, fuel: int = DEFAULT_REACH_FUEL, limits: Limits = DEFAULT_LIMITS
) -> Joinability:
    if u == v:
        return Joinability("yes", u, 0, 0)
    left = reachable_set(trs, u, fuel, limits)
    right = reachable_set(trs, v, fuel, limits)
    for w in left.terms:
        if w in right:
            return Joinability("yes", w, left.depth[w], right.depth[w])
    if left.complete and right.complete:
        return Joinability("no")
    return Joinability("unknown")


@dataclass(frozen=True)
class Normalization:
    term: Term
    trace: tuple[Redex, ...]
    normal: bool  # False when fuel ran out first


def normalize(trs: TRS, s: Term, fuel: int = DEFAULT_NORMALIZE_FUEL, limits: Limits = DEFAULT_LIMITS) -> Normalization:
    """Leftmost-outermost reduction until a normal form or ``fuel`` steps."""
    if fuel < 0:
        raise InputError("fuel must be >= 0")
    trace: list[Redex] = []
    t = s
    while True:
        rs = redexes(trs, t)
        if not rs:
            return Normalization(t, tuple(trace), True)
        if len(trace) >= fuel:
            return Normalization(t, tuple(trace), False)
        r = rs[0]
        t = limits.check(replace_at(t, apply(r.matcher, trs.rules[r.rule_index].rhs), r.position))
        trace.append(r)


@dataclass(frozen=True)
class UniformSequence:
    start: Term
    steps: tuple[tuple[Position, Term], ...]
    sigma_prime: Substitution

    @property
    def end(self) -> Term:
        return self.steps[-1][1] if self.steps else self.start


def uniform_reduction_sequence(
    trs: TRS,
    pattern: Term,
    sigma: Substitution,
    var: str,
    q: Position,
    rule_index: int,
    done: Sequence[Position] = (),
) -> UniformSequence:
    """Replay the uniform reduction of every instance of ``var`` in ``pattern``.

    ``sigma(var)`` must contain a redex of rule ``rule_index`` at ``q``.  The
    updated substitution maps ``var`` to that instance with the redex
    contracted.  Starting from ``pattern`` instantiated by ``sigma`` (with the
    occurrences listed in ``done`` already contracted), one step is taken at
    ``q_i.q`` for each remaining occurrence ``q_i`` of ``var``; the last term
    equals ``pattern`` instantiated by the updated substitution.
    """
    rule = trs.rule(rule_index)
    x_inst = sigma.get(var, Var(var))
    res = contract(x_inst, q, rule)
    if res is None:
        raise InputError(f"no redex of rule {rule_index} at {format_position(q)} in {x_inst}")
    sigma_prime = sigma.updated(var, res[0])
    occurrences = vars_of(pattern).get(var, [])
    if any(d not in occurrences for d in done):
        raise InputError("positions in done must be occurrences of the variable")
    contractum = subterm_at(res[0], q)
    start = apply(sigma, pattern)
    for d in done:
        start = replace_at(start, contractum, d + q)
    steps = []
    cur = start
    for qi in sorted(occurrences, key=poskey):
        if qi in done:
            continue
        nxt = step_at(trs, cur, qi + q, rule_index)
        if nxt is None:
            raise InputError(f"expected redex at {format_position(qi + q)}")
        steps.append((qi + q, nxt))
        cur = nxt
    return UniformSequence(start, tuple(steps), sigma_prime)


def trace_to_json(trace: Iterable[Redex]) -> list[dict]:
    return [r.to_json() for r in trace]

