"""Parallel reduction over coordinated sequences of positions, rules and matchers."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .critical_pairs import is_orthogonal
from .errors import InputError, ResourceError
from .rewriting import TRS, Redex, contract, one_step_reducts, redexes
from .substitution import Substitution, apply, match
from .terms import (
    Position,
    Term,
    format_position,
    is_position_of,
    parallel,
    poskey,
    prefix_leq,
    replace_at,
    subterm_at,
    vars_of,
)

DEFAULT_MAX_REDEXES = 16


def check_parallel_positions(s: Term, positions: Sequence[Position]) -> None:
    for p in positions:
        if not is_position_of(s, p):
            raise InputError(f"{format_position(p)} is not a position of {s}")
    for p, q in combinations(positions, 2):
        if not parallel(p, q):
            raise InputError(f"positions {format_position(p)} and {format_position(q)} are not parallel")


def replace_par_pos(s: Term, positions: Sequence[Position], terms: Sequence[Term]) -> Term:
    """Simultaneously put ``terms[k]`` at ``positions[k]`` for every k."""
    if len(positions) != len(terms):
        raise InputError(f"{len(positions)} positions but {len(terms)} replacement terms")
    check_parallel_positions(s, positions)
    for p, t in zip(positions, terms):
        s = replace_at(s, t, p)
    return s


@dataclass(frozen=True)
class ParallelStep:
    positions: tuple[Position, ...] = ()
    rule_indices: tuple[int, ...] = ()
    matchers: tuple[Substitution, ...] = ()

    def __post_init__(self):
        if not len(self.positions) == len(self.rule_indices) == len(self.matchers):
            raise InputError("positions, rules and matchers must have equal lengths")
        # canonical form: coordinated sequences sorted by position, length-lex
        order = sorted(range(len(self.positions)), key=lambda k: poskey(self.positions[k]))
        object.__setattr__(self, "positions", tuple(tuple(self.positions[k]) for k in order))
        object.__setattr__(self, "rule_indices", tuple(self.rule_indices[k] for k in order))
        object.__setattr__(self, "matchers", tuple(Substitution(self.matchers[k]) for k in order))

    @classmethod
    def of(cls, redexes: Sequence[Redex]) -> ParallelStep:
        return cls(
            tuple(r.position for r in redexes),
            tuple(r.rule_index for r in redexes),
            tuple(r.matcher for r in redexes),
        )

    @property
    def redexes(self) -> list[Redex]:
        return [Redex(*triple) for triple in zip(self.positions, self.rule_indices, self.matchers)]

    def __len__(self):
        return len(self.positions)

    def to_json(self) -> dict:
        return {
            "positions": [format_position(p) for p in self.positions],
            "rules": list(self.rule_indices),
            "matchers": [m.to_json() for m in self.matchers],
        }


EMPTY_STEP = ParallelStep()


def apply_parallel_step(trs: TRS, s: Term, step: ParallelStep) -> Term:
    check_parallel_positions(s, step.positions)
    contracta = []
    for k, (p, i, sigma) in enumerate(zip(step.positions, step.rule_indices, step.matchers)):
        rule = trs.rule(i)
        if subterm_at(s, p) != apply(sigma, rule.lhs):
            raise InputError(
                f"step entry {k}: subterm at {format_position(p)} is not an instance "
                f"of rule {i} under the given matcher"
            )
        contracta.append(apply(sigma, rule.rhs))
    return replace_par_pos(s, step.positions, contracta)


def parallel_reducts(
    trs: TRS, s: Term, max_redexes: int = DEFAULT_MAX_REDEXES
) -> list[tuple[Term, ParallelStep]]:
    """Every parallel reduct of ``s`` with its step, the empty step first.

    Steps are enumerated by number of redexes, then lexicographically by the
    index of each redex in the one-step enumeration order.
    """
    rs = redexes(trs, s)
    if len(rs) > max_redexes:
        raise ResourceError(f"{len(rs)} redexes in {s} exceed the cap of {max_redexes}")
    out = []
    for k in range(len(rs) + 1):
        for combo in combinations(rs, k):
            if all(parallel(a.position, b.position) for a, b in combinations(combo, 2)):
                step = ParallelStep.of(combo)
                out.append((apply_parallel_step(trs, s, step), step))
    return out


def parallel_reduct_terms(trs: TRS, s: Term, max_redexes: int = DEFAULT_MAX_REDEXES) -> list[Term]:
    return list(dict.fromkeys(t for t, _ in parallel_reducts(trs, s, max_redexes)))


def one_step_implies_parallel(trs: TRS, s: Term, t: Term) -> Optional[ParallelStep]:
    if s == t:
        return EMPTY_STEP
    for u, r in one_step_reducts(trs, s):
        if u == t:
            return ParallelStep.of([r])
    return None


@dataclass(frozen=True)
class DiamondResult:
    holds: bool
    peak: Optional[tuple[Term, Term]] = None
    checked_pairs: int = 0


def diamond_check(trs: TRS, s: Term, max_redexes: int = DEFAULT_MAX_REDEXES) -> DiamondResult:
    """Check that every parallel peak from ``s`` closes with one parallel step per side."""
    tops = parallel_reduct_terms(trs, s, max_redexes)
    below = {t: set(parallel_reduct_terms(trs, t, max_redexes)) for t in tops}
    n = 0
    for i, t in enumerate(tops):
        for u in tops[i + 1:]:
            n += 1
            if not below[t] & below[u]:
                return DiamondResult(False, (t, u), n)
    return DiamondResult(True, None, n)


@dataclass(frozen=True)
class ParallelJoin:
    target: Term
    from_left: ParallelStep  # closes the sequential side
    from_right: ParallelStep  # closes the parallel side


def parallel_moves_join(trs: TRS, s: Term, outer: Redex, inner: ParallelStep) -> ParallelJoin:
    """Close the peak ``t <- s => u`` of a sequential step and a parallel step.

    ``t`` contracts ``outer``; ``u`` applies ``inner``, whose redexes lie
    strictly below or parallel to the outer one.  Inner redexes inside the
    instance of a variable ``x`` of the outer lhs are contracted inside
    ``sigma(x)`` to build ``sigma'``; their residuals in ``t`` sit at
    ``q.q_i.w`` for each occurrence ``q_i`` of ``x`` in the rhs.
    """
    if not is_orthogonal(trs):
        raise InputError("parallel moves join requires an orthogonal system")
    q, rule = outer.position, trs.rule(outer.rule_index)
    res = contract(s, q, rule)
    if res is None or res[1] != Substitution(outer.matcher):
        raise InputError(f"outer redex at {format_position(q)} does not match rule {outer.rule_index}")
    t, sigma = res
    u = apply_parallel_step(trs, s, inner)

    beside, inside = [], {}
    lhs_vars = vars_of(rule.lhs)
    var_at = {ps[0]: x for x, ps in lhs_vars.items()}  # left-linear: one occurrence each
    for r in inner.redexes:
        if parallel(r.position, q):
            beside.append(r)
            continue
        if not prefix_leq(q, r.position) or r.position == q:
            raise InputError(
                f"inner redex at {format_position(r.position)} is neither below nor parallel to the outer one"
            )
        rel = r.position[len(q):]
        hit = [vp for vp in var_at if prefix_leq(vp, rel)]
        if not hit:
            raise InputError(f"inner redex at {format_position(r.position)} overlaps the outer lhs")
        vp = hit[0]
        inside.setdefault(var_at[vp], []).append(Redex(rel[len(vp):], r.rule_index, r.matcher))

    sigma_prime = dict(sigma)
    for x, rs in inside.items():
        sigma_prime[x] = apply_parallel_step(trs, sigma[x], ParallelStep.of(rs))
    sigma_prime = Substitution(sigma_prime)

    rhs_occ = vars_of(rule.rhs)
    residuals = list(beside)
    for x, rs in inside.items():
        for qi in rhs_occ.get(x, []):
            residuals += [Redex(q + qi + r.position, r.rule_index, r.matcher) for r in rs]
    from_left = ParallelStep.of(residuals)
    from_right = ParallelStep.of([Redex(q, outer.rule_index, sigma_prime)])
    v = apply_parallel_step(trs, t, from_left)
    if apply_parallel_step(trs, u, from_right) != v:
        raise AssertionError("parallel moves construction failed to close the peak")
    return ParallelJoin(v, from_left, from_right)
