"""Random generators for terms, positions, substitutions and rules."""
from __future__ import annotations

import random

from rwkit.rewriting import RewriteRule
from rwkit.terms import App, Var, parallel, positions_of

SIG5 = {"f": 2, "g": 1, "h": 3, "a": 0, "b": 0}
VARS = ("x", "y", "z")


def term(rng: random.Random, sig=SIG5, depth=4, variables=VARS, var_p=0.2):
    if variables and rng.random() < var_p:
        return Var(rng.choice(variables))
    if depth <= 1:
        consts = [f for f, n in sig.items() if n == 0]
        if variables and rng.random() < 0.3:
            return Var(rng.choice(variables))
        return App(rng.choice(consts), ())
    f = rng.choice(sorted(sig))
    return App(f, [term(rng, sig, depth - 1, variables, var_p) for _ in range(sig[f])])


def ground_term(rng, sig=SIG5, depth=4):
    return term(rng, sig, depth, variables=(), var_p=0)


def position(rng, t):
    return rng.choice(positions_of(t))


def parallel_set(rng, t, k):
    """Up to ``k`` pairwise parallel positions of ``t`` in random order."""
    ps = positions_of(t)
    rng.shuffle(ps)
    chosen = []
    for p in ps:
        if len(chosen) == k:
            break
        if all(parallel(p, q) for q in chosen):
            chosen.append(p)
    return chosen


def substitution(rng, sig=SIG5, names=VARS, depth=3):
    return {x: term(rng, sig, depth) for x in names if rng.random() < 0.7}


def rule(rng, sig=SIG5, depth=3):
    while True:
        lhs = term(rng, sig, depth)
        if isinstance(lhs, Var):
            continue
        lv = sorted({p.name for p in _vars(lhs)})
        rhs = term(rng, sig, depth, variables=tuple(lv) or (), var_p=0.3 if lv else 0)
        return RewriteRule(lhs, rhs)


def _vars(t):
    if isinstance(t, Var):
        yield t
    else:
        for a in t.args:
            yield from _vars(a)


def all_ground_terms(sig, max_size):
    """Every ground term over ``sig`` with at most ``max_size`` nodes."""
    by_size: dict[int, list] = {}
    for n in range(1, max_size + 1):
        out = []
        for f, k in sorted(sig.items()):
            if k == 0:
                if n == 1:
                    out.append(App(f, ()))
                continue
            for split in _compositions(n - 1, k):
                combos = [[]]
                for part in split:
                    combos = [c + [t] for c in combos for t in by_size.get(part, [])]
                out += [App(f, c) for c in combos]
        by_size[n] = out
    return [t for n in range(1, max_size + 1) for t in by_size[n]]


def _compositions(total, parts):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
