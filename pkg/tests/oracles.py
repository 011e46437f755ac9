"""Independent reference implementations used to cross-check the package.

Nothing here calls into rwkit's matching, unification, position or
replacement code; only the term classes are shared.
"""
from __future__ import annotations

from collections import Counter

import numpy as np

from rwkit.terms import App, Var


# --- terms -----------------------------------------------------------------

def positions(t, prefix=()):
    out = [prefix]
    if isinstance(t, App):
        for k, a in enumerate(t.args):
            out += positions(a, prefix + (k + 1,))
    return out


def at(t, p):
    for i in p:
        t = t.args[i - 1]
    return t


def put(t, p, u):
    if not p:
        return u
    args = list(t.args)
    args[p[0] - 1] = put(args[p[0] - 1], p[1:], u)
    return App(t.fun, args)


def subst(t, s):
    if isinstance(t, Var):
        return s.get(t.name, t)
    return App(t.fun, [subst(a, s) for a in t.args])


def variables(t):
    if isinstance(t, Var):
        return [t.name]
    return [x for a in t.args for x in variables(a)]


# --- unification by triangular bindings and walking --------------------------

def _walk(t, b):
    while isinstance(t, Var) and t.name in b:
        t = b[t.name]
    return t


def _occurs(x, t, b):
    t = _walk(t, b)
    if isinstance(t, Var):
        return t.name == x
    return any(_occurs(x, a, b) for a in t.args)


def _unify_into(s, t, b):
    s, t = _walk(s, b), _walk(t, b)
    if isinstance(s, Var) and isinstance(t, Var) and s.name == t.name:
        return True
    if isinstance(s, Var):
        if _occurs(s.name, t, b):
            return False
        b[s.name] = t
        return True
    if isinstance(t, Var):
        return _unify_into(t, s, b)
    if s.fun != t.fun or len(s.args) != len(t.args):
        return False
    return all(_unify_into(x, y, b) for x, y in zip(s.args, t.args))


def _resolve(t, b):
    t = _walk(t, b)
    if isinstance(t, Var):
        return t
    return App(t.fun, [_resolve(a, b) for a in t.args])


def unifier(s, t):
    b: dict = {}
    if not _unify_into(s, t, b):
        return None
    return {x: _resolve(Var(x), b) for x in b}


def matcher(pattern, subject):
    """Matching via unification against a subject whose variables are frozen."""
    frozen = subst(subject, {x: App("#" + x, []) for x in variables(subject)})
    u = unifier(pattern, frozen)
    if u is None:
        return None
    thaw = {"#" + x: Var(x) for x in variables(subject)}

    def back(t):
        if isinstance(t, App) and not t.args and t.fun in thaw:
            return thaw[t.fun]
        return t if isinstance(t, Var) else App(t.fun, [back(a) for a in t.args])

    return {x: back(v) for x, v in u.items()}


# --- rewriting ---------------------------------------------------------------

def one_step(rules, s):
    """All one-step reducts of ``s`` as a multiset of terms."""
    out = []
    for p in positions(s):
        for lhs, rhs in rules:
            m = matcher(lhs, at(s, p))
            if m is not None:
                out.append(put(s, p, subst(rhs, m)))
    return out


def canonical(*terms):
    """Rename variables by order of first occurrence across ``terms``."""
    ren = {}
    for t in terms:
        for x in variables(t):
            ren.setdefault(x, Var(f"v{len(ren)}"))
    return tuple(subst(t, ren) for t in terms)


def critical_pair_multiset(rules):
    """Brute-force critical pairs: every (outer, inner, non-variable position)."""
    out = Counter()
    for i, (l1, r1) in enumerate(rules):
        for j, (l2, r2) in enumerate(rules):
            ren = {x: Var(x + "'") for x in variables(l2) + variables(r2)}
            l2r, r2r = subst(l2, ren), subst(r2, ren)
            for p in positions(l1):
                sub = at(l1, p)
                if isinstance(sub, Var):
                    continue
                if p == () and i == j:
                    continue
                u = unifier(sub, l2r)
                if u is None:
                    continue
                peak = subst(l1, u)
                out[canonical(subst(r1, u), put(peak, p, subst(r2r, u)))] += 1
    return out


# --- abstract reduction systems ----------------------------------------------

def rtc_matrix(carrier, steps):
    """Reflexive-transitive closure by repeated boolean matrix squaring."""
    idx = {x: k for k, x in enumerate(carrier)}
    n = len(carrier)
    m = np.eye(n, dtype=bool)
    for x, y in steps:
        m[idx[x], idx[y]] = True
    while True:
        nxt = (m.astype(int) @ m.astype(int)) > 0
        if (nxt == m).all():
            break
        m = nxt
    return {(carrier[i], carrier[j]) for i in range(n) for j in range(n) if m[i, j]}
