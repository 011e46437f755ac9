"""Substitutions, matching and syntactic unification."""
from __future__ import annotations

import dataclasses
import re
from typing import Iterable, Iterator, Mapping, Optional

from .terms import App, Term, Var, var_names


class Substitution(Mapping[str, Term]):
    """Finite map from variable names to terms.

    Bindings of a variable to itself are dropped on construction, so the
    domain is always exactly the set of variables the substitution moves.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, bindings: Mapping[str, Term] | Iterable[tuple[str, Term]] = ()):
        items = bindings.items() if isinstance(bindings, Mapping) else bindings
        self._map = {x: t for x, t in items if t != Var(x)}
        self._hash = None

    def __getitem__(self, name: str) -> Term:
        return self._map[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Substitution):
            return self._map == other._map
        return NotImplemented

    def __repr__(self):
        return f"Substitution({self._map!r})"

    def __str__(self):
        body = ", ".join(f"{x} -> {self._map[x]}" for x in sorted(self._map))
        return "{" + body + "}"

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self._map)

    def updated(self, name: str, t: Term) -> Substitution:
        m = dict(self._map)
        m[name] = t
        return Substitution(m)

    def __call__(self, t: Term) -> Term:
        return apply(self, t)

    def to_json(self) -> dict[str, str]:
        return {x: str(self._map[x]) for x in sorted(self._map)}


EMPTY = Substitution()


def apply(sigma: Mapping[str, Term], t: Term) -> Term:
    if not sigma:
        return t
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if not t.args:
        return t
    return App(t.fun, [apply(sigma, a) for a in t.args])


def compose(sigma: Substitution, tau: Substitution) -> Substitution:
    """Substitution equal to applying ``sigma`` first, then ``tau``."""
    out = {x: apply(tau, t) for x, t in sigma.items()}
    for y, t in tau.items():
        if y not in out:
            out[y] = t
    return Substitution(out)


class FreshNames:
    """Generates variable names ``<stem>_<n>`` with a strictly increasing n."""

    _suffix = re.compile(r"_\d+$")

    def __init__(self, start: int = 0):
        self.counter = start

    def fresh(self, base: str, avoid: Iterable[str] = ()) -> str:
        avoid = set(avoid)
        stem = self._suffix.sub("", base) or base
        while True:
            name = f"{stem}_{self.counter}"
            self.counter += 1
            if name not in avoid:
                return name


def renaming_for(names: Iterable[str], avoid: Iterable[str], fresh: FreshNames) -> Substitution:
    avoid = set(avoid)
    ren = {}
    for x in sorted(names):
        y = fresh.fresh(x, avoid)
        avoid.add(y)
        ren[x] = Var(y)
    return Substitution(ren)


def rename_apart(rule, avoid: Iterable[str], fresh: Optional[FreshNames] = None):
    """Variant of ``rule`` whose variables avoid ``avoid``.

    Works on any dataclass with ``lhs``/``rhs`` term fields.
    """
    fresh = fresh or FreshNames()
    avoid = set(avoid)
    names = var_names(rule.lhs) | var_names(rule.rhs)
    if not names:
        return rule
    ren = renaming_for(names, avoid | names, fresh)
    return dataclasses.replace(rule, lhs=apply(ren, rule.lhs), rhs=apply(ren, rule.rhs))


def match(pattern: Term, subject: Term) -> Optional[Substitution]:
    """Matcher ``sigma`` with ``apply(sigma, pattern) == subject``, or None."""
    bindings: dict[str, Term] = {}
    stack = [(pattern, subject)]
    while stack:
        p, s = stack.pop()
        if isinstance(p, Var):
            bound = bindings.get(p.name)
            if bound is None:
                bindings[p.name] = s
            elif bound != s:
                return None
        elif isinstance(s, App) and p.fun == s.fun and len(p.args) == len(s.args):
            # reversed so arguments are consumed left to right
            stack.extend(reversed(list(zip(p.args, s.args))))
        else:
            return None
    return Substitution(bindings)


def occurs(name: str, t: Term) -> bool:
    if isinstance(t, Var):
        return t.name == name
    return any(occurs(name, a) for a in t.args)


def unify(s: Term, t: Term) -> Optional[Substitution]:
    """Most general unifier in solved, idempotent form, or None."""
    solved: dict[str, Term] = {}
    todo = [(s, t)]
    while todo:
        a, b = todo.pop()
        if a == b:
            continue
        if isinstance(b, Var) and not isinstance(a, Var):
            a, b = b, a
        if isinstance(a, Var):
            if occurs(a.name, b):
                return None
            elim = {a.name: b}
            todo = [(apply(elim, u), apply(elim, v)) for u, v in todo]
            for x in solved:
                solved[x] = apply(elim, solved[x])
            solved[a.name] = b
        elif a.fun == b.fun and len(a.args) == len(b.args):
            todo.extend(reversed(list(zip(a.args, b.args))))
        else:
            return None
    return Substitution(solved)


def is_variant(s: Term, t: Term) -> bool:
    """True when ``s`` and ``t`` are equal up to a bijective variable renaming."""
    m1 = match(s, t)
    m2 = match(t, s)
    if m1 is None or m2 is None:
        return False
    return all(isinstance(v, Var) for v in m1.values())
