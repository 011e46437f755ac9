"""First-order terms, positions, subterm access and replacement.

Positions are tuples of 1-based child indices; ``()`` is the root.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence, Union

from .errors import InputError, ResourceError

Position = tuple[int, ...]
Signature = Mapping[str, int]

EPSILON: Position = ()


class Var:
    __slots__ = ("name",)

    size = 1
    depth = 1

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return hash(("var", self.name))

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return self.name


class App:
    """Application of a function symbol to a tuple of argument terms.

    Size, depth and hash are computed once at construction so that guards and
    set membership stay cheap on large terms.
    """

    __slots__ = ("fun", "args", "size", "depth", "_hash")

    def __init__(self, fun: str, args: Sequence[Term] = ()):
        args = tuple(args)
        set_ = object.__setattr__
        set_(self, "fun", fun)
        set_(self, "args", args)
        set_(self, "size", 1 + sum(a.size for a in args))
        set_(self, "depth", 1 + max((a.depth for a in args), default=0))
        set_(self, "_hash", hash((fun, args)))

    def __setattr__(self, key, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, App)
            and self._hash == other._hash
            and self.fun == other.fun
            and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"App({self.fun!r}, {list(self.args)!r})"

    def __str__(self):
        if not self.args:
            return self.fun
        return f"{self.fun}({','.join(map(str, self.args))})"


Term = Union[Var, App]


def const(name: str) -> App:
    return App(name, ())


@dataclass(frozen=True)
class Limits:
    """Guards against runaway term construction."""

    max_depth: int = 64
    max_size: int = 10**6

    def exceeded_by(self, t: Term) -> bool:
        return t.depth > self.max_depth or t.size > self.max_size

    def check(self, t: Term) -> Term:
        if t.size > self.max_size:
            raise ResourceError(f"term size {t.size} exceeds guard {self.max_size}")
        if t.depth > self.max_depth:
            raise ResourceError(f"term depth {t.depth} exceeds guard {self.max_depth}")
        return t


DEFAULT_LIMITS = Limits()


def format_position(p: Position) -> str:
    return ".".join(map(str, p)) if p else "epsilon"


def parse_position(text: str) -> Position:
    text = text.strip()
    if text in ("epsilon", ""):
        return ()
    try:
        p = tuple(int(part) for part in text.split("."))
    except ValueError:
        raise InputError(f"malformed position {text!r}") from None
    if any(i < 1 for i in p):
        raise InputError(f"position entries must be >= 1: {text!r}")
    return p


def poskey(p: Position) -> tuple[int, Position]:
    """Sort key for length-lexicographic order."""
    return (len(p), p)


def _walk(t: Term, prefix: Position) -> Iterator[tuple[Position, Term]]:
    yield prefix, t
    if isinstance(t, App):
        for i, a in enumerate(t.args, 1):
            yield from _walk(a, prefix + (i,))


def subterms(t: Term) -> list[tuple[Position, Term]]:
    """All (position, subterm) pairs in length-lexicographic position order."""
    return sorted(_walk(t, ()), key=lambda pt: poskey(pt[0]))


def positions_of(t: Term) -> list[Position]:
    return [p for p, _ in subterms(t)]


def function_positions(t: Term) -> list[Position]:
    """Non-variable positions, length-lex ordered."""
    return [p for p, s in subterms(t) if isinstance(s, App)]


def is_position_of(t: Term, p: Position) -> bool:
    for i in p:
        if not isinstance(t, App) or not 1 <= i <= len(t.args):
            return False
        t = t.args[i - 1]
    return True


def subterm_at(t: Term, p: Position) -> Term:
    cur = t
    for k, i in enumerate(p):
        if not isinstance(cur, App) or not 1 <= i <= len(cur.args):
            raise InputError(
                f"invalid position {format_position(p)} in {t}: "
                f"no child {i} below prefix {format_position(p[:k])}"
            )
        cur = cur.args[i - 1]
    return cur


def replace_at(s: Term, t: Term, p: Position) -> Term:
    """Return ``s[t]_p``; only the spine from the root to ``p`` is rebuilt."""
    if not p:
        return t
    i = p[0]
    if not isinstance(s, App) or not 1 <= i <= len(s.args):
        raise InputError(f"invalid position {format_position(p)} in {s}")
    args = list(s.args)
    args[i - 1] = replace_at(args[i - 1], t, p[1:])
    return App(s.fun, args)


def prefix_leq(p: Position, q: Position) -> bool:
    return len(p) <= len(q) and q[: len(p)] == p


def parallel(p: Position, q: Position) -> bool:
    return not prefix_leq(p, q) and not prefix_leq(q, p)


def vars_of(t: Term) -> dict[str, list[Position]]:
    """Variables of ``t`` mapped to their occurrence positions (length-lex)."""
    occ: dict[str, list[Position]] = {}
    for p, s in subterms(t):
        if isinstance(s, Var):
            occ.setdefault(s.name, []).append(p)
    return occ


def var_names(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.add(u.name)
        else:
            stack.extend(u.args)
    return out


def is_linear(t: Term) -> bool:
    return all(len(ps) == 1 for ps in vars_of(t).values())


def symbols_of(t: Term) -> dict[str, int]:
    out: dict[str, int] = {}
    for _, s in _walk(t, ()):
        if isinstance(s, App):
            out.setdefault(s.fun, len(s.args))
    return out


def check_well_formed(t: Term, signature: Signature) -> None:
    for p, s in _walk(t, ()):
        if isinstance(s, App):
            if s.fun not in signature:
                raise InputError(f"unknown symbol {s.fun!r} at {format_position(p)}")
            if signature[s.fun] != len(s.args):
                raise InputError(
                    f"symbol {s.fun!r} has arity {signature[s.fun]} "
                    f"but is applied to {len(s.args)} arguments at {format_position(p)}"
                )
