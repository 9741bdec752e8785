"""Abstract syntax, concrete grammar and syntactic measures for the logic.

Formulas are built from ``false``, atoms, negation, conjunction, the
knowledge box ``[a]``, the yesterday box ``[Y]`` and the update modality
``[U@s]``.  Everything else (``true``, ``|``, ``->``, ``<->``, diamonds)
is sugar that the parser expands and the printer folds back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Mapping, Optional

if TYPE_CHECKING:  # pragma: no cover
    from .action import ActionModel

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

#: names with a fixed meaning in the grammar, never usable as identifiers
RESERVED = {"Y", "true", "false"}


def check_ident(name: str, kind: str = "identifier") -> str:
    if not IDENT_RE.match(name) or name in RESERVED:
        raise ValueError(f"bad {kind}: {name!r}")
    return name


@dataclass(frozen=True)
class Signature:
    """Declared agent and atom names; shared by all models of a workspace."""

    agents: tuple
    atoms: tuple

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(sorted(set(self.agents))))
        object.__setattr__(self, "atoms", tuple(sorted(set(self.atoms))))
        if not self.agents:
            raise ValueError("signature needs at least one agent")
        if set(self.agents) & set(self.atoms):
            raise ValueError("agents and atoms must be disjoint")
        for a in self.agents:
            check_ident(a, "agent")
        for p in self.atoms:
            check_ident(p, "atom")


class Formula:
    """Base class; all connectives are frozen dataclasses below."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    agent: str
    sub: Formula


@dataclass(frozen=True)
class Yesterday(Formula):
    sub: Formula


@dataclass(frozen=True)
class Update(Formula):
    action: "ActionModel"
    event: str
    sub: Formula

    def __post_init__(self):
        if self.event not in self.action.events:
            raise ValueError(f"event {self.event!r} not in action model")


BOT = Bottom()
TOP = Not(BOT)


def implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def disj(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def iff(a: Formula, b: Formula) -> Formula:
    return And(implies(a, b), implies(b, a))


def diamond(agent: str, f: Formula) -> Formula:
    return Not(Box(agent, Not(f)))


def dia_yesterday(f: Formula) -> Formula:
    return Not(Yesterday(Not(f)))


def dia_update(action: "ActionModel", event: str, f: Formula) -> Formula:
    return Not(Update(action, event, Not(f)))


def conj(formulas) -> Formula:
    """Conjunction of a sequence; the empty conjunction is ``true``."""
    formulas = list(formulas)
    if not formulas:
        return TOP
    out = formulas[0]
    for f in formulas[1:]:
        out = And(out, f)
    return out


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas of f, preorder, not descending into preconditions."""
    yield f
    if isinstance(f, (Not, Box, Yesterday, Update)):
        yield from subformulas(f.sub)
    elif isinstance(f, And):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def actions_in(f: Formula) -> Iterator["ActionModel"]:
    """All action models occurring in f, including inside preconditions."""
    for g in subformulas(f):
        if isinstance(g, Update):
            yield g.action
            for _, pre in g.action.pre:
                yield from actions_in(pre)


def atoms_in(f: Formula):
    out = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            out.add(g.name)
        elif isinstance(g, Update):
            for _, pre in g.action.pre:
                out |= atoms_in(pre)
    return out


def agents_in(f: Formula):
    out = set()
    for g in subformulas(f):
        if isinstance(g, Box):
            out.add(g.agent)
        elif isinstance(g, Update):
            out |= set(g.action.sig.agents)
    return out


def is_atemporal(f: Formula) -> bool:
    """True iff no embedded action model (recursively) has a yesterday arrow.

    [Y] connectives in the formula itself are fine; the restriction is on
    the action models only.
    """
    return all(not u.yesterday for u in actions_in(f))


def is_setl(f: Formula) -> bool:
    """True iff f contains no update modality at all."""
    return all(not isinstance(g, Update) for g in subformulas(f))


def y_nesting_depth(f: Formula) -> int:
    if isinstance(f, (Bottom, Atom)):
        return 0
    if isinstance(f, Not):
        return y_nesting_depth(f.sub)
    if isinstance(f, And):
        return max(y_nesting_depth(f.left), y_nesting_depth(f.right))
    if isinstance(f, Box):
        return y_nesting_depth(f.sub)
    if isinstance(f, Yesterday):
        return 1 + y_nesting_depth(f.sub)
    raise ValueError("y_nesting_depth is defined on update-free formulas only")


def depth_formula(n: int, unique_past: bool = False) -> Formula:
    """The formula true exactly at worlds of temporal depth n.

    Without the uniqueness-of-past assumption this is
    <Y>^n [Y]false & [Y]^(n+1) false; with it the first conjunct suffices.
    """
    if n < 0:
        raise ValueError("depth must be nonnegative")
    lower: Formula = Yesterday(BOT)
    for _ in range(n):
        lower = dia_yesterday(lower)
    if unique_past:
        return lower
    upper: Formula = BOT
    for _ in range(n + 1):
        upper = Yesterday(upper)
    return And(lower, upper)


# ---------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_♭][A-Za-z0-9_♭]*)"
    r"|(?P<op><->|->|[~&|()\[\]<>@]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        kind = "ident" if m.group("ident") else "op"
        tokens.append((kind, m.group().strip(), m.start()))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, sig: Signature,
                 registry: Mapping[str, "ActionModel"]):
        self.tokens = tokens
        self.i = 0
        self.sig = sig
        self.registry = registry

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def formula(self) -> Formula:
        left = self.imp()
        while self.peek()[1] == "<->":
            self.next()
            left = iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek()[1] == "->":
            self.next()
            return implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek()[1] == "|":
            self.next()
            left = disj(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek()[1] == "&":
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, val, pos = self.next()
        if val == "~":
            return Not(self.unary())
        if val == "(":
            f = self.formula()
            self.expect(")")
            return f
        if val == "[":
            box, action, event = self.modal_head("]")
            body = self.unary()
            if box == "Y":
                return Yesterday(body)
            if action is None:
                return Box(box, body)
            return Update(action, event, body)
        if val == "<":
            box, action, event = self.modal_head(">")
            body = self.unary()
            if box == "Y":
                return dia_yesterday(body)
            if action is None:
                return diamond(box, body)
            return dia_update(action, event, body)
        if kind == "ident":
            if val == "true":
                return TOP
            if val == "false":
                return BOT
            if val not in self.sig.atoms:
                raise ParseError(f"unknown atom {val!r}", pos)
            return Atom(val)
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)

    def modal_head(self, close: str):
        """Parse the inside of [..] or <..>; returns (name, action, event)."""
        kind, name, pos = self.next()
        if kind != "ident":
            raise ParseError(f"expected a name, found {name!r}", pos)
        if self.peek()[1] == "@":
            self.next()
            ekind, event, epos = self.next()
            if ekind != "ident":
                raise ParseError(f"expected an event name, found {event!r}", epos)
            self.expect(close)
            if name not in self.registry:
                raise ParseError(f"unknown action {name!r}", pos)
            action = self.registry[name]
            if event not in action.events:
                raise ParseError(f"unknown event {event!r} of action {name!r}", epos)
            return name, action, event
        self.expect(close)
        if name == "Y":
            return "Y", None, None
        if name not in self.sig.agents:
            raise ParseError(f"unknown agent {name!r}", pos)
        return name, None, None


def parse(text: str, sig: Signature,
          registry: Optional[Mapping[str, "ActionModel"]] = None) -> Formula:
    p = _Parser(_tokenize(text), sig, registry or {})
    f = p.formula()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", pos)
    return f


# ---------------------------------------------------------------------------
# printing

_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4, 5


def _match_imp(f: Formula):
    # a -> b  ==  ~(a & ~b)
    if isinstance(f, Not) and isinstance(f.sub, And) and isinstance(f.sub.right, Not):
        return f.sub.left, f.sub.right.sub
    return None


def _match_or(f: Formula):
    # a | b  ==  ~(~a & ~b)
    if (isinstance(f, Not) and isinstance(f.sub, And)
            and isinstance(f.sub.left, Not) and isinstance(f.sub.right, Not)):
        return f.sub.left.sub, f.sub.right.sub
    return None


def _match_iff(f: Formula):
    if isinstance(f, And):
        l, r = _match_imp(f.left), _match_imp(f.right)
        if l and r and l[0] == r[1] and l[1] == r[0]:
            return l
    return None


def pretty(f: Formula) -> str:
    """Concrete syntax for f; parse(pretty(f)) is structurally f again."""
    return _pp(f, 0)


def _pp(f: Formula, ctx: int) -> str:
    m = _match_iff(f)
    if m:
        return _wrap(f"{_pp(m[0], _PREC_IFF + 1)} <-> {_pp(m[1], _PREC_IFF + 1)}",
                     _PREC_IFF, ctx)
    if f == TOP:
        return "true"
    m = _match_or(f)
    if m:
        return _wrap(f"{_pp(m[0], _PREC_OR)} | {_pp(m[1], _PREC_OR + 1)}",
                     _PREC_OR, ctx)
    m = _match_imp(f)
    if m:
        # right-associative: the consequent may itself be an implication
        return _wrap(f"{_pp(m[0], _PREC_IMP + 1)} -> {_pp(m[1], _PREC_IMP)}",
                     _PREC_IMP, ctx)
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, And):
        return _wrap(f"{_pp(f.left, _PREC_AND)} & {_pp(f.right, _PREC_AND + 1)}",
                     _PREC_AND, ctx)
    if isinstance(f, Not):
        s = f.sub
        if isinstance(s, Box) and isinstance(s.sub, Not):
            return f"<{s.agent}>{_pp(s.sub.sub, _PREC_UNARY)}"
        if isinstance(s, Yesterday) and isinstance(s.sub, Not):
            return f"<Y>{_pp(s.sub.sub, _PREC_UNARY)}"
        if isinstance(s, Update) and isinstance(s.sub, Not):
            return f"<{s.action.name}@{s.event}>{_pp(s.sub.sub, _PREC_UNARY)}"
        return f"~{_pp(s, _PREC_UNARY)}"
    if isinstance(f, Box):
        return f"[{f.agent}]{_pp(f.sub, _PREC_UNARY)}"
    if isinstance(f, Yesterday):
        return f"[Y]{_pp(f.sub, _PREC_UNARY)}"
    if isinstance(f, Update):
        return f"[{f.action.name}@{f.event}]{_pp(f.sub, _PREC_UNARY)}"
    raise TypeError(f"not a formula: {f!r}")


def _wrap(s: str, prec: int, ctx: int) -> str:
    return f"({s})" if prec < ctx else s
