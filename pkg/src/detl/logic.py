"""Executable metatheory: reduction to the update-free fragment, a
validity decision procedure (reduction + multimodal K tableau),
bisimulation by partition refinement, and the ♯ translation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from .action import FLAT, ActionModel, is_atemporal_action, is_past_state
from .formula import (And, Atom, Bottom, Box, Formula, Not, Signature, TOP,
                      Update, Yesterday, agents_in, atoms_in, conj, diamond,
                      dia_yesterday, implies)
from .kripke import KripkeModel, PointedModel

DEFAULT_NODE_LIMIT = 10 ** 6


# ---------------------------------------------------------------------------
# reduction

def reduce_formula(f: Formula) -> Formula:
    """Update-free equivalent of f.

    Innermost-first: preconditions are reduced before the update that
    carries them is pushed through its body, so the push step only ever
    sees update-free material.
    """
    if isinstance(f, (Bottom, Atom)):
        return f
    if isinstance(f, Not):
        return Not(reduce_formula(f.sub))
    if isinstance(f, And):
        return And(reduce_formula(f.left), reduce_formula(f.right))
    if isinstance(f, Box):
        return Box(f.agent, reduce_formula(f.sub))
    if isinstance(f, Yesterday):
        return Yesterday(reduce_formula(f.sub))
    if isinstance(f, Update):
        U = _reduce_action(f.action)
        return _push(U, f.event, reduce_formula(f.sub))
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=None)
def _reduce_action(U: ActionModel) -> ActionModel:
    return ActionModel(
        sig=U.sig, events=U.events, epistemic=U.epi, yesterday=U.yesterday,
        pre={e: reduce_formula(p) for e, p in U.pre}, name=U.name)


def _push(U: ActionModel, s: str, f: Formula) -> Formula:
    """Rewrite [U,s]f into the update-free fragment; f and all of U's
    preconditions are update-free already."""
    pre = U.pre_map[s]
    if isinstance(f, (Atom, Bottom)):
        return implies(pre, f)
    if isinstance(f, Not):
        return implies(pre, Not(_push(U, s, f.sub)))
    if isinstance(f, And):
        return And(_push(U, s, f.left), _push(U, s, f.right))
    if isinstance(f, Box):
        return implies(pre, conj(Box(f.agent, _push(U, s2, f.sub))
                                 for s2 in U.succ(f.agent, s)))
    if isinstance(f, Yesterday):
        if is_past_state(U, s):
            return implies(pre, Yesterday(_push(U, s, f.sub)))
        return implies(pre, conj(_push(U, s2, f.sub)
                                 for s2 in U.yesterdays(s)))
    raise TypeError(f"unexpected update inside a reduced body: {f!r}")


# ---------------------------------------------------------------------------
# tableau for multimodal K (each box independent, no frame conditions)

class TableauLimit(Exception):
    """Raised when the node budget runs out; distinct from invalidity."""


@dataclass
class _TreeWorld:
    atoms: FrozenSet[str]
    children: List[Tuple[tuple, "_TreeWorld"]]


class _Tableau:
    def __init__(self, budget: int):
        self.budget = budget

    def tick(self):
        self.budget -= 1
        if self.budget < 0:
            raise TableauLimit("tableau node limit exceeded")

    def satisfy(self, pending: list) -> Optional[_TreeWorld]:
        return self._expand(list(pending), frozenset(), frozenset(), {}, ())

    def _expand(self, pending, pos, neg, boxes, diamonds):
        while pending:
            self.tick()
            f = pending.pop()
            if isinstance(f, Bottom):
                return None
            if isinstance(f, Atom):
                if f.name in neg:
                    return None
                pos = pos | {f.name}
            elif isinstance(f, And):
                pending.append(f.left)
                pending.append(f.right)
            elif isinstance(f, Box):
                key = ("K", f.agent)
                boxes = {**boxes, key: boxes.get(key, ()) + (f.sub,)}
            elif isinstance(f, Yesterday):
                key = ("Y",)
                boxes = {**boxes, key: boxes.get(key, ()) + (f.sub,)}
            elif isinstance(f, Not):
                g = f.sub
                if isinstance(g, Bottom):
                    pass
                elif isinstance(g, Atom):
                    if g.name in pos:
                        return None
                    neg = neg | {g.name}
                elif isinstance(g, Not):
                    pending.append(g.sub)
                elif isinstance(g, And):
                    left = self._expand(pending + [Not(g.left)],
                                        pos, neg, boxes, diamonds)
                    if left is not None:
                        return left
                    pending.append(Not(g.right))
                elif isinstance(g, Box):
                    diamonds = diamonds + ((("K", g.agent), Not(g.sub)),)
                elif isinstance(g, Yesterday):
                    diamonds = diamonds + ((("Y",), Not(g.sub)),)
                else:
                    raise TypeError(f"update reached the tableau: {g!r}")
            else:
                raise TypeError(f"update reached the tableau: {f!r}")
        children = []
        for rel, g in diamonds:
            sub = self.satisfy([g, *boxes.get(rel, ())])
            if sub is None:
                return None
            children.append((rel, sub))
        return _TreeWorld(pos, children)


def _tree_to_model(root: _TreeWorld, sig: Signature) -> PointedModel:
    names = {}
    order = []

    def walk(node):
        name = f"w{len(order)}"
        names[id(node)] = name
        order.append(node)
        for _, child in node.children:
            walk(child)

    walk(root)
    epistemic = {a: set() for a in sig.agents}
    yesterday = set()
    valuation = {p: set() for p in sig.atoms}
    for node in order:
        n = names[id(node)]
        for p in node.atoms:
            valuation[p].add(n)
        for rel, child in node.children:
            c = names[id(child)]
            if rel[0] == "K":
                epistemic[rel[1]].add((n, c))
            else:
                # the child is a witness one tick before this world
                yesterday.add((c, n))
    model = KripkeModel(sig=sig, worlds=tuple(names.values()),
                        epistemic=epistemic, yesterday=yesterday,
                        valuation=valuation)
    return PointedModel(model, names[id(root)])


def validity(f: Formula, max_nodes: int = DEFAULT_NODE_LIMIT):
    """Decide ⊨ f over all Kripke models.

    Returns (True, None) or (False, countermodel) where the countermodel
    is a pointed model falsifying f.  Raises TableauLimit when the node
    budget is exhausted before a verdict.
    """
    g = reduce_formula(f)
    # signature from the original formula too: reduction can drop atoms
    # (vacuous boxes) and countermodels must still evaluate the original
    agents = sorted(agents_in(f) | agents_in(g)) or ["a"]
    atoms = sorted(atoms_in(f) | atoms_in(g))
    sig = Signature(tuple(agents), tuple(atoms))
    tree = _Tableau(max_nodes).satisfy([Not(g)])
    if tree is None:
        return True, None
    return False, _tree_to_model(tree, sig)


@lru_cache(maxsize=4096)
def is_valid(f: Formula, max_nodes: int = DEFAULT_NODE_LIMIT) -> bool:
    return validity(f, max_nodes)[0]


# ---------------------------------------------------------------------------
# bisimulation

@dataclass(frozen=True)
class Bisimulation:
    relation: FrozenSet[Tuple[str, str]]


def bisimilar(A: PointedModel, B: PointedModel) -> Optional[Bisimulation]:
    """Largest bisimulation between the two models if it links the two
    points, else None.

    Partition refinement over the disjoint union; the refinement relations
    are the epistemic successors plus the step toward the past (the future
    direction does not discriminate).
    """
    if A.model.sig != B.model.sig:
        raise ValueError("bisimulation requires a shared signature")
    sig = A.model.sig
    nodes = [(0, w) for w in A.model.worlds] + [(1, w) for w in B.model.worlds]
    models = (A.model, B.model)

    def successors(node, rel):
        side, w = node
        M = models[side]
        if rel == ("Y",):
            return [(side, v) for v in M.yesterdays(w)]
        return [(side, v) for v in M.succ(rel[1], w)]

    relations = [("K", a) for a in sig.agents] + [("Y",)]
    # initial blocks by atom valuation, then split on successor blocks
    # until the partition stops refining
    seed: Dict[FrozenSet[str], int] = {}
    block = {}
    for n in nodes:
        atoms = models[n[0]].atoms_at(n[1])
        block[n] = seed.setdefault(atoms, len(seed))
    while True:
        fresh: Dict[tuple, int] = {}
        new_block = {}
        for n in nodes:
            key = (block[n],
                   tuple(frozenset(block[m] for m in successors(n, rel))
                         for rel in relations))
            new_block[n] = fresh.setdefault(key, len(fresh))
        stable = len(set(new_block.values())) == len(set(block.values()))
        block = new_block
        if stable:
            break
    if block[(0, A.point)] != block[(1, B.point)]:
        return None
    pairs = frozenset((w, v)
                      for w in A.model.worlds for v in B.model.worlds
                      if block[(0, w)] == block[(1, v)])
    return Bisimulation(pairs)


# ---------------------------------------------------------------------------
# ♯ translation

def sharp_action(U: ActionModel) -> ActionModel:
    """Adjoin a fresh epistemic past state ♭ below every event of an
    atemporal action."""
    if not is_atemporal_action(U):
        raise ValueError("♯ is defined on atemporal actions only")
    epistemic = {a: set(pairs) | {(FLAT, FLAT)} for a, pairs in U.epi.items()}
    return ActionModel(
        sig=U.sig,
        events=U.events + (FLAT,),
        epistemic=epistemic,
        yesterday={(FLAT, s) for s in U.events},
        pre={**{e: sharp_formula(p) for e, p in U.pre}, FLAT: TOP},
        name=U.name + "_sharp",
    )


def sharp_formula(f: Formula) -> Formula:
    if isinstance(f, (Bottom, Atom)):
        return f
    if isinstance(f, Not):
        return Not(sharp_formula(f.sub))
    if isinstance(f, And):
        return And(sharp_formula(f.left), sharp_formula(f.right))
    if isinstance(f, Box):
        return Box(f.agent, sharp_formula(f.sub))
    if isinstance(f, Yesterday):
        return Yesterday(sharp_formula(f.sub))
    if isinstance(f, Update):
        return Update(sharp_action(f.action), f.event, sharp_formula(f.sub))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# finite language probe

@dataclass(frozen=True)
class ProbeVerdict:
    agree: bool
    distinguishing: Optional[Formula] = None


def formula_pool(sig: Signature, max_depth: int = 3,
                 max_pool: int = 20000) -> List[Formula]:
    """Update-free formulas up to the given modal depth: literal
    conjunctions at the base, all four modalities layered on top.
    Negations are omitted since a disagreement on φ is one on ¬φ."""
    base: List[Formula] = [Atom(p) for p in sig.atoms]
    lits = base + [Not(b) for b in base]
    for i, l1 in enumerate(lits):
        for l2 in lits[i + 1:]:
            base.append(And(l1, l2))
    base.append(Yesterday(Bottom()))
    pool = list(base)
    layer = list(base)
    for _ in range(max_depth):
        nxt = []
        for f in layer:
            for a in sig.agents:
                nxt.append(Box(a, f))
                nxt.append(diamond(a, f))
            nxt.append(Yesterday(f))
            nxt.append(dia_yesterday(f))
        pool.extend(nxt)
        layer = nxt
        if len(pool) > max_pool:
            del pool[max_pool:]
            break
    return pool


def language_equivalence_probe(A: PointedModel, B: PointedModel,
                               max_depth: int = 3,
                               updates: tuple = (),
                               max_pool: int = 20000) -> ProbeVerdict:
    """Evaluate a finite pool of formulas at both points; report the first
    disagreement.  `updates` is a sequence of (action, event) prefixes
    additionally wrapped around each pooled formula."""
    from .semantics import evaluate

    if A.model.sig != B.model.sig:
        raise ValueError("probe requires a shared signature")
    pool = formula_pool(A.model.sig, max_depth, max_pool)
    candidates = list(pool)
    for U, s in updates:
        candidates.extend(Update(U, s, f) for f in pool)
    for f in candidates[:max_pool]:
        if evaluate(A.model, A.point, f) != evaluate(B.model, B.point, f):
            return ProbeVerdict(False, f)
    return ProbeVerdict(True)
