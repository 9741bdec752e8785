"""Truth relation and model updates.

Composite worlds of a product are named ``base|event``; the separator is
reserved and never appears in user identifiers, so the naming is
invertible and model equality doubles as graph isomorphism with the
identity naming.
"""

from __future__ import annotations

import enum
from functools import lru_cache

from .action import FLAT, ActionModel, is_atemporal_action, is_lrdetl_action, \
    is_past_state
from .formula import (And, Atom, Bottom, Box, Formula, Not, Update, Yesterday,
                      actions_in, agents_in, atoms_in)
from .kripke import KripkeModel, is_restricted

SEP = "|"


class EmptyProductError(ValueError):
    pass


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    NOT_IN_SCOPE = "not-in-scope"


def pair_name(base: str, event: str) -> str:
    return f"{base}{SEP}{event}"


def split_pair(name: str):
    base, _, event = name.rpartition(SEP)
    return base, event


def _check_compatible(M: KripkeModel, U: ActionModel):
    if set(U.sig.agents) != set(M.sig.agents):
        raise ValueError("action and model disagree on agents")
    for _, pre in U.pre:
        if not atoms_in(pre) <= set(M.sig.atoms):
            raise ValueError("precondition uses atoms outside the model signature")


def _check_formula_sig(M: KripkeModel, f: Formula):
    if not agents_in(f) <= set(M.sig.agents):
        raise ValueError("formula uses agents outside the model signature")
    if not atoms_in(f) <= set(M.sig.atoms):
        raise ValueError("formula uses atoms outside the model signature")


def evaluate(M: KripkeModel, w: str, f: Formula) -> bool:
    """M, w ⊨ f with the product-update reading of the update modality."""
    M.require_world(w)
    _check_formula_sig(M, f)
    return _ev(M, w, f)


def _ev(M: KripkeModel, w: str, f: Formula) -> bool:
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return w in M.val[f.name]
    if isinstance(f, Not):
        return not _ev(M, w, f.sub)
    if isinstance(f, And):
        return _ev(M, w, f.left) and _ev(M, w, f.right)
    if isinstance(f, Box):
        return all(_ev(M, v, f.sub) for v in M.succ(f.agent, w))
    if isinstance(f, Yesterday):
        return all(_ev(M, v, f.sub) for v in M.yesterdays(w))
    if isinstance(f, Update):
        if not _ev(M, w, f.action.pre_map[f.event]):
            return True
        P = product_update(M, f.action)
        return _ev(P, pair_name(w, f.event), f.sub)
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=1024)
def product_update(M: KripkeModel, U: ActionModel) -> KripkeModel:
    """The product M[U]: surviving pairs, componentwise epistemic arrows,
    asynchronous yesterday arrows."""
    _check_compatible(M, U)
    surviving = [(v, t) for v in M.worlds for t in U.events
                 if _ev(M, v, U.pre_map[t])]
    if not surviving:
        raise EmptyProductError("no world satisfies any precondition")
    alive = set(surviving)
    epistemic = {}
    for a in M.sig.agents:
        me, ue = M.epi[a], U.epi[a]
        epistemic[a] = {(pair_name(v, t), pair_name(v2, t2))
                        for v, t in surviving for v2, t2 in surviving
                        if (v, v2) in me and (t, t2) in ue}
    yesterday = set()
    for v, t in surviving:
        if is_past_state(U, t):
            for v2 in M.yesterdays(v):
                if (v2, t) in alive:
                    yesterday.add((pair_name(v2, t), pair_name(v, t)))
        for t2 in U.yesterdays(t):
            if (v, t2) in alive:
                yesterday.add((pair_name(v, t2), pair_name(v, t)))
    valuation = {p: {pair_name(v, t) for v, t in surviving if v in ws}
                 for p, ws in M.val.items()}
    return KripkeModel(
        sig=M.sig,
        worlds=tuple(pair_name(v, t) for v, t in surviving),
        epistemic=epistemic,
        yesterday=yesterday,
        valuation=valuation,
    )


# ---------------------------------------------------------------------------
# YDEL

@lru_cache(maxsize=1024)
def ydel_update(M: KripkeModel, U: ActionModel,
                permissive: bool = False) -> KripkeModel:
    """M ⊕ U: the update hardcodes a ♭-copy of M as the shared yesterday
    of all event worlds."""
    if not is_atemporal_action(U):
        raise ValueError("ydel update requires an atemporal action")
    if not permissive:
        rep = is_restricted(M)
        if not rep.holds:
            raise ValueError(f"ydel update requires a restricted model "
                             f"(fails {rep.witness[0]})")
    _check_compatible(M, U)
    surviving = [(v, t) for v in M.worlds for t in U.events
                 if _ev_ydel(M, v, U.pre_map[t])]
    flats = [(v, FLAT) for v in M.worlds]
    worlds = flats + surviving
    alive = set(surviving)
    epistemic = {}
    for a in M.sig.agents:
        me, ue = M.epi[a], U.epi[a]
        arrows = {(pair_name(v, FLAT), pair_name(v2, FLAT))
                  for v, v2 in me}
        arrows |= {(pair_name(v, t), pair_name(v2, t2))
                   for v, t in surviving for v2, t2 in surviving
                   if (v, v2) in me and (t, t2) in ue}
        epistemic[a] = arrows
    yesterday = {(pair_name(v, FLAT), pair_name(v, t)) for v, t in surviving}
    yesterday |= {(pair_name(v, FLAT), pair_name(v2, FLAT))
                  for v, v2 in M.yesterday}
    valuation = {p: ({pair_name(v, FLAT) for v in ws} |
                     {pair_name(v, t) for v, t in surviving if v in ws})
                 for p, ws in M.val.items()}
    return KripkeModel(
        sig=M.sig,
        worlds=tuple(pair_name(v, t) for v, t in worlds),
        epistemic=epistemic,
        yesterday=yesterday,
        valuation=valuation,
    )


def eval_ydel(M: KripkeModel, w: str, f: Formula,
              permissive: bool = False) -> bool:
    """Truth with the ⊕ reading of updates; defined on restricted models
    and formulas whose embedded actions are atemporal."""
    M.require_world(w)
    _check_formula_sig(M, f)
    for U in actions_in(f):
        if not is_atemporal_action(U):
            raise ValueError("formula outside the atemporal-action fragment")
    if not permissive:
        rep = is_restricted(M)
        if not rep.holds:
            raise ValueError(f"ydel evaluation requires a restricted model "
                             f"(fails {rep.witness[0]})")
    return _ev_ydel(M, w, f)


def _ev_ydel(M: KripkeModel, w: str, f: Formula) -> bool:
    if isinstance(f, Update):
        if not _ev_ydel(M, w, f.action.pre_map[f.event]):
            return True
        # the updated model is restricted again whenever M was, so the
        # recursion skips the re-check
        P = ydel_update(M, f.action, True)
        return _ev_ydel(P, pair_name(w, f.event), f.sub)
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return w in M.val[f.name]
    if isinstance(f, Not):
        return not _ev_ydel(M, w, f.sub)
    if isinstance(f, And):
        return _ev_ydel(M, w, f.left) and _ev_ydel(M, w, f.right)
    if isinstance(f, Box):
        return all(_ev_ydel(M, v, f.sub) for v in M.succ(f.agent, w))
    if isinstance(f, Yesterday):
        return all(_ev_ydel(M, v, f.sub) for v in M.yesterdays(w))
    raise TypeError(f"not a formula: {f!r}")


def eval_rdetl(M: KripkeModel, w: str, f: Formula) -> Verdict:
    """Three-valued: truth is only defined over restricted models and
    forest-like actions; anything else is out of scope, not false."""
    M.require_world(w)
    if not is_restricted(M).holds:
        return Verdict.NOT_IN_SCOPE
    for U in set(actions_in(f)):
        if not is_lrdetl_action(U).holds:
            return Verdict.NOT_IN_SCOPE
    return Verdict.TRUE if evaluate(M, w, f) else Verdict.FALSE
