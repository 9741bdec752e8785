"""Temporal action models and their side of the model-property catalogue.

Action models mirror Kripke models, with events instead of worlds and a
precondition formula per event.  The temporal properties (history and
past preservation, time-advancing) call into the validity oracle, which
is injected lazily to avoid an import cycle with the logic module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Optional, Tuple

from .formula import Formula, Signature, check_ident, implies
from .kripke import (PropertyReport, _canon_pairs, _depth_table,
                     check_frame_property)

FLAT = "♭"

ACTION_PROPERTIES = (
    "depth_definedness",
    "knowledge_of_past",
    "knowledge_of_initial_time",
    "uniqueness_of_past",
    "perfect_recall",
    "synchronicity",
)


def _check_event_name(e: str):
    if e != FLAT:
        check_ident(e, "event")


@dataclass(frozen=True)
class ActionModel:
    sig: Signature
    events: tuple
    epistemic: tuple  # ((agent, ((x, y), ...)), ...)
    yesterday: tuple  # ((x, y), ...) with x one tick before y
    pre: "Dict[str, Formula]"  # stored canonically as ((event, formula), ...)
    name: str = field(default="U", compare=False)

    def __post_init__(self):
        events = tuple(sorted(set(self.events)))
        if not events:
            raise ValueError("an action model needs at least one event")
        eset = set(events)
        for e in events:
            _check_event_name(e)
        epi_in = dict(self.epistemic)
        epi = []
        for a in self.sig.agents:
            pairs = _canon_pairs(epi_in.get(a, ()))
            for x, y in pairs:
                if x not in eset or y not in eset:
                    raise ValueError(f"epistemic arrow {x}->{y} off the event set")
            epi.append((a, pairs))
        extra = set(epi_in) - set(self.sig.agents)
        if extra:
            raise ValueError(f"unknown agents in epistemic relation: {sorted(extra)}")
        yesterday = _canon_pairs(self.yesterday)
        for x, y in yesterday:
            if x not in eset or y not in eset:
                raise ValueError(f"yesterday arrow {x}->{y} off the event set")
        pre_in = dict(self.pre)
        if set(pre_in) != eset:
            raise ValueError("exactly one precondition per event required")
        pre = tuple((e, pre_in[e]) for e in events)
        object.__setattr__(self, "events", events)
        object.__setattr__(self, "epistemic", tuple(epi))
        object.__setattr__(self, "yesterday", yesterday)
        object.__setattr__(self, "pre", pre)

    # -- derived views -----------------------------------------------------

    @cached_property
    def epi(self) -> Dict[str, FrozenSet[Tuple[str, str]]]:
        return {a: frozenset(pairs) for a, pairs in self.epistemic}

    @cached_property
    def _succ(self) -> Dict[str, Dict[str, tuple]]:
        out = {}
        for a, pairs in self.epistemic:
            m: Dict[str, list] = {e: [] for e in self.events}
            for x, y in pairs:
                m[x].append(y)
            out[a] = {e: tuple(vs) for e, vs in m.items()}
        return out

    @cached_property
    def _parents(self) -> Dict[str, tuple]:
        m: Dict[str, list] = {e: [] for e in self.events}
        for x, y in self.yesterday:
            m[y].append(x)
        return {e: tuple(vs) for e, vs in m.items()}

    @cached_property
    def pre_map(self) -> Dict[str, Formula]:
        return dict(self.pre)

    def succ(self, agent: str, e: str) -> tuple:
        return self._succ[agent][e]

    def yesterdays(self, e: str) -> tuple:
        return self._parents[e]

    def require_event(self, e: str):
        if e not in set(self.events):
            raise KeyError(f"unknown event {e!r}")


@dataclass(frozen=True)
class PointedAction:
    action: ActionModel
    point: str

    def __post_init__(self):
        self.action.require_event(self.point)


def action_depth(U: ActionModel, e: str):
    U.require_event(e)
    return _depth_table(U.events, U.yesterday)[e]


def is_past_state(U: ActionModel, s: str) -> bool:
    U.require_event(s)
    return not U.yesterdays(s)


def is_atemporal_action(U: ActionModel) -> bool:
    return not U.yesterday


def _validity_oracle(validity: Optional[Callable]) -> Callable:
    if validity is not None:
        return validity
    from . import logic
    return logic.is_valid


def is_epistemic_past_state(U: ActionModel, s: str,
                            validity: Optional[Callable] = None) -> bool:
    """Past state with a valid precondition whose only epistemic arrows,
    in either direction, are the self-loops required for every agent."""
    U.require_event(s)
    if not is_past_state(U, s):
        return False
    for a in U.sig.agents:
        pairs = U.epi[a]
        if (s, s) not in pairs:
            return False
        for x, y in pairs:
            if (x == s or y == s) and (x, y) != (s, s):
                return False
    return _validity_oracle(validity)(U.pre_map[s])


def check_history_preservation(U: ActionModel,
                               validity: Optional[Callable] = None) -> PropertyReport:
    """Predecessors can always fire first, and every source of the forest
    is a proper epistemic past state."""
    valid = _validity_oracle(validity)
    for s2, s in U.yesterday:
        if not valid(implies(U.pre_map[s], U.pre_map[s2])):
            return PropertyReport("history_preservation", False,
                                  (s2, s, "precondition"))
    for s in U.events:
        if is_past_state(U, s) and not is_epistemic_past_state(U, s, valid):
            return PropertyReport("history_preservation", False,
                                  (s, "past_state_not_epistemic"))
    return PropertyReport("history_preservation", True)


def check_past_preservation(A: PointedAction,
                            validity: Optional[Callable] = None) -> PropertyReport:
    """History preservation plus: every event backward-reachable from the
    point can reach some past state, continuing backward."""
    U = A.action
    hp = check_history_preservation(U, validity)
    if not hp.holds:
        return PropertyReport("past_preservation", False, hp.witness)
    seen = {A.point}
    stack = [A.point]
    while stack:
        e = stack.pop()
        for p in U.yesterdays(e):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    for e in sorted(seen):
        reach = {e}
        stack = [e]
        grounded = False
        while stack:
            x = stack.pop()
            if is_past_state(U, x):
                grounded = True
                break
            for p in U.yesterdays(x):
                if p not in reach:
                    reach.add(p)
                    stack.append(p)
        if not grounded:
            return PropertyReport("past_preservation", False,
                                  (e, "no_past_state_reachable"))
    return PropertyReport("past_preservation", True)


def check_time_advancing(A: PointedAction,
                         validity: Optional[Callable] = None) -> PropertyReport:
    pp = check_past_preservation(A, validity)
    if not pp.holds:
        return PropertyReport("time_advancing", False, pp.witness)
    if is_past_state(A.action, A.point):
        return PropertyReport("time_advancing", False,
                              (A.point, "point_is_past_state"))
    return PropertyReport("time_advancing", True)


def check_action_property(U: ActionModel, prop: str) -> PropertyReport:
    if prop not in ACTION_PROPERTIES:
        raise ValueError(f"unknown action property {prop!r}")
    return check_frame_property(prop, U.events, U.epi, U.yesterday, None)


def is_lrdetl_action(U: ActionModel,
                     validity: Optional[Callable] = None) -> PropertyReport:
    """Membership of U in the forest-like action class, recursively applied
    to the action models inside preconditions.  Persistence of facts is
    vacuous here since actions carry no valuation."""
    from .formula import actions_in

    for prop in ("depth_definedness", "knowledge_of_past",
                 "knowledge_of_initial_time", "uniqueness_of_past",
                 "perfect_recall"):
        rep = check_action_property(U, prop)
        if not rep.holds:
            return PropertyReport("lrdetl_action", False,
                                  (U.name, prop) + rep.witness)
    hp = check_history_preservation(U, validity)
    if not hp.holds:
        return PropertyReport("lrdetl_action", False,
                              (U.name, "history_preservation") + hp.witness)
    for _, pre in U.pre:
        for inner in actions_in(pre):
            rep = is_lrdetl_action(inner, validity)
            if not rep.holds:
                return rep
    return PropertyReport("lrdetl_action", True)
