"""Finite Kripke models with a yesterday relation.

The yesterday relation stores pairs (x, y) meaning x lies one tick before
y.  Depth of a world is the length of the longest history (a backward
path that cannot be extended further into the past) ending at it, and is
infinite when a backward-reachable cycle makes histories unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from .formula import Signature, check_ident

INFINITE = float("inf")

KRIPKE_PROPERTIES = (
    "persistence_of_facts",
    "depth_definedness",
    "knowledge_of_past",
    "knowledge_of_initial_time",
    "uniqueness_of_past",
    "perfect_recall",
    "synchronicity",
)

RESTRICTED_PROPERTIES = KRIPKE_PROPERTIES[:6]


@dataclass(frozen=True)
class PropertyReport:
    property: str
    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


def _canon_pairs(pairs) -> tuple:
    return tuple(sorted(set(map(tuple, pairs))))


def _check_world_name(w: str):
    # composite names from products ("base|event", flat marker) are fine;
    # plain names follow the identifier rules
    if "|" in w or "♭" in w:
        if not w:
            raise ValueError("empty world name")
    else:
        check_ident(w, "world")


@dataclass(frozen=True)
class KripkeModel:
    sig: Signature
    worlds: tuple
    epistemic: tuple  # ((agent, ((x, y), ...)), ...) for every agent in sig
    yesterday: tuple  # ((x, y), ...) with x one tick before y
    valuation: tuple  # ((atom, (w, ...)), ...) for every atom in sig

    def __post_init__(self):
        worlds = tuple(sorted(set(self.worlds)))
        if not worlds:
            raise ValueError("a model needs at least one world")
        wset = set(worlds)
        for w in worlds:
            _check_world_name(w)
        epi_in = dict(self.epistemic)
        epi = []
        for a in self.sig.agents:
            pairs = _canon_pairs(epi_in.get(a, ()))
            for x, y in pairs:
                if x not in wset or y not in wset:
                    raise ValueError(f"epistemic arrow {x}->{y} off the world set")
            epi.append((a, pairs))
        extra = set(epi_in) - set(self.sig.agents)
        if extra:
            raise ValueError(f"unknown agents in epistemic relation: {sorted(extra)}")
        yesterday = _canon_pairs(self.yesterday)
        for x, y in yesterday:
            if x not in wset or y not in wset:
                raise ValueError(f"yesterday arrow {x}->{y} off the world set")
        val_in = dict(self.valuation)
        val = []
        for p in self.sig.atoms:
            ws = tuple(sorted(set(val_in.get(p, ()))))
            if not set(ws) <= wset:
                raise ValueError(f"valuation of {p} mentions unknown worlds")
            val.append((p, ws))
        extra = set(val_in) - set(self.sig.atoms)
        if extra:
            raise ValueError(f"unknown atoms in valuation: {sorted(extra)}")
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "epistemic", tuple(epi))
        object.__setattr__(self, "yesterday", yesterday)
        object.__setattr__(self, "valuation", tuple(val))

    # -- derived views -----------------------------------------------------

    @cached_property
    def epi(self) -> Dict[str, FrozenSet[Tuple[str, str]]]:
        return {a: frozenset(pairs) for a, pairs in self.epistemic}

    @cached_property
    def _succ(self) -> Dict[str, Dict[str, tuple]]:
        out = {}
        for a, pairs in self.epistemic:
            m: Dict[str, list] = {w: [] for w in self.worlds}
            for x, y in pairs:
                m[x].append(y)
            out[a] = {w: tuple(vs) for w, vs in m.items()}
        return out

    @cached_property
    def _parents(self) -> Dict[str, tuple]:
        m: Dict[str, list] = {w: [] for w in self.worlds}
        for x, y in self.yesterday:
            m[y].append(x)
        return {w: tuple(vs) for w, vs in m.items()}

    @cached_property
    def _children(self) -> Dict[str, tuple]:
        m: Dict[str, list] = {w: [] for w in self.worlds}
        for x, y in self.yesterday:
            m[x].append(y)
        return {w: tuple(vs) for w, vs in m.items()}

    @cached_property
    def val(self) -> Dict[str, FrozenSet[str]]:
        return {p: frozenset(ws) for p, ws in self.valuation}

    def succ(self, agent: str, w: str) -> tuple:
        return self._succ[agent][w]

    def yesterdays(self, w: str) -> tuple:
        """Worlds one tick before w."""
        return self._parents[w]

    def tomorrows(self, w: str) -> tuple:
        return self._children[w]

    def atoms_at(self, w: str) -> FrozenSet[str]:
        return frozenset(p for p, ws in self.valuation if w in ws)

    def require_world(self, w: str):
        if w not in set(self.worlds):
            raise KeyError(f"unknown world {w!r}")


@dataclass(frozen=True)
class PointedModel:
    model: KripkeModel
    point: str

    def __post_init__(self):
        self.model.require_world(self.point)


# ---------------------------------------------------------------------------
# depth

@lru_cache(maxsize=None)
def _depth_table(nodes: tuple, yesterday: tuple) -> dict:
    """Longest-backward-path length per node; INFINITE past any ⇝-cycle.

    Kahn's algorithm over the yesterday edges: nodes left unprocessed are
    exactly those backward-reachable from a cycle.
    """
    indeg = {n: 0 for n in nodes}
    children: Dict[str, list] = {n: [] for n in nodes}
    for x, y in yesterday:
        indeg[y] += 1
        children[x].append(y)
    depth = {n: 0 for n in nodes}
    queue = [n for n in nodes if indeg[n] == 0]
    done = set()
    while queue:
        n = queue.pop()
        done.add(n)
        for c in children[n]:
            depth[c] = max(depth[c], depth[n] + 1)
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    for n in nodes:
        if n not in done:
            depth[n] = INFINITE
    return depth


def depth(M: KripkeModel, w: str):
    M.require_world(w)
    return _depth_table(M.worlds, M.yesterday)[w]


def is_initial(M: KripkeModel, w: str) -> bool:
    M.require_world(w)
    return not M.yesterdays(w)


# ---------------------------------------------------------------------------
# properties, shared between Kripke and action models

def check_frame_property(prop: str, nodes: tuple, epi: Mapping[str, Iterable],
                         yesterday: Iterable, valuation=None) -> PropertyReport:
    """Evaluate one defining condition over an arbitrary two-sorted frame.

    Works for Kripke models (valuation given) and action models (valuation
    None, persistence vacuous).  Witnesses list the violating items in the
    order the condition quantifies them.
    """
    yesterday = set(map(tuple, yesterday))
    parents: Dict[str, list] = {n: [] for n in nodes}
    for x, y in yesterday:
        parents[y].append(x)
    succ: Dict[str, Dict[str, set]] = {
        a: {n: set() for n in nodes} for a in epi}
    for a, pairs in epi.items():
        for x, y in pairs:
            succ[a][x].add(y)
    depths = _depth_table(nodes, tuple(sorted(yesterday)))

    if prop == "persistence_of_facts":
        if valuation is not None:
            for w, w2 in sorted(yesterday):
                for p, ws in valuation:
                    if (w in ws) != (w2 in ws):
                        return PropertyReport(prop, False, (w, w2, p))
        return PropertyReport(prop, True)

    if prop == "depth_definedness":
        for n in nodes:
            if depths[n] == INFINITE:
                return PropertyReport(prop, False, (n,))
        return PropertyReport(prop, True)

    if prop == "knowledge_of_past":
        for w2, w in sorted(yesterday):
            for a in sorted(succ):
                for v in sorted(succ[a][w]):
                    if not parents[v]:
                        return PropertyReport(prop, False, (w2, w, a, v))
        return PropertyReport(prop, True)

    if prop == "knowledge_of_initial_time":
        for w in nodes:
            if parents[w]:
                continue
            for a in sorted(succ):
                for v in sorted(succ[a][w]):
                    if parents[v]:
                        return PropertyReport(prop, False, (w, a, v))
        return PropertyReport(prop, True)

    if prop == "uniqueness_of_past":
        for w in nodes:
            ps = sorted(parents[w])
            if len(ps) > 1:
                return PropertyReport(prop, False, (w, ps[0], ps[1]))
        return PropertyReport(prop, True)

    if prop == "perfect_recall":
        for w, v in sorted(yesterday):
            for a in sorted(succ):
                for v2 in sorted(succ[a][v]):
                    if not any(w2 in parents[v2] for w2 in succ[a][w]):
                        return PropertyReport(prop, False, (w, v, a, v2))
        return PropertyReport(prop, True)

    if prop == "synchronicity":
        dd = check_frame_property("depth_definedness", nodes, epi, yesterday,
                                  valuation)
        if not dd.holds:
            return PropertyReport(prop, False, dd.witness)
        for a in sorted(succ):
            for w in nodes:
                for v in sorted(succ[a][w]):
                    if depths[w] != depths[v]:
                        return PropertyReport(
                            prop, False, (w, a, v, depths[w], depths[v]))
        return PropertyReport(prop, True)

    raise ValueError(f"unknown property {prop!r}")


def check_property(M: KripkeModel, prop: str) -> PropertyReport:
    return check_frame_property(prop, M.worlds, M.epi, M.yesterday, M.valuation)


def is_restricted(M: KripkeModel) -> PropertyReport:
    """Forest-likeness: the six conditions short of synchronicity (which
    then follows)."""
    for prop in RESTRICTED_PROPERTIES:
        rep = check_property(M, prop)
        if not rep.holds:
            return PropertyReport("restricted", False, (prop,) + rep.witness)
    return PropertyReport("restricted", True)


# ---------------------------------------------------------------------------
# submodels and closure

def generated_submodel(M: KripkeModel, w: str) -> KripkeModel:
    """Restriction of M to worlds reachable from w via epistemic arrows
    (forward) and yesterday arrows toward the past."""
    M.require_world(w)
    seen = {w}
    stack = [w]
    while stack:
        x = stack.pop()
        nxt = list(M.yesterdays(x))
        for a in M.sig.agents:
            nxt.extend(M.succ(a, x))
        for y in nxt:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return KripkeModel(
        sig=M.sig,
        worlds=tuple(sorted(seen)),
        epistemic={a: {(x, y) for x, y in pairs if x in seen and y in seen}
                   for a, pairs in M.epi.items()},
        yesterday={(x, y) for x, y in M.yesterday if x in seen and y in seen},
        valuation={p: ws & seen for p, ws in M.val.items()},
    )


def _transitive(pairs: set) -> set:
    out = set(pairs)
    changed = True
    while changed:
        changed = False
        for x, y in list(out):
            for y2, z in list(out):
                if y2 == y and (x, z) not in out:
                    out.add((x, z))
                    changed = True
    return out


def close_pairs(pairs, nodes, mode: str) -> set:
    if mode not in ("none", "reflexive", "symmetric", "transitive", "s5"):
        raise ValueError(f"unknown closure mode {mode!r}")
    out = set(map(tuple, pairs))
    if mode in ("reflexive", "s5"):
        out |= {(n, n) for n in nodes}
    if mode in ("symmetric", "s5"):
        out |= {(y, x) for x, y in out}
    if mode in ("transitive", "s5"):
        out = _transitive(out)
    return out


def relation_closure(M: KripkeModel, mode: str) -> KripkeModel:
    return KripkeModel(
        sig=M.sig,
        worlds=M.worlds,
        epistemic={a: close_pairs(pairs, M.worlds, mode)
                   for a, pairs in M.epi.items()},
        yesterday=M.yesterday,
        valuation=M.valuation,
    )
