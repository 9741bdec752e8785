"""JSON file format for models and actions, plus the workspace registry.

One JSON document per file.  Canonical form fixes the key order and
sorts every array, so `fmt` output and the bundled fixtures are stable
byte-for-byte.  The optional "closure" key applies the drawing
convention (relations implicitly closed) at load time; canonical
reprinting happens at the document level, so a fixture keeps its closure
key instead of listing the closed relation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .action import ActionModel
from .formula import Formula, Signature, parse, pretty
from .kripke import KripkeModel, close_pairs, relation_closure

_KEY_ORDER = ["type", "agents", "atoms", "worlds", "events", "val", "pre",
              "epistemic", "yesterday", "point", "closure"]


def canonical_document(doc: dict) -> dict:
    """Reorder keys and sort arrays without touching the content."""
    unknown = set(doc) - set(_KEY_ORDER)
    if unknown:
        raise ValueError(f"unknown keys in document: {sorted(unknown)}")
    out = {}
    for key in _KEY_ORDER:
        if key not in doc:
            continue
        value = doc[key]
        if key in ("agents", "atoms", "worlds", "events"):
            value = sorted(value)
        elif key in ("val", "epistemic"):
            value = {k: sorted(map(list, v)) if key == "epistemic"
                     else sorted(v)
                     for k, v in sorted(value.items())}
        elif key == "yesterday":
            value = sorted(map(list, value))
        out[key] = value
    return out


def canonical_dumps(doc: dict) -> str:
    return json.dumps(canonical_document(doc), ensure_ascii=False,
                      indent=2) + "\n"


def model_to_document(M: KripkeModel, point: Optional[str] = None) -> dict:
    doc = {
        "type": "kripke",
        "agents": list(M.sig.agents),
        "atoms": list(M.sig.atoms),
        "worlds": list(M.worlds),
        "val": {p: list(ws) for p, ws in M.valuation},
        "epistemic": {a: [list(e) for e in pairs] for a, pairs in M.epistemic},
        "yesterday": [list(e) for e in M.yesterday],
    }
    if point is not None:
        doc["point"] = point
    return doc


def action_to_document(U: ActionModel, point: Optional[str] = None) -> dict:
    doc = {
        "type": "action",
        "agents": list(U.sig.agents),
        "atoms": list(U.sig.atoms),
        "events": list(U.events),
        "pre": {e: pretty(p) for e, p in U.pre},
        "epistemic": {a: [list(e) for e in pairs] for a, pairs in U.epistemic},
        "yesterday": [list(e) for e in U.yesterday],
    }
    if point is not None:
        doc["point"] = point
    return doc


def document_to_object(doc: dict, registry: Optional[dict] = None,
                       name: str = "U"):
    """Build the model or action described by doc.

    Returns ("kripke", KripkeModel, point) or ("action", ActionModel,
    point).  Action preconditions are parsed against the given registry.
    """
    sig = Signature(tuple(doc["agents"]), tuple(doc.get("atoms", ())))
    closure = doc.get("closure", "none")
    point = doc.get("point")
    if doc.get("type") == "kripke":
        M = KripkeModel(
            sig=sig,
            worlds=tuple(doc["worlds"]),
            epistemic={a: set(map(tuple, pairs))
                       for a, pairs in doc.get("epistemic", {}).items()},
            yesterday=set(map(tuple, doc.get("yesterday", ()))),
            valuation={p: set(ws) for p, ws in doc.get("val", {}).items()},
        )
        if closure != "none":
            M = relation_closure(M, closure)
        if point is not None:
            M.require_world(point)
        return "kripke", M, point
    if doc.get("type") == "action":
        events = tuple(doc["events"])
        epistemic = {a: close_pairs(map(tuple, pairs), events, closure)
                     for a, pairs in doc.get("epistemic", {}).items()}
        U = ActionModel(
            sig=sig,
            events=events,
            epistemic=epistemic,
            yesterday=set(map(tuple, doc.get("yesterday", ()))),
            pre={e: parse(text, sig, registry or {})
                 for e, text in doc["pre"].items()},
            name=name,
        )
        if point is not None:
            U.require_event(point)
        return "action", U, point
    raise ValueError(f"unknown document type {doc.get('type')!r}")


def save_model(path, M: KripkeModel, point: Optional[str] = None):
    Path(path).write_text(canonical_dumps(model_to_document(M, point)),
                          encoding="utf-8")


def save_action(path, U: ActionModel, point: Optional[str] = None):
    Path(path).write_text(canonical_dumps(action_to_document(U, point)),
                          encoding="utf-8")


@dataclass
class Workspace:
    sig: Signature
    models: Dict[str, Tuple[KripkeModel, Optional[str]]] = field(default_factory=dict)
    actions: Dict[str, Tuple[ActionModel, Optional[str]]] = field(default_factory=dict)
    order: List[str] = field(default_factory=list)

    @classmethod
    def load_dir(cls, directory) -> "Workspace":
        files = sorted(Path(directory).glob("*.json"))
        if not files:
            raise ValueError(f"no *.json files in {directory}")
        ws: Optional[Workspace] = None
        for f in files:
            doc = json.loads(f.read_text(encoding="utf-8"))
            name = f.stem
            try:
                kind, obj, point = document_to_object(
                    doc, ws.actions_by_name() if ws else {}, name=name)
            except (KeyError, ValueError) as exc:
                raise ValueError(f"{f}: {exc}") from exc
            if ws is None:
                ws = cls(sig=obj.sig)
            elif obj.sig != ws.sig:
                raise ValueError(f"{f}: signature differs from workspace")
            if kind == "kripke":
                ws.models[name] = (obj, point)
            else:
                ws.actions[name] = (obj, point)
            ws.order.append(name)
        return ws

    def actions_by_name(self) -> Dict[str, ActionModel]:
        return {name: U for name, (U, _) in self.actions.items()}

    def parse(self, text: str) -> Formula:
        return parse(text, self.sig, self.actions_by_name())
