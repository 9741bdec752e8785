"""Command-line front end.

Output is machine-parseable ``KEY: value`` lines.  Exit codes: 0 true /
all-pass, 1 false / fail, 2 not-in-scope, 3 usage or data errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import logic, semantics
from .action import (ACTION_PROPERTIES, check_action_property,
                     check_history_preservation, check_past_preservation,
                     check_time_advancing, is_lrdetl_action, PointedAction)
from .formula import ParseError, pretty
from .kripke import (KRIPKE_PROPERTIES, PointedModel, check_property, depth,
                     is_restricted)
from .serialize import (Workspace, canonical_dumps, model_to_document,
                        save_action, save_model)


class CliError(Exception):
    pass


def fixture_dir() -> Path:
    return Path(resources.files("detl") / "fixtures")


def load_workspace(args) -> Workspace:
    directory = args.workspace or fixture_dir()
    return Workspace.load_dir(directory)


def out(key: str, value):
    print(f"{key}: {value}")


# ---------------------------------------------------------------------------
# subcommands

def cmd_eval(args) -> int:
    ws = load_workspace(args)
    if args.model not in ws.models:
        raise CliError(f"unknown model {args.model!r}")
    M, _ = ws.models[args.model]
    f = ws.parse(args.formula)
    if args.mode == "rdetl":
        verdict = semantics.eval_rdetl(M, args.world, f)
        out("RESULT", verdict.value)
        return {"true": 0, "false": 1, "not-in-scope": 2}[verdict.value]
    if args.mode == "ydel":
        value = semantics.eval_ydel(M, args.world, f,
                                    permissive=args.permissive_ydel)
    else:
        value = semantics.evaluate(M, args.world, f)
    out("RESULT", "true" if value else "false")
    return 0 if value else 1


def cmd_update(args) -> int:
    ws = load_workspace(args)
    if args.model not in ws.models:
        raise CliError(f"unknown model {args.model!r}")
    if args.action not in ws.actions:
        raise CliError(f"unknown action {args.action!r}")
    M, mpoint = ws.models[args.model]
    U, upoint = ws.actions[args.action]
    if args.mode == "ydel":
        P = semantics.ydel_update(M, U, permissive=args.permissive_ydel)
    else:
        P = semantics.product_update(M, U)
    point = None
    if mpoint and upoint:
        name = semantics.pair_name(mpoint, upoint)
        if name in set(P.worlds):
            point = name
    save_model(args.out, P, point)
    out("WORLDS", len(P.worlds))
    out("WROTE", args.out)
    return 0


def _report_lines(reports) -> int:
    ok = True
    for rep in reports:
        status = "PASS" if rep.holds else f"FAIL {rep.witness}"
        out(rep.property, status)
        ok = ok and rep.holds
    return 0 if ok else 1


def cmd_check(args) -> int:
    ws = load_workspace(args)
    target = args.target
    which = [p.replace("-", "_") for p in args.properties]
    if "@" in target:
        name, _, event = target.partition("@")
        if name not in ws.actions:
            raise CliError(f"unknown action {name!r}")
        U, _ = ws.actions[name]
        A = PointedAction(U, event)
        reports = []
        for prop in which or ["past_preservation", "time_advancing"]:
            if prop == "past_preservation":
                reports.append(check_past_preservation(A))
            elif prop == "time_advancing":
                reports.append(check_time_advancing(A))
            else:
                raise CliError(f"unknown pointed-action property {prop!r}")
        return _report_lines(reports)
    if target in ws.models:
        M, _ = ws.models[target]
        reports = []
        for prop in which or list(KRIPKE_PROPERTIES):
            if prop == "restricted":
                reports.append(is_restricted(M))
            else:
                reports.append(check_property(M, prop))
        return _report_lines(reports)
    if target in ws.actions:
        U, _ = ws.actions[target]
        reports = []
        for prop in which or list(ACTION_PROPERTIES) + ["history_preservation"]:
            if prop == "lrdetl":
                reports.append(is_lrdetl_action(U))
            elif prop == "history_preservation":
                reports.append(check_history_preservation(U))
            else:
                reports.append(check_action_property(U, prop))
        return _report_lines(reports)
    raise CliError(f"unknown model or action {target!r}")


def cmd_reduce(args) -> int:
    ws = load_workspace(args)
    out("REDUCED", pretty(logic.reduce_formula(ws.parse(args.formula))))
    return 0


def cmd_validity(args) -> int:
    ws = load_workspace(args)
    valid, counter = logic.validity(ws.parse(args.formula),
                                    max_nodes=args.max_tableau_nodes)
    if valid:
        out("VERDICT", "VALID")
        return 0
    out("VERDICT", "INVALID")
    if args.countermodel:
        save_model(args.countermodel, counter.model, counter.point)
        out("COUNTERMODEL", args.countermodel)
    else:
        out("COUNTERMODEL", json.dumps(
            model_to_document(counter.model, counter.point)))
    return 1


def cmd_bisim(args) -> int:
    ws = load_workspace(args)
    for name in (args.model_a, args.model_b):
        if name not in ws.models:
            raise CliError(f"unknown model {name!r}")
    A = PointedModel(ws.models[args.model_a][0], args.world_a)
    B = PointedModel(ws.models[args.model_b][0], args.world_b)
    wit = logic.bisimilar(A, B)
    if wit is None:
        out("VERDICT", "NOT-BISIMILAR")
        return 1
    out("VERDICT", "BISIMILAR")
    out("RELATION", json.dumps(sorted(map(list, wit.relation))))
    return 0


def cmd_sharp(args) -> int:
    ws = load_workspace(args)
    if args.action not in ws.actions:
        raise CliError(f"unknown action {args.action!r}")
    U, point = ws.actions[args.action]
    S = logic.sharp_action(U)
    save_action(args.out, S, point)
    out("EVENTS", len(S.events))
    out("WROTE", args.out)
    return 0


def cmd_fmt(args) -> int:
    doc = json.loads(Path(args.file).read_text(encoding="utf-8"))
    if args.dot:
        print(_to_dot(doc))
    else:
        sys.stdout.write(canonical_dumps(doc))
    return 0


def _to_dot(doc: dict) -> str:
    nodes = doc.get("worlds") or doc.get("events") or []
    val = doc.get("val", {})
    pre = doc.get("pre", {})
    lines = ["digraph model {"]
    for n in nodes:
        if pre:
            label = f"{n}\\n{pre.get(n, 'true')}"
        else:
            atoms = sorted(p for p, ws in val.items() if n in ws)
            label = f"{n}\\n{{{','.join(atoms)}}}"
        shape = ", peripheries=2" if doc.get("point") == n else ""
        lines.append(f'  "{n}" [label="{label}"{shape}];')
    for agent, pairs in sorted(doc.get("epistemic", {}).items()):
        for x, y in pairs:
            lines.append(f'  "{x}" -> "{y}" [label="{agent}"];')
    for x, y in doc.get("yesterday", []):
        lines.append(f'  "{x}" -> "{y}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# figure demos

def cmd_demo(args) -> int:
    ws = Workspace.load_dir(fixture_dir())
    claims = _demo_claims(ws, args.figure)
    ok = True
    for key, value in claims:
        out(key, "PASS" if value else "FAIL")
        ok = ok and value
    return 0 if ok else 1


def _demo_claims(ws: Workspace, figure: str):
    M, _ = ws.models["M"]
    ev = semantics.evaluate
    if figure == "fig1":
        return [
            ("neither-knows-p", ev(M, "w", ws.parse("~[a]p & ~[b]p"))),
            ("restricted", is_restricted(M).holds),
        ]
    if figure == "fig2":
        P = semantics.product_update(M, ws.actions["U2"][0])
        return [
            ("know-but-yesterday-did-not",
             ev(M, "w", ws.parse("[U2@s](([a]p & [b]p) & <Y>(~[a]p & ~[b]p))"))),
            ("five-worlds", len(P.worlds) == 5),
            ("depth-one", depth(P, "w|s") == 1),
            ("time-advancing",
             check_time_advancing(PointedAction(ws.actions["U2"][0], "s")).holds),
        ]
    if figure == "fig3":
        P = semantics.product_update(M, ws.actions["U3"][0])
        A, B = PointedModel(P, "w|t"), PointedModel(M, "w")
        return [
            ("bisimilar", logic.bisimilar(A, B) is not None),
            ("probe-depth-3",
             logic.language_equivalence_probe(A, B, max_depth=3).agree),
            ("not-time-advancing",
             not check_time_advancing(
                 PointedAction(ws.actions["U3"][0], "t")).holds),
        ]
    if figure == "fig4":
        P = semantics.product_update(M, ws.actions["U4"][0])
        return [
            ("seven-worlds", len(P.worlds) == 7),
            ("depth-two", depth(P, "w|r") == 2),
        ]
    if figure == "fig5":
        P5 = semantics.product_update(M, ws.actions["U5"][0])
        P6 = semantics.product_update(M, ws.actions["U6"][0])
        f = ws.parse("<a>[Y][b](p & q)")
        sync = check_property(P5, "synchronicity")
        d = lambda w: depth(P5, w)
        return [
            ("two-step-maybe-learned-before", ev(P5, "w|r", f)),
            ("one-step-not", not ev(P6, "w|r", f)),
            ("asynchronous", not sync.holds),
            ("witness-arrow",
             ("w|r", "u|s") in P5.epi["a"] and d("w|r") == 2 and d("u|s") == 1),
        ]
    if figure == "fig8":
        M8, _ = ws.models["M8"]
        U8, _ = ws.actions["U8"]
        return [
            ("atemporal", not U8.yesterday),
            ("restricted", is_restricted(M8).holds),
        ]
    if figure == "fig9":
        M8, _ = ws.models["M8"]
        U8, _ = ws.actions["U8"]
        Y = semantics.ydel_update(M8, U8)
        S = semantics.product_update(M8, logic.sharp_action(U8))
        flat = logic.bisimilar(PointedModel(Y, "w|♭"), PointedModel(M8, "w"))
        return [
            ("five-worlds", len(Y.worlds) == 5),
            ("oplus-equals-sharp-product", Y == S),
            ("restricted", is_restricted(Y).holds),
            ("flat-layer-bisimilar", flat is not None),
        ]
    if figure == "fig10":
        U8, _ = ws.actions["U8"]
        S = logic.sharp_action(U8)
        from .action import is_epistemic_past_state, action_depth
        return [
            ("three-events", len(S.events) == 3),
            ("flat-epistemic-past-state", is_epistemic_past_state(S, "♭")),
            ("forest-action", is_lrdetl_action(S).holds),
            ("histories-length-one",
             all(action_depth(S, e) <= 1 for e in S.events)),
        ]
    raise CliError(f"unknown figure {figure!r}")


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="detl",
        description="Dynamic epistemic temporal logic toolbox")
    ap.add_argument("--workspace", help="directory of *.json model/action "
                    "files (default: bundled figure fixtures)")
    ap.add_argument("--mode", choices=["detl", "ydel", "rdetl"],
                    default="detl", help="semantics used by eval/update")
    ap.add_argument("--max-tableau-nodes", type=int,
                    default=logic.DEFAULT_NODE_LIMIT)
    ap.add_argument("--permissive-ydel", action="store_true",
                    help="allow ydel operations on non-restricted models")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a formula at a world")
    p.add_argument("model")
    p.add_argument("world")
    p.add_argument("formula")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("update", help="write the updated model")
    p.add_argument("model")
    p.add_argument("action")
    p.add_argument("out")
    p.set_defaults(func=cmd_update)

    p = sub.add_parser("check", help="property reports for a model, an "
                       "action, or a pointed action Name@event")
    p.add_argument("target")
    p.add_argument("properties", nargs="*")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", help="update-free equivalent of a formula")
    p.add_argument("formula")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("validity", help="decide validity over all models")
    p.add_argument("formula")
    p.add_argument("--countermodel", help="write the countermodel here")
    p.set_defaults(func=cmd_validity)

    p = sub.add_parser("bisim", help="bisimulation between two pointed models")
    p.add_argument("model_a")
    p.add_argument("world_a")
    p.add_argument("model_b")
    p.add_argument("world_b")
    p.set_defaults(func=cmd_bisim)

    p = sub.add_parser("sharp", help="translate an atemporal action")
    p.add_argument("action")
    p.add_argument("out")
    p.set_defaults(func=cmd_sharp)

    p = sub.add_parser("demo", help="replay the bundled figure claims")
    p.add_argument("figure", choices=["fig1", "fig2", "fig3", "fig4", "fig5",
                                      "fig8", "fig9", "fig10"])
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("fmt", help="canonical reprint of a model file")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="DOT export instead")
    p.set_defaults(func=cmd_fmt)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ParseError, KeyError, ValueError, OSError,
            logic.TableauLimit) as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
