"""Regenerate the bundled fixture files in canonical serialized form.

The fixtures encode the worked examples: a three-world model M, the
announcement actions U2..U6 over it, and the two-world model M8 with
its atemporal action U8.  Drawn relations are minimal; the "closure"
key closes them at load time.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from detl.serialize import canonical_dumps  # noqa: E402

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "detl" / "fixtures"

AGENTS = ["a", "b"]
ATOMS = ["p", "q"]


def loops(*nodes):
    return [[n, n] for n in nodes]


def sym(x, y):
    return [[x, y], [y, x]]


DOCS = {
    # three worlds: w (p,q) pointed, u (p), v (q); a and b confuse all three
    "M": {
        "type": "kripke",
        "agents": AGENTS, "atoms": ATOMS,
        "worlds": ["u", "v", "w"],
        "val": {"p": ["u", "w"], "q": ["v", "w"]},
        "epistemic": {
            "a": loops("u", "v", "w") + sym("w", "u") + sym("w", "v"),
            "b": loops("u", "v", "w") + sym("w", "u") + sym("w", "v"),
        },
        "yesterday": [],
        "point": "w",
        "closure": "s5",
    },
    # public announcement of p with an explicit tick: t (nothing yet) ⇝ s
    "U2": {
        "type": "action",
        "agents": AGENTS, "atoms": ATOMS,
        "events": ["s", "t"],
        "pre": {"s": "p", "t": "true"},
        "epistemic": {"a": loops("s", "t"), "b": loops("s", "t")},
        "yesterday": [["t", "s"]],
        "point": "s",
        "closure": "s5",
    },
    # the same action pointed at the past state: no time advance
    "U3": {
        "type": "action",
        "agents": AGENTS, "atoms": ATOMS,
        "events": ["s", "t"],
        "pre": {"s": "p", "t": "true"},
        "epistemic": {"a": loops("s", "t"), "b": loops("s", "t")},
        "yesterday": [["t", "s"]],
        "point": "t",
        "closure": "s5",
    },
    # two public announcements of p in sequence: time advances by 2
    "U4": {
        "type": "action",
        "agents": AGENTS, "atoms": ATOMS,
        "events": ["r", "s", "t"],
        "pre": {"r": "p", "s": "p", "t": "true"},
        "epistemic": {"a": loops("r", "s", "t"), "b": loops("r", "s", "t")},
        "yesterday": [["t", "s"], ["s", "r"]],
        "point": "r",
        "closure": "s5",
    },
    # announcement of p, then a semi-private announcement of q to b;
    # a confuses the one-step and two-step stages (s and r)
    "U5": {
        "type": "action",
        "agents": AGENTS, "atoms": ATOMS,
        "events": ["r", "s", "t"],
        "pre": {"r": "q", "s": "p", "t": "true"},
        "epistemic": {
            "a": loops("r", "s", "t") + sym("s", "r"),
            "b": loops("r", "s", "t"),
        },
        "yesterday": [["t", "s"], ["s", "r"]],
        "point": "r",
        "closure": "s5",
    },
    # one-step variant: both announcements in a single tick, a confused
    # about which one happened
    "U6": {
        "type": "action",
        "agents": AGENTS, "atoms": ATOMS,
        "events": ["r", "s", "t"],
        "pre": {"r": "p & q", "s": "p", "t": "true"},
        "epistemic": {
            "a": loops("r", "s", "t") + sym("s", "r"),
            "b": loops("r", "s", "t"),
        },
        "yesterday": [["t", "s"], ["t", "r"]],
        "point": "r",
        "closure": "s5",
    },
    # two worlds w (p, pointed) and v; both agents confuse them
    "M8": {
        "type": "kripke",
        "agents": AGENTS, "atoms": ATOMS,
        "worlds": ["v", "w"],
        "val": {"p": ["w"], "q": []},
        "epistemic": {
            "a": loops("v", "w") + sym("w", "v"),
            "b": loops("v", "w") + sym("w", "v"),
        },
        "yesterday": [],
        "point": "w",
        "closure": "s5",
    },
    # atemporal semi-private announcement of p to a; b confuses it with
    # the null event t
    "U8": {
        "type": "action",
        "agents": AGENTS, "atoms": ATOMS,
        "events": ["s", "t"],
        "pre": {"s": "p", "t": "true"},
        "epistemic": {
            "a": loops("s", "t"),
            "b": loops("s", "t") + sym("s", "t"),
        },
        "yesterday": [],
        "point": "s",
        "closure": "s5",
    },
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, doc in DOCS.items():
        path = OUT / f"{name}.json"
        path.write_text(canonical_dumps(doc), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
