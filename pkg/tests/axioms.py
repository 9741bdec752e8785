"""Axiom-scheme instantiation helpers shared by the logic and acceptance
test suites."""

from detl.formula import (Atom, BOT, Box, Not, Update, Yesterday, conj, iff,
                          implies)


def fig6_instances(U, s, phi, psi):
    """Reduction axiom instances for the update modality, all of which
    are plain validities."""
    pre = U.pre_map[s]
    out = [("atom-" + q, iff(Update(U, s, Atom(q)), implies(pre, Atom(q))))
           for q in U.sig.atoms]
    out.append(("bottom", iff(Update(U, s, BOT), implies(pre, BOT))))
    out.append(("and", iff(Update(U, s, phi & psi),
                           Update(U, s, phi) & Update(U, s, psi))))
    out.append(("not", iff(Update(U, s, Not(phi)),
                           implies(pre, Not(Update(U, s, phi))))))
    for a in U.sig.agents:
        out.append(("box-" + a, iff(
            Update(U, s, Box(a, phi)),
            implies(pre, conj(Box(a, Update(U, s2, phi))
                              for s2 in U.succ(a, s))))))
    if U.yesterdays(s):
        right = implies(pre, conj(Update(U, s2, phi)
                                  for s2 in U.yesterdays(s)))
    else:
        right = implies(pre, Yesterday(Update(U, s, phi)))
    out.append(("yesterday", iff(Update(U, s, Yesterday(phi)), right)))
    return out


def fig7_instances(sig, phi, psi):
    """Temporal axioms sound over the forest-like model class."""
    no_past = Not(Yesterday(BOT))
    out = [("facts-" + p, iff(Yesterday(Atom(p)),
                              implies(no_past, Atom(p))))
           for p in sig.atoms]
    out.append(("unique-past",
                implies(Not(Yesterday(phi)), Yesterday(Not(phi)))))
    for a in sig.agents:
        out.append(("recall-" + a,
                    implies(Yesterday(Box(a, phi)), Box(a, Yesterday(phi)))))
        out.append(("know-past-" + a,
                    implies(no_past, Box(a, no_past))))
        out.append(("know-initial-" + a,
                    implies(Yesterday(BOT), Box(a, Yesterday(BOT)))))
    return out


def k_instances(sig, phi, psi):
    out = []
    for a in sig.agents:
        out.append(("K-" + a, implies(Box(a, implies(phi, psi)),
                                      implies(Box(a, phi), Box(a, psi)))))
    out.append(("K-Y", implies(Yesterday(implies(phi, psi)),
                               implies(Yesterday(phi), Yesterday(psi)))))
    return out


def fig11_update_instances(U, s, phi, psi):
    """Update axioms of the flat-update system; U must be atemporal.
    Identical to the fig-6 set except that the yesterday clause steps
    back into the pre-update model itself."""
    assert not U.yesterday
    pre = U.pre_map[s]
    out = [(name, f) for name, f in fig6_instances(U, s, phi, psi)
           if name != "yesterday"]
    out.append(("yesterday", iff(Update(U, s, Yesterday(phi)),
                                 implies(pre, phi))))
    return out
