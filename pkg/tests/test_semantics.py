import pytest

from detl.action import ActionModel, check_history_preservation, \
    action_depth
from detl.formula import TOP, parse
from detl.generate import (DEFAULT_SIG, rand_atemporal_action,
                           rand_forest_action, rand_kripke, rand_restricted,
                           rand_temporal_action)
from detl.kripke import INFINITE, KripkeModel, depth, is_restricted
from detl.logic import bisimilar, sharp_action
from detl.kripke import PointedModel
from detl.semantics import (EmptyProductError, Verdict, eval_rdetl, eval_ydel,
                            evaluate, pair_name, product_update, split_pair,
                            ydel_update)

from conftest import verify_bisimulation

SIG = DEFAULT_SIG


def test_eval_example_1(ws, M):
    assert evaluate(M, "w", ws.parse("~[a]p & ~[b]p"))
    assert evaluate(
        M, "w", ws.parse("[U2@s](([a]p & [b]p) & <Y>(~[a]p & ~[b]p))"))
    assert not evaluate(M, "w", ws.parse("false"))


def test_eval_vacuous_update(ws, M):
    # at a world falsifying the precondition the update modality is true
    assert evaluate(M, "v", ws.parse("[U2@s]false"))


def test_eval_errors(ws, M):
    from detl.formula import Signature

    with pytest.raises(KeyError):
        evaluate(M, "x", ws.parse("p"))
    N = KripkeModel(sig=Signature(("a",), ()), worlds=("w",),
                    epistemic={}, yesterday=(), valuation={})
    with pytest.raises(ValueError):
        evaluate(N, "w", parse("p", SIG))


def test_two_step_contrast(ws, M):
    f = ws.parse("<a>[Y][b](p & q)")
    P5 = product_update(M, ws.actions["U5"][0])
    P6 = product_update(M, ws.actions["U6"][0])
    assert evaluate(P5, "w|r", f)
    assert not evaluate(P6, "w|r", f)


def test_product_fig2(ws, M):
    P = product_update(M, ws.actions["U2"][0])
    assert set(P.worlds) == {"u|t", "w|t", "v|t", "u|s", "w|s"}
    assert "v|s" not in set(P.worlds)


def test_product_fig4_chain(ws, M):
    P = product_update(M, ws.actions["U4"][0])
    assert len(P.worlds) == 7
    assert ("w|t", "w|s") in set(P.yesterday)
    assert ("w|s", "w|r") in set(P.yesterday)


def test_product_identity_update(M):
    ident = ActionModel(
        sig=SIG, events=("e",),
        epistemic={a: {("e", "e")} for a in SIG.agents},
        yesterday=(), pre={"e": TOP}, name="I")
    P = product_update(M, ident)
    assert set(P.worlds) == {pair_name(w, "e") for w in M.worlds}
    for a in SIG.agents:
        assert P.epi[a] == {(pair_name(x, "e"), pair_name(y, "e"))
                            for x, y in M.epi[a]}
    for p in SIG.atoms:
        assert P.val[p] == {pair_name(w, "e") for w in M.val[p]}


def test_product_empty(M):
    dead = ActionModel(
        sig=SIG, events=("e",),
        epistemic={a: {("e", "e")} for a in SIG.agents},
        yesterday=(), pre={"e": parse("false", SIG)}, name="D")
    with pytest.raises(EmptyProductError):
        product_update(M, dead)


def test_pair_name_inverse():
    assert split_pair(pair_name("w", "s")) == ("w", "s")
    assert split_pair("w|s|t") == ("w|s", "t")


def test_componentwise_law(rng):
    for _ in range(30):
        N = rand_kripke(rng, max_worlds=4)
        U = rand_atemporal_action(rng)
        P = product_update(N, U)
        alive = {split_pair(w) for w in P.worlds}
        for a in SIG.agents:
            expected = {(pair_name(v, t), pair_name(v2, t2))
                        for v, t in alive for v2, t2 in alive
                        if (v, v2) in N.epi[a] and (t, t2) in U.epi[a]}
            assert P.epi[a] == expected


def test_depth_additivity_under_history_preservation(rng):
    for _ in range(40):
        N = rand_kripke(rng, max_worlds=4, acyclic=True)
        U = rand_forest_action(rng)
        assert check_history_preservation(U).holds
        P = product_update(N, U)
        for name in P.worlds:
            v, t = split_pair(name)
            dv, dt = depth(N, v), action_depth(U, t)
            if dv != INFINITE and dt != INFINITE:
                assert depth(P, name) == dv + dt


def test_depth_bound_without_history_preservation(rng):
    for _ in range(40):
        N = rand_kripke(rng, max_worlds=4, acyclic=True)
        U = rand_temporal_action(rng)
        try:
            P = product_update(N, U)
        except EmptyProductError:
            continue
        for name in P.worlds:
            v, t = split_pair(name)
            assert depth(P, name) <= depth(N, v) + action_depth(U, t)


# ---------------------------------------------------------------------------
# YDEL

def test_ydel_fig9(ws, M8):
    U8 = ws.actions["U8"][0]
    Y = ydel_update(M8, U8)
    assert set(Y.worlds) == {"w|♭", "v|♭", "w|s", "w|t", "v|t"}
    assert "v|s" not in set(Y.worlds)
    # the flat layer copies the base model and sits one tick before the
    # event layer
    assert ("w|♭", "w|s") in set(Y.yesterday)
    assert ("v|♭", "v|t") in set(Y.yesterday)


def test_ydel_flat_bisim(ws, M8):
    Y = ydel_update(M8, ws.actions["U8"][0])
    for w in M8.worlds:
        wit = bisimilar(PointedModel(Y, pair_name(w, "♭")),
                        PointedModel(M8, w))
        assert wit is not None
        verify_bisimulation(PointedModel(Y, pair_name(w, "♭")),
                            PointedModel(M8, w), wit.relation)


def test_ydel_nothing_fires(M8):
    dud = ActionModel(
        sig=SIG, events=("e",),
        epistemic={a: {("e", "e")} for a in SIG.agents},
        yesterday=(), pre={"e": parse("false", SIG)}, name="D")
    Y = ydel_update(M8, dud)
    assert set(Y.worlds) == {"w|♭", "v|♭"}


def test_ydel_rejects_temporal_action(ws, M8):
    with pytest.raises(ValueError):
        ydel_update(M8, ws.actions["U2"][0])


def test_ydel_rejects_unrestricted_model(ws):
    two_pasts = KripkeModel(
        sig=SIG, worlds=("u", "v", "w"), epistemic={},
        yesterday={("u", "w"), ("v", "w")}, valuation={})
    with pytest.raises(ValueError):
        ydel_update(two_pasts, ws.actions["U8"][0])
    assert ydel_update(two_pasts, ws.actions["U8"][0], permissive=True)


def test_eval_ydel_examples(ws, M8):
    assert eval_ydel(M8, "w", ws.parse("[U8@s][a]p"))
    assert eval_ydel(M8, "w", ws.parse("[U8@s][Y]p"))
    # agreement with plain eval on action-free formulas
    for text in ("p", "[a]p", "<b>~p", "[Y]false"):
        f = ws.parse(text)
        for w in M8.worlds:
            assert eval_ydel(M8, w, f) == evaluate(M8, w, f)


def test_ydel_closure(rng, ws):
    for _ in range(30):
        N = rand_restricted(rng, max_worlds=3)
        U = rand_atemporal_action(rng)
        Y = ydel_update(N, U)
        assert is_restricted(Y).holds


def test_ydel_equals_sharp_product(ws, M8, rng):
    U8 = ws.actions["U8"][0]
    assert ydel_update(M8, U8) == product_update(M8, sharp_action(U8))


# ---------------------------------------------------------------------------
# RDETL

def test_eval_rdetl(ws, M):
    assert eval_rdetl(M, "w", ws.parse("p")) is Verdict.TRUE
    assert eval_rdetl(M, "v", ws.parse("p")) is Verdict.FALSE
    two_pasts = KripkeModel(
        sig=SIG, worlds=("u", "v", "w"), epistemic={},
        yesterday={("u", "w"), ("v", "w")}, valuation={})
    assert eval_rdetl(two_pasts, "w", ws.parse("p")) is Verdict.NOT_IN_SCOPE
    axiom = ws.parse("[Y]p <-> (~[Y]false -> p)")
    assert eval_rdetl(M, "w", axiom) is Verdict.TRUE


def test_eval_rdetl_rejects_bad_actions(ws, M):
    # an action violating history preservation pushes the formula out of
    # the restricted fragment
    bad = ActionModel(
        sig=SIG, events=("s", "t"),
        epistemic={a: {("s", "s"), ("t", "t")} for a in SIG.agents},
        yesterday={("s", "t")},
        pre={"s": parse("p", SIG), "t": TOP}, name="B")
    assert eval_rdetl(M, "w", parse("[B@t]p", SIG, {"B": bad})) \
        is Verdict.NOT_IN_SCOPE
