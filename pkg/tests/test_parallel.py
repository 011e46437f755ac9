import random

import pytest
from hypothesis import assume, given, strategies as st

from rwkit.errors import InputError, ResourceError
from rwkit.parallel import (
    EMPTY_STEP,
    ParallelStep,
    apply_parallel_step,
    diamond_check,
    one_step_implies_parallel,
    parallel_moves_join,
    parallel_reduct_terms,
    parallel_reducts,
    replace_par_pos,
)
from rwkit.parser import parse_term, parse_trs
from rwkit.rewriting import Redex, one_step_reducts, redexes, step_at
from rwkit.substitution import Substitution
from rwkit.terms import parallel, prefix_leq

import gen

A_B = parse_trs("(RULES a -> b)")
AB_FX = parse_trs("(VAR x)\n(RULES a -> b f(x) -> x)")
DUP = parse_trs("(VAR x)\n(RULES f(x) -> g(x,x) a -> b)")


def T(text, system=None):
    return parse_term(text, system, allow_fresh_consts=True)


def test_replace_par_pos_examples():
    s = T("f(a,b)")
    assert replace_par_pos(s, [], []) is s
    assert replace_par_pos(s, [(1,), (2,)], [T("b"), T("a")]) == T("f(b,a)")
    assert replace_par_pos(T("f(g(a),a)"), [(1, 1), (2,)], [T("b"), T("c")]) == T("f(g(b),c)")


def test_replace_par_pos_errors():
    s = T("f(g(a),a)")
    with pytest.raises(InputError, match="lengths|replacement"):
        replace_par_pos(s, [(1,)], [])
    with pytest.raises(InputError, match="not parallel"):
        replace_par_pos(s, [(1,), (1, 1)], [T("a"), T("b")])
    with pytest.raises(InputError, match="not a position"):
        replace_par_pos(s, [(3,)], [T("a")])


def test_step_canonical_form():
    s1 = ParallelStep(((2,), (1,)), (0, 1), (Substitution(), Substitution()))
    s2 = ParallelStep(((1,), (2,)), (1, 0), (Substitution(), Substitution()))
    assert s1 == s2
    with pytest.raises(InputError):
        ParallelStep(((1,),), (), ())


def test_apply_parallel_step_examples():
    s = T("f(a,a)")
    assert apply_parallel_step(A_B, s, EMPTY_STEP) is s
    step = ParallelStep(((1,), (2,)), (0, 0), (Substitution(), Substitution()))
    assert apply_parallel_step(A_B, s, step) == T("f(b,b)")
    s = T("g(f(a),a)")
    step = ParallelStep(((1,), (2,)), (1, 0), (Substitution({"x": T("a")}), Substitution()))
    assert apply_parallel_step(AB_FX, s, step) == T("g(a,b)")


def test_apply_parallel_step_coordination_error():
    step = ParallelStep(((1,), (2,)), (0, 1), (Substitution(), Substitution({"x": T("a")})))
    with pytest.raises(InputError, match="entry 1"):
        apply_parallel_step(AB_FX, T("g(a,a)"), step)


def test_parallel_reducts_examples():
    nf = T("f(b)")
    assert parallel_reducts(A_B, nf) == [(nf, EMPTY_STEP)]
    got = parallel_reducts(A_B, T("f(a,a)"))
    assert [t for t, _ in got] == [T("f(a,a)"), T("f(b,a)"), T("f(a,b)"), T("f(b,b)")]
    assert [len(step) for _, step in got] == [0, 1, 1, 2]
    got = parallel_reducts(A_B, T("a"))
    assert got == [(T("a"), EMPTY_STEP), (T("b"), ParallelStep(((),), (0,), (Substitution(),)))]


def test_parallel_reducts_cap():
    with pytest.raises(ResourceError):
        parallel_reducts(A_B, T("f(a,a,a)"), max_redexes=2)


def test_one_step_implies_parallel_examples():
    assert one_step_implies_parallel(A_B, T("f(a)"), T("f(a)")) == EMPTY_STEP
    step = one_step_implies_parallel(A_B, T("f(a)"), T("f(b)"))
    assert step.positions == ((1,),)
    assert one_step_implies_parallel(A_B, T("f(a)"), T("f(c)")) is None


def test_diamond_examples(cl, nonlinear):
    assert diamond_check(A_B, T("f(a,a)")).holds
    assert diamond_check(cl, T("ap(ap(K,a),ap(ap(K,b),c))", cl)).holds
    d = diamond_check(nonlinear, T("f(a,a)", nonlinear))
    assert not d.holds
    assert d.peak == (T("a"), T("f(b,a)", nonlinear))
    assert set(parallel_reduct_terms(nonlinear, T("a"))) == {T("a"), T("b")}
    assert set(parallel_reduct_terms(nonlinear, T("f(b,a)", nonlinear))) == {
        T("f(b,a)", nonlinear), T("f(b,b)", nonlinear)
    }


def test_parallel_moves_examples(cl):
    s = T("ap(ap(K,a),ap(ap(K,b),c))", cl)
    outer = next(r for r in redexes(cl, s) if r.position == ())
    j = parallel_moves_join(cl, s, outer, EMPTY_STEP)
    assert j.target == T("a") and j.from_left == EMPTY_STEP and len(j.from_right) == 1

    inner = ParallelStep.of([r for r in redexes(cl, s) if r.position == (2,)])
    j = parallel_moves_join(cl, s, outer, inner)
    assert j.target == T("a") and j.from_left == EMPTY_STEP
    u = apply_parallel_step(cl, s, inner)
    assert u == T("ap(ap(K,a),b)", cl)
    assert j.from_right.positions == ((),)
    assert apply_parallel_step(cl, u, j.from_right) == T("a")

    s = T("f(a)", DUP)
    outer = Redex((), 0, Substitution({"x": T("a")}))
    inner = ParallelStep.of([Redex((1,), 1, Substitution())])
    j = parallel_moves_join(DUP, s, outer, inner)
    assert j.target == T("g(b,b)", DUP)
    assert j.from_left.positions == ((1,), (2,))
    assert j.from_right.positions == ((),)


def test_parallel_moves_preconditions(ab_ac, cl):
    with pytest.raises(InputError, match="orthogonal"):
        parallel_moves_join(ab_ac, T("a"), Redex((), 0, Substitution()), EMPTY_STEP)
    s = T("ap(ap(K,a),b)", cl)
    outer = redexes(cl, s)[0]
    with pytest.raises(InputError):
        parallel_moves_join(cl, s, outer, ParallelStep.of([outer]))


rngs = st.integers(0, 10**9).map(random.Random)


@given(rngs)
def test_order_independence(rng):
    s = gen.term(rng, depth=5)
    ps = gen.parallel_set(rng, s, 4)
    ts = [gen.term(rng, depth=2) for _ in ps]
    expected = replace_par_pos(s, ps, ts)
    order = list(range(len(ps)))
    rng.shuffle(order)
    assert replace_par_pos(s, [ps[k] for k in order], [ts[k] for k in order]) == expected


POOL = parse_trs(
    "(VAR x y)\n(RULES f(x, a) -> g(x)  g(g(x)) -> h(x, x, b)  a -> b  h(x, y, b) -> x)"
)


@given(rngs)
def test_sandwich(rng):
    s = gen.term(rng, depth=4)
    assume(0 < len(redexes(POOL, s)) <= 8)
    par = {t for t, _ in parallel_reducts(POOL, s)}
    for t, _ in one_step_reducts(POOL, s):
        assert t in par
    for t, step in parallel_reducts(POOL, s):
        order = list(step.redexes)
        rng.shuffle(order)
        cur = s
        for r in order:
            cur = step_at(POOL, cur, r.position, r.rule_index)
        assert cur == t


CL = parse_trs("(VAR x y z)\n(RULES ap(ap(ap(S,x),y),z) -> ap(ap(x,z),ap(y,z)) ap(ap(K,x),y) -> x)")
CL_GROUND = gen.all_ground_terms({"S": 0, "K": 0, "ap": 2}, 11)


@given(rngs)
def test_parallel_moves_join_closes_random_peaks(rng):
    s = rng.choice(CL_GROUND)
    rs = redexes(CL, s)
    assume(rs)
    outer = rng.choice(rs)
    picked = []
    for r in rng.sample(rs, len(rs)):
        below_or_beside = parallel(r.position, outer.position) or (
            prefix_leq(outer.position, r.position) and r.position != outer.position
        )
        if below_or_beside and all(parallel(r.position, o.position) for o in picked):
            picked.append(r)
    inner = ParallelStep.of(picked)
    j = parallel_moves_join(CL, s, outer, inner)
    t = step_at(CL, s, outer.position, outer.rule_index)
    u = apply_parallel_step(CL, s, inner)
    assert apply_parallel_step(CL, t, j.from_left) == j.target
    assert apply_parallel_step(CL, u, j.from_right) == j.target
