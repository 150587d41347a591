from itertools import product

import pytest

import omlkit.lattice as lat
import omlkit.quantifiers as qu


def block_quantifier(L):
    return qu.quantifier_from_subalgebra(L, lat.blocks(L)[0])


def test_identity_map_is_quantifier():
    L = lat.mo(2)
    e = qu.UnaryMap(L, tuple(L.elements()))
    assert qu.check_quantifier(L, e).is_quantifier


def test_simple_quantifier_everything_to_one():
    L = lat.mo(2)
    m = tuple(L.zero if x == L.zero else L.one for x in L.elements())
    e = qu.UnaryMap(L, m)
    rep = qu.check_quantifier(L, e)
    assert rep.is_quantifier
    assert rep.ok("Q6")


def test_axiom_witnesses():
    L = lat.boolean_algebra(2)
    # constant-one map breaks Q1
    e = qu.UnaryMap(L, tuple(L.one for _ in L.elements()))
    rep = qu.check_quantifier(L, e)
    assert not rep.ok("Q1") and rep.witness("Q1") == (L.zero,)
    # map sending everything to zero breaks Q2
    e = qu.UnaryMap(L, tuple(L.zero for _ in L.elements()))
    rep = qu.check_quantifier(L, e)
    assert not rep.ok("Q2")


def test_subalgebra_roundtrip_mo2():
    L = lat.mo(2)
    for S in lat.all_subalgebras(L):
        e = qu.quantifier_from_subalgebra(L, S)
        assert qu.check_quantifier(L, e).is_quantifier
        assert qu.fixpoint_subalgebra(e) == S
    # and back: a quantifier regenerates itself from its fixpoints
    e = block_quantifier(L)
    again = qu.quantifier_from_subalgebra(L, qu.fixpoint_subalgebra(e))
    assert again == e


def test_non_subalgebra_rejected():
    L = lat.mo(2)
    with pytest.raises(qu.NotApproximatingError):
        qu.quantifier_from_subalgebra(L, {L.zero, L.index_of("a1")})


def test_forall_and_residuation():
    L = lat.greechie_lattice([("a", "b", "c"), ("c", "d", "e")])
    for S in lat.blocks(L):
        e = qu.quantifier_from_subalgebra(L, S)
        f = qu.forall_from_exists(e)
        for x in L.elements():
            assert L.leq(f(x), x)
            assert f(L.ortho(e(x))) == L.ortho(e(x))
        assert qu.check_residuation(L, e).holds


def test_residuation_fails_for_non_quantifier():
    L = lat.boolean_algebra(2)
    atom = 0b01
    e = qu.UnaryMap(L, tuple(atom for _ in L.elements()))
    res = qu.check_residuation(L, e)
    assert not res.holds and res.witness is not None


def test_boolean_equivalence_lemma_exhaustive_ba4():
    B = lat.boolean_algebra(2)
    for m in product(range(B.n), repeat=B.n):
        assert qu.check_lemma_q6_boolean(B, qu.UnaryMap(B, m))


def test_boolean_lemma_rejects_non_boolean_base():
    L = lat.mo(2)
    e = qu.UnaryMap(L, tuple(L.elements()))
    with pytest.raises(qu.NotBooleanError):
        qu.check_lemma_q6_boolean(L, e)


def test_q6_holds_on_boolean_but_fails_on_pasting():
    B = lat.boolean_algebra(3)
    for S in lat.all_subalgebras(B):
        e = qu.quantifier_from_subalgebra(B, S)
        assert qu.check_quantifier(B, e).ok("Q6")
    L = lat.greechie_lattice([("a", "b", "c"), ("a", "d", "e")])
    S = next(b for b in lat.blocks(L) if L.index_of("b") in b)
    e = qu.quantifier_from_subalgebra(L, S)
    assert not qu.check_quantifier(L, e).ok("Q6")


def test_p_ideal_positive_case():
    B = lat.boolean_algebra(3)
    I = frozenset(B.down(0b011))
    ok, wit, _ = qu.is_p_ideal(B, I)
    assert ok and wit is None
    part = qu.congruence_from_ideal(B, I)
    assert qu.is_congruence(B, part)
    assert len(part) == 2


def test_p_ideal_rejects_mo2_atom_downset():
    # {0, a} is join/down closed in MO2 but b ^ (a v b') = b escapes it
    L = lat.mo(2)
    a = L.index_of("a1")
    ok, wit, _ = qu.is_p_ideal(L, {L.zero, a})
    assert not ok
    assert wit[0] == "p_condition"


def test_p_ideal_exists_closure_flag():
    L = lat.greechie_lattice([("a", "b", "c"), ("c", "d", "e")])
    e = block_quantifier(L)
    ok, _, closed = qu.is_p_ideal(L, {L.zero}, e)
    assert ok and closed


def test_congruence_rejects_bad_partition():
    B = lat.boolean_algebra(2)
    bad = (frozenset({0, 3}), frozenset({1}), frozenset({2}))
    assert not qu.is_congruence(B, bad)


def test_relative_commutant_closure():
    L = lat.greechie_lattice([("a", "b", "c"), ("c", "d", "e")])
    e = qu.quantifier_from_subalgebra(L, lat.subalgebra_closure(
        L, (L.index_of("c"),)))
    c = L.index_of("c")
    ca = qu.relative_commutant_closure(L, e, c)
    assert ca == frozenset(L.elements())  # c commutes with both blocks
    with pytest.raises(qu.FixpointRequiredError):
        qu.relative_commutant_closure(L, e, L.index_of("a"))


def test_interval_algebra_product_decomposition():
    L = lat.greechie_lattice([("a", "b", "c"), ("c", "d", "e")])
    S = lat.subalgebra_closure(L, (L.index_of("c"),))
    e = qu.quantifier_from_subalgebra(L, S)
    c = L.index_of("c")
    ia = qu.interval_algebra(L, e, c)
    assert ia.product_iso_verified
    assert ia.lattice.n == 2
    rep = qu.check_quantifier(ia.lattice, ia.exists)
    assert rep.is_quantifier


def test_interval_algebra_requires_fixpoint():
    L = lat.mo(2)
    e = qu.quantifier_from_subalgebra(L, frozenset({L.zero, L.one}))
    with pytest.raises(qu.FixpointRequiredError):
        qu.interval_algebra(L, e, L.index_of("a1"))


def test_q6_counterexample_search_is_deterministic():
    w1 = qu.find_q6_counterexample(max_blocks=2)
    w2 = qu.find_q6_counterexample(max_blocks=2)
    assert w1 is not None
    assert w1.diagram == w2.diagram
    assert (w1.p, w1.q) == (w2.p, w2.q)
    L = w1.lattice
    e = qu.quantifier_from_subalgebra(L, w1.subalgebra)
    assert e(L.meet(w1.p, e(w1.q))) == L.zero
    assert L.meet(e(w1.p), e(w1.q)) != L.zero


def test_q6_search_boolean_only_exhausts():
    assert qu.find_q6_counterexample(max_blocks=2, boolean_only=True) is None
