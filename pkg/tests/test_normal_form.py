import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORE, GRAPHS, P
from gbskit.errors import ExponentOverflowPolicy
from gbskit.limits import limits
from gbskit.normal_form import (
    canonical_form,
    cyclic_reduce,
    equal,
    is_identity,
    is_reduced,
    power,
    random_word,
    reduce,
)
from gbskit.words import PathWord, lift_user_word, presentation, random_user_word
from oracles import bs1n_affine, bs_perm_reps, f2xz_normal_form, klein_normal_form, perm_image


def test_reduce_examples(bs23, bs12):
    assert str(reduce(P("t a t^-1", bs12))) == "a^2"
    assert str(reduce(P("t^-1 a^3 t", bs23))) == "a^2"
    assert str(reduce(P("t a t^-1", bs23))) == "t a t^-1"
    assert str(reduce(P("t t^-1", bs23))) == "1"


def test_canonical_examples(any_graph, bs23):
    v = any_graph.base
    assert canonical_form(P(f"{v}^3 {v}^-3", any_graph)).is_identity
    assert canonical_form(P("t a^2 t^-1", bs23)).text == "a^3"
    assert canonical_form(P("t a^5", bs23)).text == "a^6 t a"


def test_push_left_oracle_for_t_a5(bs23):
    # brute force: the only word a^i t a^j with j in {0, 1} equal to t a^5
    target = P("t a^5", bs23)
    hits = [(i, j) for i in range(-20, 21) for j in (0, 1)
            if is_identity(target * P(f"a^{i} t a^{j}", bs23).inverse())]
    assert hits == [(6, 1)]
    # and by hand: t a^4 = (t a^2 t^-1)^2 t = a^6 t
    assert equal(P("t a^4", bs23), P("t a^2 t^-1 t a^2 t^-1 t", bs23))


def test_is_identity_examples(bs23):
    assert is_identity(P("t t^-1", bs23))
    assert not is_identity(P("t a t^-1 a^-1", bs23))
    assert is_identity(PathWord.identity(bs23))
    # Britton: reduced, two letters, so nontrivial
    w = P("t a t^-1 a^-1", bs23)
    assert is_reduced(w) and reduce(w).letter_count == 2


def test_equal_examples(bs23):
    assert equal(P("t a^2 t^-1", bs23), P("a^3", bs23))
    assert not equal(P("t a t^-1", bs23), P("a^2", bs23))
    assert not is_identity(P("t a t^-1 a^-2", bs23))
    w = P("t a^-3 t^-1 a t", bs23)
    assert equal(w, w)


def test_cyclic_reduce_examples(bs23):
    core, conj = cyclic_reduce(P("t^-1 a t", bs23))
    assert str(core) == "a" and str(conj) == "t^-1"
    core, conj = cyclic_reduce(P("t a t^-1", bs23))
    assert str(core) == "a" and str(conj) == "t"
    core, conj = cyclic_reduce(P("t^3", bs23))
    assert str(core) == "t^3" and conj.letter_count == 0 and conj.exps == (0,)


def test_random_word_contract(any_graph):
    g = any_graph
    assert random_word(5, 0, g) == PathWord.identity(g)
    assert random_word(11, 6, g) == random_word(11, 6, g)
    for seed in range(200):
        w = random_word(seed, 6, g)
        assert w.start == w.end == g.base and w.letter_count <= 6
        assert all(abs(k) <= 8 for k in w.exps)


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_soundness_w_winv(name):
    g = GRAPHS[name]
    for seed in range(1000):
        w = random_word(seed, 8, g)
        assert is_identity(w * w.inverse())


def _random_trivial(seed, g, factors=4):
    rng = random.Random(seed)
    rels = [lift_user_word(r, g) for r in presentation(g).relators]
    out = PathWord.identity(g)
    for _ in range(factors):
        if not rels:
            break
        h = random_word(rng.getrandbits(32), 5, g)
        r = rng.choice(rels)
        if rng.random() < 0.5:
            r = r.inverse()
        out = out * h * r * h.inverse()
    return out


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_britton_completeness_on_trivial_words(name):
    g = GRAPHS[name]
    for seed in range(1000):
        assert is_identity(_random_trivial(seed, g))


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_canonical_uniqueness(name):
    g = GRAPHS[name]
    for seed in range(500):
        u = random_word(2 * seed, 7, g)
        v = random_word(2 * seed + 1, 7, g)
        a, b = canonical_form(u * v * v.inverse()), canonical_form(u)
        assert a.text == b.text and a.digest == b.digest and a == b


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_canonical_idempotent_and_trivial_invariant(name):
    g = GRAPHS[name]
    for seed in range(300):
        u = random_word(seed, 7, g)
        c = canonical_form(u)
        assert canonical_form(c.word) == c
        assert canonical_form(u * _random_trivial(seed, g, 2)) == c
        assert equal(u, c.word)


def test_residue_ranges(any_graph):
    g = any_graph
    for seed in range(200):
        w = canonical_form(random_word(seed, 8, g)).word
        assert is_reduced(w)
        for (name, sign), k in zip(w.letters, w.exps[1:]):
            assert 0 <= k < abs(g.edge(name).entry_label(sign))


# -- independent models --------------------------------------------------


def test_bs12_against_affine_model(bs12):
    for seed in range(1000):
        u = random_user_word(seed, 6, bs12, max_exp=3)
        v = random_user_word(seed + 10_000, 6, bs12, max_exp=3)
        lu, lv = lift_user_word(u, bs12), lift_user_word(v, bs12)
        assert equal(lu, lv) == (bs1n_affine(u, 2) == bs1n_affine(v, 2))
        assert is_identity(lu) == (bs1n_affine(u, 2) == (1, 0))


def test_bs12_affine_collisions_are_found(bs12):
    # words built to be equal: a^(2^k) = t^k a t^-k
    for k in range(1, 12):
        lhs = P(f"a^{2 ** k}", bs12)
        rhs = P(f"t^{k} a t^-{k}", bs12)
        assert equal(lhs, rhs)


def test_f2xz_against_direct_product(f2xz):
    for seed in range(1000):
        u = random_user_word(seed, 6, f2xz, max_exp=2)
        v = random_user_word(seed + 5000, 6, f2xz, max_exp=2)
        lu, lv = lift_user_word(u, f2xz), lift_user_word(v, f2xz)
        assert equal(lu, lv) == (f2xz_normal_form(u) == f2xz_normal_form(v))


def test_klein_against_semidirect_product():
    g = GRAPHS["klein"]
    for seed in range(1000):
        u = random_user_word(seed, 6, g, max_exp=3)
        v = random_user_word(seed + 7000, 6, g, max_exp=3)
        lu, lv = lift_user_word(u, g), lift_user_word(v, g)
        assert equal(lu, lv) == (klein_normal_form(u) == klein_normal_form(v))


def test_bs23_against_permutation_quotients(bs23):
    reps = bs_perm_reps(2, 3)
    assert reps
    ident = tuple(range(5))
    nontrivial_seen = 0
    for seed in range(500):
        u = random_user_word(seed, 5, bs23, max_exp=3)
        w = lift_user_word(u, bs23)
        images = [perm_image(u, r) for r in reps]
        if is_identity(w):
            assert all(im == ident for im in images)
        if any(im != ident for im in images):
            assert not is_identity(w)
            nontrivial_seen += 1
    assert nontrivial_seen > 100


# -- caps and powers -------------------------------------------------------


def test_exponent_cap(bs12):
    w = P("t^60 a t^-60", bs12)
    assert reduce(w).exps == (2 ** 60,)
    with limits(max_digits=10):
        with pytest.raises(ExponentOverflowPolicy):
            reduce(w)


def test_power_matches_repeated_product(bs23):
    for seed in range(100):
        w = random_word(seed, 4, bs23)
        for k in (-3, -1, 0, 2, 5):
            assert equal(power(w, k), w ** k)


@given(seed=st.integers(0, 2 ** 32), name=st.sampled_from(sorted(GRAPHS)))
@settings(max_examples=200, deadline=None)
def test_cyclic_reduce_contract(seed, name):
    g = GRAPHS[name]
    w = random_word(seed, 8, g)
    core, conj = cyclic_reduce(w)
    assert equal(conj * core * conj.inverse(), w)
    assert core.is_loop and conj.start == g.base and conj.end == core.start
    # no rotation allows a pinch
    assert is_reduced(core)
    if core.letter_count >= 2:
        assert is_reduced(P(str(core), g) * P(str(core), g))
