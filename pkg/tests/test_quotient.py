import pytest

from conftest import GRAPHS, P, theta
from gbskit.errors import KernelNotPreserved, NotUnimodularProduct
from gbskit.graph import bs_graph
from gbskit.normal_form import random_word
from gbskit.quotient import (
    check_functoriality,
    cyclic_free_reduce,
    format_free,
    free_conjugate,
    free_inverse,
    free_mul,
    free_quotient,
    free_reduce,
    induced_automorphism,
    project_word,
    projection_soundness,
)
from gbskit.twisted import identity_automorphism, inner_automorphism, parse_automorphism
from gbskit.words import parse_word

SWAP = """map a -> a
map t1 -> t2
map t2 -> t1
inv a -> a
inv t1 -> t2
inv t2 -> t1
"""


def test_free_word_helpers():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert free_mul((1, 2), free_inverse((1, 2))) == ()
    assert cyclic_free_reduce((-1, 2, 1)) == (2,)
    assert free_conjugate((1, 2), (2, 1))
    assert free_conjugate((1,), (2, 1, -2))
    assert not free_conjugate((1,), (2,))
    assert not free_conjugate((1, 2), (1, -2))
    assert format_free((1, -2)) == "x1 x2^-1" and format_free(()) == "1"


def test_free_quotient_examples(f2xz):
    q = free_quotient(f2xz)
    assert q.rank == 2 and q.letters == ("t1", "t2") and q.kernel_generator == "a"
    assert free_quotient(GRAPHS["z"]).rank == 0
    with pytest.raises(NotUnimodularProduct):
        free_quotient(GRAPHS["bs23"])
    with pytest.raises(NotUnimodularProduct):
        free_quotient(GRAPHS["klein"])
    with pytest.raises(NotUnimodularProduct):
        free_quotient(theta())


def test_project_word(f2xz):
    q = free_quotient(f2xz)
    assert project_word(q, P("t1 a^5 t2^-1 a", f2xz)) == (1, -2)
    assert project_word(q, P("t1 t2 t2^-1 t1^-1", f2xz)) == ()


def test_induced_automorphism(f2xz):
    q = free_quotient(f2xz)
    swap = parse_automorphism(SWAP, f2xz)
    ind = induced_automorphism(q, swap)
    assert ind.images == ((2,), (1,)) and not ind.is_identity
    assert induced_automorphism(q, identity_automorphism(f2xz)).is_identity
    shear = parse_automorphism("map a -> a\nmap t1 -> t1 a\nmap t2 -> t2\n"
                               "inv a -> a\ninv t1 -> t1 a^-1\ninv t2 -> t2\n", f2xz)
    assert induced_automorphism(q, shear).is_identity
    inner = inner_automorphism(f2xz, parse_word("t1", f2xz))
    assert induced_automorphism(q, inner).images == ((1,), (1, 2, -1))


def test_kernel_not_preserved():
    g = bs_graph(1, 1)
    q = free_quotient(g)
    phi = parse_automorphism("map a -> a t\nmap t -> t\ninv a -> a t^-1\ninv t -> t\n", g)
    with pytest.raises(KernelNotPreserved):
        induced_automorphism(q, phi)


def test_projection_soundness_swap(f2xz):
    q = free_quotient(f2xz)
    rep = projection_soundness(q, parse_automorphism(SWAP, f2xz), 200, seed=3)
    assert rep.passed == 200 and rep.ok
    js = rep.to_json()
    assert js["controls"][0] == {"u": "x1", "v": "x2", "conjugate": False, "expected": False,
                                 "correct": True, "verdict": "correctly-distinct"}


def test_functoriality(f2xz):
    q = free_quotient(f2xz)
    swap = parse_automorphism(SWAP, f2xz)
    for seed in range(200):
        h = random_word(seed, 6, f2xz)
        g1 = random_word(seed + 777, 6, f2xz)
        assert check_functoriality(q, swap, h, g1)


def test_projection_is_homomorphism(f2xz):
    q = free_quotient(f2xz)
    for seed in range(200):
        u, v = random_word(seed, 6, f2xz), random_word(seed + 31, 6, f2xz)
        assert project_word(q, u * v) == free_mul(project_word(q, u), project_word(q, v))
