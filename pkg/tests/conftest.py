"""Shared fixtures: alphabets, presentations, finite group tables, and
seeded random generators for words and tensors."""

import itertools

import pytest

import letterbraid as lb
from letterbraid.presented import Presentation, parse_presentation
from letterbraid.words import Word


XY = lb.Alphabet(["x", "y"])
XYZ = lb.Alphabet(["x", "y", "z"])


def random_word(rng, alphabet, max_len, min_len=0):
    n = rng.randint(min_len, max_len)
    letters = [(rng.randrange(len(alphabet)), rng.choice((1, -1))) for _ in range(n)]
    return Word(alphabet, letters)


def random_tensor(rng, alphabet, ring, max_weight, max_terms=4, coeff_range=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        wt = rng.randint(0, max_weight)
        key = tuple(rng.randrange(len(alphabet)) for _ in range(wt))
        c = ring.from_int(rng.randint(-coeff_range, coeff_range))
        if c != ring.zero:
            terms[key] = ring.add(terms.get(key, ring.zero), c)
    return lb.TensorElement(ring, alphabet, terms)


def all_words(alphabet, max_len):
    letters = [(g, s) for g in range(len(alphabet)) for s in (1, -1)]
    for n in range(max_len + 1):
        for combo in itertools.product(letters, repeat=n):
            yield Word(alphabet, combo)


def all_keys(n_gens, max_weight, min_weight=1):
    for r in range(min_weight, max_weight + 1):
        yield from itertools.product(range(n_gens), repeat=r)


def nested_commutator(alphabet, gens):
    """[[...[g0, g1], g2], ...]: an iterated commutator of generators."""
    w = Word.generator(alphabet, gens[0])
    for g in gens[1:]:
        w = lb.commutator(w, Word.generator(alphabet, g))
    return w


@pytest.fixture(scope="session")
def heisenberg_presentation():
    return parse_presentation(
        "gens: x y z\nrel: x^2\nrel: y^2\nrel: z^2\nrel: [x,y] z^-1\n")


@pytest.fixture(scope="session")
def surface_presentation():
    return parse_presentation(
        "gens: a1 b1 a2 b2\nrel: [a1,b1] [a2,b2]\n")


@pytest.fixture(scope="session")
def pb3_presentation():
    # Pure braids on three strands: the full twist is central.
    return parse_presentation(
        "gens: A12 A13 A23\n"
        "rel: [A12 A13 A23, A13]\n"
        "rel: [A12 A13 A23, A23]\n")


def cyclic_presentation(order, name="x"):
    return parse_presentation(f"gens: {name}\nrel: {name}^{order}\n")


def free_presentation(*names):
    return Presentation.free(lb.Alphabet(names))
