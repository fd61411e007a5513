"""Free-group words over a named alphabet: parsing, free reduction, group
operations and substitution along homomorphisms.

Words keep whatever letter sequence they were built with; nothing reduces
implicitly.  ``free_reduce`` is the only place cancellation happens, so
letter-level algorithms can be exercised on unreduced inputs and invariance
under reduction stays a testable property.
"""

from __future__ import annotations

import re
from typing import NamedTuple

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ParseError(ValueError):
    """Syntax error with a character position, for CLI diagnostics."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (position {pos})")
        self.pos = pos


class Alphabet:
    """Ordered list of distinct generator names.  Order indexes tensor
    coordinates, so it is significant."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        seen = set()
        for n in names:
            if not _NAME.fullmatch(n):
                raise ValueError(f"bad generator name {n!r}")
            if n in seen:
                raise ValueError(f"duplicate generator {n!r}")
            seen.add(n)
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    @classmethod
    def parse(cls, text):
        return cls(text.replace(",", " ").split())

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({' '.join(self.names)})"


class Letter(NamedTuple):
    gen: int
    sign: int


class Word:
    """A (not necessarily reduced) sequence of signed generators."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet, letters=()):
        self.alphabet = alphabet
        lets = []
        for item in letters:
            g, s = item
            if not 0 <= g < len(alphabet):
                raise ValueError(f"letter index {g} out of range")
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {s}")
            lets.append(Letter(g, s))
        self.letters = tuple(lets)

    @classmethod
    def identity(cls, alphabet):
        return cls(alphabet)

    @classmethod
    def generator(cls, alphabet, gen, sign=1):
        return cls(alphabet, [Letter(gen, sign)])

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (isinstance(other, Word) and self.alphabet == other.alphabet
                and self.letters == other.letters)

    def __hash__(self):
        return hash((self.alphabet, self.letters))

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    @property
    def is_reduced(self):
        return all(not (a.gen == b.gen and a.sign == -b.sign)
                   for a, b in zip(self.letters, self.letters[1:]))


def _check_same_alphabet(u, v):
    if u.alphabet != v.alphabet:
        raise ValueError("alphabet mismatch")


def free_reduce(w):
    """Cancel adjacent inverse pairs until none remain.  Idempotent."""
    stack = []
    for let in w.letters:
        if stack and stack[-1].gen == let.gen and stack[-1].sign == -let.sign:
            stack.pop()
        else:
            stack.append(let)
    return Word(w.alphabet, stack)


def inverse(w):
    return Word(w.alphabet, [Letter(l.gen, -l.sign) for l in reversed(w.letters)])


def concat(u, v):
    _check_same_alphabet(u, v)
    return Word(u.alphabet, u.letters + v.letters)


def commutator(u, v):
    """[u, v] = u v u^-1 v^-1, unreduced."""
    return concat(concat(u, v), concat(inverse(u), inverse(v)))


def power(w, k):
    if k >= 0:
        return Word(w.alphabet, w.letters * k)
    return Word(w.alphabet, inverse(w).letters * (-k))


def substitute(w, images):
    """Image of w under the homomorphism sending each generator to a word.

    ``images`` maps generator names (or indices) of w's alphabet to Words
    over a common target alphabet.  The result is freely reduced.
    """
    alphabet = w.alphabet
    by_index = {}
    for key, img in images.items():
        idx = alphabet.index(key) if isinstance(key, str) else key
        by_index[idx] = img
    target = None
    for img in by_index.values():
        if target is None:
            target = img.alphabet
        elif img.alphabet != target:
            raise ValueError("generator images use different alphabets")
    missing = [alphabet.names[i] for i in range(len(alphabet)) if i not in by_index]
    if missing:
        raise ValueError(f"missing generator image for {missing[0]!r}")
    if target is None:
        target = alphabet
    out = []
    for let in w.letters:
        img = by_index[let.gen]
        if let.sign == 1:
            out.extend(img.letters)
        else:
            out.extend(inverse(img).letters)
    return free_reduce(Word(target, out))


# ---------------------------------------------------------------------------
# grammar: names, juxtaposition (whitespace or *), ^k powers, [u,v]
# commutators, parentheses; the empty input is the identity.

def _tokenize_word(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace() or ch == "*":
            i += 1
            continue
        if ch in "()[],":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch == "^":
            m = re.match(r"\^(-?\d+)", text[i:])
            if not m:
                raise ParseError("malformed exponent", i)
            tokens.append(("pow", int(m.group(1)), i))
            i += len(m.group(0))
            continue
        m = _NAME.match(text, i)
        if m:
            tokens.append(("name", m.group(0), i))
            i = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


def parse_word(text, alphabet):
    """Parse the word grammar.  The result is NOT freely reduced."""
    tokens = _tokenize_word(text)
    pos = 0

    def error(msg, at=None):
        where = tokens[at][2] if at is not None and at < len(tokens) else len(text)
        raise ParseError(msg, where)

    def parse_product(stop):
        nonlocal pos
        letters = []
        while pos < len(tokens) and tokens[pos][0] not in stop:
            letters.extend(parse_item())
        return letters

    def parse_item():
        nonlocal pos
        kind, value, tpos = tokens[pos]
        if kind == "name":
            if value not in alphabet._index:
                raise ParseError(f"unknown generator {value!r}", tpos)
            base = [Letter(alphabet.index(value), 1)]
            pos += 1
        elif kind == "(":
            pos += 1
            base = parse_product({")"})
            if pos >= len(tokens) or tokens[pos][0] != ")":
                error("unbalanced parenthesis", pos)
            pos += 1
        elif kind == "[":
            pos += 1
            left = parse_product({",", "]"})
            if pos >= len(tokens) or tokens[pos][0] != ",":
                error("expected ',' in commutator", pos)
            pos += 1
            right = parse_product({"]"})
            if pos >= len(tokens) or tokens[pos][0] != "]":
                error("unbalanced bracket", pos)
            pos += 1
            inv = lambda ls: [Letter(g, -s) for g, s in reversed(ls)]
            base = left + right + inv(left) + inv(right)
        elif kind == "pow":
            raise ParseError("exponent without a base", tpos)
        else:
            raise ParseError(f"unexpected {kind!r}", tpos)
        if pos < len(tokens) and tokens[pos][0] == "pow":
            k = tokens[pos][1]
            pos += 1
            if k >= 0:
                base = base * k
            else:
                base = [Letter(g, -s) for g, s in reversed(base)] * (-k)
        return base

    letters = parse_product(set())
    return Word(alphabet, letters)


def format_word(w):
    """Inverse of parse_word on canonical words: 'x y x^-1' style."""
    parts = []
    for let in w.letters:
        name = w.alphabet.names[let.gen]
        parts.append(name if let.sign == 1 else f"{name}^-1")
    return " ".join(parts)
